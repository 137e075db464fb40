#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace uwin {

/// Static range split across `jobs` threads. Work must be pure per index;
/// results are merged by the caller in index order, so schedules can never
/// change an outcome.
inline void parallel_for(std::uint64_t count, int jobs,
                         const std::function<void(std::uint64_t, std::uint64_t)>& chunk_fn) {
    if (jobs <= 1 || count < 2) {
        chunk_fn(0, count);
        return;
    }
    std::uint64_t n_jobs = static_cast<std::uint64_t>(jobs);
    if (n_jobs > count) n_jobs = count;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(n_jobs));
    std::uint64_t per = count / n_jobs, extra = count % n_jobs, from = 0;
    for (std::uint64_t t = 0; t < n_jobs; ++t) {
        std::uint64_t len = per + (t < extra ? 1 : 0);
        threads.emplace_back(chunk_fn, from, from + len);
        from += len;
    }
    for (auto& th : threads) th.join();
}

} // namespace uwin
