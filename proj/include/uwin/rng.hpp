#pragma once

#include <cstdint>

namespace uwin {

/// Deterministic PRNG (splitmix64). We avoid <random> distributions on
/// purpose: their output is not specified across standard libraries, and
/// seeded runs must reproduce bit-for-bit everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling keeps the draw unbiased
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    bool coin() { return (next() & 1u) != 0; }

    /// Derive an independent stream; used to split work across tasks
    /// without serializing draws.
    Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

private:
    std::uint64_t state_;
};

} // namespace uwin
