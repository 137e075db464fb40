#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace uwin {

/// Stable content hash (FNV-1a 64) of canonical serializations, so pipeline
/// stages can be audited by digest.
inline std::uint64_t content_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string digest_hex(const std::string& text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(content_digest(text)));
    return buf;
}

/// Machine-parseable line-oriented report with a stable field order.
class RunReport {
public:
    void add(std::string key, std::string value) {
        fields_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, long long value) { add(std::move(key), std::to_string(value)); }

    void print(std::ostream& os) const {
        for (const auto& [k, v] : fields_) os << k << ": " << v << "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

} // namespace uwin
