#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwin/error.hpp"

namespace uwin {

/// Fixed-width bit string, most significant bit first. Equal-width strings
/// compare by their unsigned numeric value, which coincides with
/// lexicographic order on the bit sequence; that single order serves both
/// the "binary number" and "lexicographic" comparisons used throughout.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.empty()) throw ValidationError("BitString: width must be >= 1");
    }

    static BitString zeros(int width) {
        check_width(width);
        return BitString(std::vector<std::uint8_t>(static_cast<size_t>(width), 0));
    }

    static BitString ones(int width) {
        check_width(width);
        return BitString(std::vector<std::uint8_t>(static_cast<size_t>(width), 1));
    }

    /// Low `width` bits of `value`, MSB first. Value must fit.
    static BitString from_value(std::uint64_t value, int width) {
        check_width(width);
        if (width < 64 && (value >> width) != 0)
            throw ValidationError("BitString: value does not fit in width");
        std::vector<std::uint8_t> b(static_cast<size_t>(width));
        for (int i = 0; i < width; ++i)
            b[static_cast<size_t>(i)] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
        return BitString(std::move(b));
    }

    /// Parse from e.g. "0110" (MSB first).
    static BitString parse(const std::string& s) {
        std::vector<std::uint8_t> b;
        b.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw ValidationError("BitString: bad character");
            b.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return BitString(std::move(b));
    }

    int width() const { return static_cast<int>(bits_.size()); }

    /// Bit i counted from the left (bit 0 is most significant).
    std::uint8_t bit(int i) const { return bits_[static_cast<size_t>(i)]; }
    void set_bit(int i, std::uint8_t v) { bits_[static_cast<size_t>(i)] = v; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::uint64_t value() const {
        if (width() > 64) throw ValidationError("BitString: value() needs width <= 64");
        std::uint64_t v = 0;
        for (std::uint8_t b : bits_) v = (v << 1) | b;
        return v;
    }

    BitString concat(const BitString& other) const {
        std::vector<std::uint8_t> b = bits_;
        b.insert(b.end(), other.bits_.begin(), other.bits_.end());
        return BitString(std::move(b));
    }

    BitString slice(int from, int len) const {
        if (from < 0 || len < 1 || from + len > width())
            throw ValidationError("BitString: slice out of range");
        return BitString(std::vector<std::uint8_t>(bits_.begin() + from, bits_.begin() + from + len));
    }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    bool operator==(const BitString& o) const { return bits_ == o.bits_; }
    bool operator!=(const BitString& o) const { return bits_ != o.bits_; }

    /// Numeric comparison; widths must match.
    bool operator<(const BitString& o) const {
        require_same_width(o);
        return bits_ < o.bits_;
    }
    bool operator>(const BitString& o) const { return o < *this; }
    bool operator<=(const BitString& o) const { return !(o < *this); }
    bool operator>=(const BitString& o) const { return !(*this < o); }

private:
    static void check_width(int width) {
        if (width < 1) throw ValidationError("BitString: width must be >= 1");
    }
    void require_same_width(const BitString& o) const {
        if (width() != o.width())
            throw ValidationError("BitString: comparing different widths");
    }

    std::vector<std::uint8_t> bits_;
};

} // namespace uwin
