#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <istream>
#include <ostream>
#include <sstream>

#include "uwin/error.hpp"

namespace uwin {

/// Set partition in canonical form: blocks ordered by minimum element,
/// members sorted ascending. Built from restricted-growth strings, whose
/// first-occurrence order coincides with the minimum-element order.
struct Partition {
    std::vector<std::vector<int>> blocks;

    static Partition singletons(int n) {
        Partition p;
        p.blocks.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) p.blocks.push_back({i});
        return p;
    }

    static Partition grand(int n) {
        Partition p;
        p.blocks.emplace_back();
        for (int i = 0; i < n; ++i) p.blocks[0].push_back(i);
        return p;
    }

    /// From arbitrary block assignment labels (one per element).
    static Partition from_labels(const std::vector<int>& labels) {
        Partition p;
        std::vector<int> block_of_label;
        std::vector<int> seen_labels;
        for (size_t i = 0; i < labels.size(); ++i) {
            int lab = labels[i];
            int found = -1;
            for (size_t k = 0; k < seen_labels.size(); ++k)
                if (seen_labels[k] == lab) found = static_cast<int>(k);
            if (found < 0) {
                found = static_cast<int>(seen_labels.size());
                seen_labels.push_back(lab);
                p.blocks.emplace_back();
            }
            p.blocks[static_cast<size_t>(found)].push_back(static_cast<int>(i));
        }
        return p;
    }

    int element_count() const {
        size_t n = 0;
        for (const auto& b : blocks) n += b.size();
        return static_cast<int>(n);
    }

    /// Index of the block containing `elem`.
    int block_of(int elem) const {
        for (size_t k = 0; k < blocks.size(); ++k)
            for (int e : blocks[k])
                if (e == elem) return static_cast<int>(k);
        throw ValidationError("partition: element not present");
    }

    /// Per-element block index vector (fast lookup for utilities).
    std::vector<int> labels() const {
        std::vector<int> lab(static_cast<size_t>(element_count()), -1);
        for (size_t k = 0; k < blocks.size(); ++k)
            for (int e : blocks[k]) lab[static_cast<size_t>(e)] = static_cast<int>(k);
        return lab;
    }

    bool operator==(const Partition& o) const { return blocks == o.blocks; }
    bool operator!=(const Partition& o) const { return blocks != o.blocks; }
    bool operator<(const Partition& o) const { return blocks < o.blocks; }

    std::string str() const {
        std::string s;
        for (size_t k = 0; k < blocks.size(); ++k) {
            s += k == 0 ? "{" : " {";
            for (size_t i = 0; i < blocks[k].size(); ++i) {
                if (i) s += ",";
                s += std::to_string(blocks[k][i]);
            }
            s += "}";
        }
        return s;
    }
};

/// Enumerate all partitions of [n] as restricted-growth strings, invoking
/// `fn` with each canonical partition. Bell(n) grows fast; callers enforce
/// their own budget.
inline void for_each_partition(int n, const std::function<void(const Partition&)>& fn) {
    if (n <= 0) throw ValidationError("partitions: need n >= 1");
    std::vector<int> rgs(static_cast<size_t>(n), 0);
    std::vector<int> maxima(static_cast<size_t>(n), 0); // maxima[i] = max(rgs[0..i])
    for (;;) {
        fn(Partition::from_labels(rgs));
        // advance to the next restricted-growth string
        int i = n - 1;
        while (i > 0 && rgs[static_cast<size_t>(i)] == maxima[static_cast<size_t>(i) - 1] + 1)
            --i;
        if (i == 0) return;
        ++rgs[static_cast<size_t>(i)];
        maxima[static_cast<size_t>(i)] =
            std::max(maxima[static_cast<size_t>(i) - 1], rgs[static_cast<size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            rgs[static_cast<size_t>(j)] = 0;
            maxima[static_cast<size_t>(j)] = maxima[static_cast<size_t>(j) - 1];
        }
    }
}

// Partition file: `partition <N>` then one `block <a1> <a2> ...` line each.
inline void serialize_partition(const Partition& p, std::ostream& os) {
    os << "partition " << p.element_count() << "\n";
    for (const auto& b : p.blocks) {
        os << "block";
        for (int e : b) os << " " << e;
        os << "\n";
    }
}

inline Partition parse_partition(std::istream& is) {
    std::string line;
    int line_no = 0;
    long n = -1;
    do {
        if (!std::getline(is, line)) throw ParseError(line_no, "empty partition file");
        ++line_no;
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    {
        std::istringstream hs(line);
        std::string tok;
        if (!(hs >> tok >> n) || tok != "partition" || n < 1)
            throw ParseError(line_no, "expected 'partition <N>'");
    }
    std::vector<int> labels(static_cast<size_t>(n), -1);
    int block = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head != "block") throw ParseError(line_no, "expected 'block <a1> ...'");
        int e;
        bool any = false;
        while (ls >> e) {
            if (e < 0 || e >= n) throw ParseError(line_no, "element out of range");
            if (labels[static_cast<size_t>(e)] != -1)
                throw ParseError(line_no, "element in two blocks");
            labels[static_cast<size_t>(e)] = block;
            any = true;
        }
        if (!any) throw ParseError(line_no, "empty block");
        ++block;
    }
    for (int l : labels)
        if (l == -1) throw ParseError(line_no, "element missing from all blocks");
    return Partition::from_labels(labels);
}

inline Partition parse_partition(const std::string& text) {
    std::istringstream is(text);
    return parse_partition(is);
}

inline std::uint64_t bell_number(int n) {
    // triangle construction; n stays desk-scale
    std::vector<std::vector<std::uint64_t>> tri{{1}};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> row{tri.back().back()};
        for (std::uint64_t v : tri.back()) row.push_back(row.back() + v);
        tri.push_back(std::move(row));
    }
    return tri[static_cast<size_t>(n)][0];
}

} // namespace uwin
