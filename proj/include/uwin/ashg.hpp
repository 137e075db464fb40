#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uwin/error.hpp"
#include "uwin/partitions.hpp"

namespace uwin {

/// Additively separable hedonic game. Valuations are integers; -infinity is
/// a reserved sentinel materialized as a concrete negative number whose
/// magnitude exceeds the sum of every positive valuation in the game, which
/// is all the construction requires of it. The diagonal is zero.
struct Ashg {
    int agent_count = 0;
    std::vector<std::vector<std::int64_t>> val;
    std::vector<std::vector<std::uint8_t>> neg_inf;
    std::vector<int> replica_root; // -1 when the agent is an origin
    std::int64_t neg_value = 0;

    static Ashg empty(int n) {
        Ashg g;
        g.agent_count = n;
        g.val.assign(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
        g.neg_inf.assign(static_cast<size_t>(n),
                         std::vector<std::uint8_t>(static_cast<size_t>(n), 0));
        g.replica_root.assign(static_cast<size_t>(n), -1);
        return g;
    }

    std::int64_t value(int i, int j) const {
        return val[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    bool is_neg_inf(int i, int j) const {
        return neg_inf[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0;
    }

    void set_value(int i, int j, std::int64_t v) {
        val[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        neg_inf[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
    }
    void set_neg_inf(int i, int j) {
        neg_inf[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
    }

    bool has_neg_inf() const {
        for (const auto& row : neg_inf)
            for (std::uint8_t b : row)
                if (b) return true;
        return false;
    }

    /// Recompute the concrete -infinity and write it into flagged entries.
    void finalize() {
        std::int64_t pos_sum = 0;
        for (int i = 0; i < agent_count; ++i)
            for (int j = 0; j < agent_count; ++j)
                if (!is_neg_inf(i, j) && value(i, j) > 0) pos_sum += value(i, j);
        neg_value = -(pos_sum + 1);
        for (int i = 0; i < agent_count; ++i)
            for (int j = 0; j < agent_count; ++j)
                if (is_neg_inf(i, j)) val[static_cast<size_t>(i)][static_cast<size_t>(j)] = neg_value;
    }

    void validate() const {
        if (agent_count < 1) throw ValidationError("ashg: need at least one agent");
        if (val.size() != static_cast<size_t>(agent_count))
            throw ValidationError("ashg: valuation matrix shape");
        for (int i = 0; i < agent_count; ++i) {
            if (val[static_cast<size_t>(i)].size() != static_cast<size_t>(agent_count))
                throw ValidationError("ashg: valuation matrix shape");
            if (value(i, i) != 0) throw ValidationError("ashg: diagonal must be zero");
        }
    }
};

/// u_i(pi): sum of i's valuations over coalition mates. -infinity entries
/// participate as their concrete value.
inline std::int64_t utility(const Ashg& g, const std::vector<int>& labels, int agent) {
    std::int64_t u = 0;
    int mine = labels[static_cast<size_t>(agent)];
    for (int j = 0; j < g.agent_count; ++j)
        if (j != agent && labels[static_cast<size_t>(j)] == mine) u += g.value(agent, j);
    return u;
}

inline std::int64_t utility(const Ashg& g, const Partition& p, int agent) {
    return utility(g, p.labels(), agent);
}

/// phi_S(pi, pi'): #{a in S preferring pi} - #{a in S preferring pi'}.
inline long popularity_margin(const Ashg& g, const std::vector<int>& members,
                              const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
    long margin = 0;
    for (int a : members) {
        std::int64_t ua = utility(g, labels_a, a), ub = utility(g, labels_b, a);
        if (ua > ub) ++margin;
        else if (ub > ua) --margin;
    }
    return margin;
}

inline long popularity_margin(const Ashg& g, const std::vector<int>& members, const Partition& a,
                              const Partition& b) {
    return popularity_margin(g, members, a.labels(), b.labels());
}

/// Grand-coalition margin phi(pi, pi').
inline long popularity_margin(const Ashg& g, const Partition& a, const Partition& b) {
    std::vector<int> all(static_cast<size_t>(g.agent_count));
    for (int i = 0; i < g.agent_count; ++i) all[static_cast<size_t>(i)] = i;
    return popularity_margin(g, all, a.labels(), b.labels());
}

/// Append a one-way replica of `origin`: the replica copies the origin's
/// outgoing valuations, the two value each other 10, agents who liked the
/// origin are indifferent to the replica, agents who assigned -infinity
/// keep doing so, and all replicas of one origin value each other 10.
inline Ashg add_replica(const Ashg& g, int origin) {
    if (origin < 0 || origin >= g.agent_count) throw ValidationError("add_replica: no such agent");
    int root = g.replica_root[static_cast<size_t>(origin)] >= 0
                   ? g.replica_root[static_cast<size_t>(origin)]
                   : origin;
    Ashg out = Ashg::empty(g.agent_count + 1);
    int p = g.agent_count; // the new agent
    for (int i = 0; i < g.agent_count; ++i) {
        out.replica_root[static_cast<size_t>(i)] = g.replica_root[static_cast<size_t>(i)];
        for (int j = 0; j < g.agent_count; ++j) {
            out.val[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.value(i, j);
            out.neg_inf[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                g.neg_inf[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    out.replica_root[static_cast<size_t>(p)] = root;
    for (int b = 0; b < g.agent_count; ++b) {
        bool same_family =
            b == root || g.replica_root[static_cast<size_t>(b)] == root;
        if (same_family) {
            out.set_value(p, b, 10);
            out.set_value(b, p, 10);
            continue;
        }
        // outgoing: copy the origin's row
        if (g.is_neg_inf(origin, b)) out.set_neg_inf(p, b);
        else out.set_value(p, b, g.value(origin, b));
        // incoming: 0 unless b assigned -infinity (or any negative) to the origin
        if (g.is_neg_inf(b, origin)) out.set_neg_inf(b, p);
        else out.set_value(b, p, g.value(b, origin) < 0 ? g.value(b, origin) : 0);
    }
    out.finalize();
    return out;
}

// ---------------------------------------------------------------------------
// Text format: `ashg` / `agents <N>` / `v <i> <j> <int|-inf>` lines.

inline void serialize_ashg(const Ashg& g, std::ostream& os) {
    os << "ashg\nagents " << g.agent_count << "\n";
    for (int i = 0; i < g.agent_count; ++i)
        for (int j = 0; j < g.agent_count; ++j) {
            if (g.is_neg_inf(i, j)) os << "v " << i << " " << j << " -inf\n";
            else if (g.value(i, j) != 0) os << "v " << i << " " << j << " " << g.value(i, j) << "\n";
        }
}

inline std::string serialize_ashg(const Ashg& g) {
    std::ostringstream os;
    serialize_ashg(g, os);
    return os.str();
}

inline Ashg parse_ashg(std::istream& is, int& line_no, bool header_consumed = false) {
    std::string line;
    if (!header_consumed) {
        do {
            if (!std::getline(is, line)) throw ParseError(line_no, "empty ashg file");
            ++line_no;
        } while (line.find_first_not_of(" \t\r") == std::string::npos);
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok != "ashg") throw ParseError(line_no, "expected 'ashg'");
    }
    if (!std::getline(is, line)) throw ParseError(line_no, "expected 'agents <N>'");
    ++line_no;
    std::istringstream hs(line);
    std::string tok;
    long n = -1;
    if (!(hs >> tok >> n) || tok != "agents" || n < 1)
        throw ParseError(line_no, "expected 'agents <N>'");
    Ashg g = Ashg::empty(static_cast<int>(n));
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head != "v") throw ParseError(line_no, "expected 'v <i> <j> <int|-inf>'");
        long i = -1, j = -1;
        std::string value_tok;
        if (!(ls >> i >> j >> value_tok)) throw ParseError(line_no, "expected 'v <i> <j> <value>'");
        if (i < 0 || i >= n || j < 0 || j >= n) throw ParseError(line_no, "agent index out of range");
        if (i == j) throw ParseError(line_no, "diagonal valuations are fixed at zero");
        if (value_tok == "-inf") {
            g.set_neg_inf(static_cast<int>(i), static_cast<int>(j));
        } else {
            try {
                g.set_value(static_cast<int>(i), static_cast<int>(j), std::stoll(value_tok));
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad valuation '" + value_tok + "'");
            }
        }
    }
    g.finalize();
    g.validate();
    return g;
}

inline Ashg parse_ashg(const std::string& text) {
    std::istringstream is(text);
    int line_no = 0;
    return parse_ashg(is, line_no);
}

} // namespace uwin
