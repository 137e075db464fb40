#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "uwin/circuit_io.hpp"
#include "uwin/problems.hpp"

namespace uwin {

// Instance container format: `problem <NAME>` on the first line, followed by
// problem-specific headers (`k <int>`, `set <v1> <v2> ...`, `vertices <n>`
// with `w <i> <j> <int>` rows) and embedded circuit blocks in a fixed order.

inline void serialize_instance(const ProblemInstance& inst, std::ostream& os) {
    // ASHG keeps its own `ashg` header format
    if (inst.is<Ashg>()) {
        serialize_ashg(inst.as<Ashg>(), os);
        return;
    }
    os << "problem " << inst.problem_name() << "\n";
    struct Writer {
        std::ostream& os;
        void operator()(const TournamentInstance& t) const { serialize_circuit(t.circuit, os); }
        void operator()(const CondorcetInstance& c) const {
            for (const Circuit& ckt : c.circuits) serialize_circuit(ckt, os);
        }
        void operator()(const DiceInstance& d) const {
            for (const Circuit& ckt : d.circuits) serialize_circuit(ckt, os);
        }
        void operator()(const GraphDiceInstance& g) const { write_matrix(g.vertex_count, g.weights); }
        void operator()(const TspInstance& t) const { write_matrix(t.vertex_count, t.weights); }
        void operator()(const EdgeMajorityInstance& e) const {
            if (auto* th = std::get_if<EdgeMajorityInstance::Threshold>(&e.disqualifier)) {
                os << "k " << th->k << "\n";
            } else {
                os << "set";
                for (std::uint64_t v : std::get<EdgeMajorityInstance::Set>(e.disqualifier).labels)
                    os << " " << v;
                os << "\n";
            }
            serialize_circuit(e.edge, os);
            serialize_circuit(e.verifier, os);
        }
        void operator()(const OptFamilyInstance& o) const {
            for (const Circuit& ckt : o.circuits) serialize_circuit(ckt, os);
        }
        void operator()(const QbfInstance& q) const { serialize_circuit(q.formula, os); }
        void operator()(const Ashg& g) const { serialize_ashg(g, os); }

        void write_matrix(int n, const std::vector<std::vector<std::int64_t>>& w) const {
            os << "vertices " << n << "\n";
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (w[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
                        os << "w " << i << " " << j << " "
                           << w[static_cast<size_t>(i)][static_cast<size_t>(j)] << "\n";
        }
    };
    std::visit(Writer{os}, inst.value);
}

inline std::string serialize_instance(const ProblemInstance& inst) {
    std::ostringstream os;
    serialize_instance(inst, os);
    return os.str();
}

namespace detail {

/// Parse circuit blocks; `exactly` = 0 reads to end of stream.
inline std::vector<Circuit> parse_circuits(std::istream& is, int& line_no, size_t exactly = 0) {
    std::vector<Circuit> out;
    while (exactly == 0 || out.size() < exactly) {
        while (is.peek() == '\n') {
            is.get();
            ++line_no;
        }
        if (is.peek() == std::char_traits<char>::eof()) break;
        out.push_back(parse_circuit(is, line_no));
    }
    if (out.empty() || (exactly != 0 && out.size() != exactly))
        throw ParseError(line_no, "expected " +
                                      (exactly ? std::to_string(exactly) : std::string("some")) +
                                      " circuit block(s)");
    return out;
}

inline std::vector<std::vector<std::int64_t>> parse_matrix(std::istream& is, int& line_no,
                                                           int& n_out) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(line_no, "expected 'vertices <n>'");
    ++line_no;
    auto t = split_ws(line);
    if (t.size() != 2 || t[0] != "vertices")
        throw ParseError(line_no, "expected 'vertices <n>'");
    long n = parse_int(t[1], line_no);
    if (n < 1) throw ParseError(line_no, "need at least one vertex");
    n_out = static_cast<int>(n);
    std::vector<std::vector<std::int64_t>> w(static_cast<size_t>(n),
                                             std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    while (std::getline(is, line)) {
        ++line_no;
        t = split_ws(line);
        if (t.empty() || t[0][0] == '#') continue;
        if (t[0] != "w" || t.size() != 4) throw ParseError(line_no, "expected 'w <i> <j> <int>'");
        long i = parse_int(t[1], line_no), j = parse_int(t[2], line_no);
        long long v = std::stoll(t[3]);
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ParseError(line_no, "vertex index out of range");
        w[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    }
    return w;
}

} // namespace detail

inline ProblemInstance parse_instance(std::istream& is, int& line_no) {
    std::string line;
    do {
        if (!std::getline(is, line)) throw ParseError(line_no, "empty instance file");
        ++line_no;
    } while (detail::split_ws(line).empty());
    auto t = detail::split_ws(line);
    if (t.size() == 1 && t[0] == "ashg") {
        ProblemInstance inst;
        inst.value = parse_ashg(is, line_no, /*header_consumed=*/true);
        return inst;
    }
    if (t.size() != 2 || t[0] != "problem")
        throw ParseError(line_no, "expected 'problem <NAME>' or 'ashg'");
    const std::string& name = t[1];

    ProblemInstance inst;
    if (name == "WEAK-TOURNAMENT-SOURCE" || name == "TOURNAMENT-SOURCE" ||
        name == "MULTI-WEAK-TOURNAMENT-SOURCE") {
        TournamentInstance ti;
        ti.flavor = name == "TOURNAMENT-SOURCE"
                        ? TournamentFlavor::Strict
                        : (name == "WEAK-TOURNAMENT-SOURCE" ? TournamentFlavor::Weak
                                                            : TournamentFlavor::MultiWeak);
        ti.circuit = detail::parse_circuits(is, line_no, 1)[0];
        inst.value = std::move(ti);
    } else if (name == "CKT-CONDORCET") {
        CondorcetInstance ci;
        ci.circuits = detail::parse_circuits(is, line_no);
        inst.value = std::move(ci);
    } else if (name == "CKT-DICE" || name == "STRICT-CKT-DICE") {
        DiceInstance di;
        di.strict = name == "STRICT-CKT-DICE";
        di.circuits = detail::parse_circuits(is, line_no);
        inst.value = std::move(di);
    } else if (name == "GRAPH-DICE") {
        GraphDiceInstance gi;
        gi.weights = detail::parse_matrix(is, line_no, gi.vertex_count);
        inst.value = std::move(gi);
    } else if (name == "TSP-UNIQUE-OPT") {
        TspInstance ti;
        ti.weights = detail::parse_matrix(is, line_no, ti.vertex_count);
        inst.value = std::move(ti);
    } else if (name == "EDGE-MAJORITY" || name == "EDGE-MAJORITY-BALANCED" ||
               name == "EDGE-MAJORITY-SET") {
        EdgeMajorityInstance ei;
        std::string hline;
        do {
            if (!std::getline(is, hline)) throw ParseError(line_no, "expected disqualifier header");
            ++line_no;
        } while (detail::split_ws(hline).empty());
        auto h = detail::split_ws(hline);
        if (name == "EDGE-MAJORITY-SET") {
            if (h[0] != "set" || h.size() < 2)
                throw ParseError(line_no, "expected 'set <v1> <v2> ...'");
            EdgeMajorityInstance::Set s;
            for (size_t i = 1; i < h.size(); ++i)
                s.labels.push_back(static_cast<std::uint64_t>(detail::parse_int(h[i], line_no)));
            ei.disqualifier = std::move(s);
        } else {
            if (h[0] != "k" || h.size() != 2) throw ParseError(line_no, "expected 'k <int>'");
            long k = detail::parse_int(h[1], line_no);
            if (k < 1) throw ParseError(line_no, "k must be >= 1");
            ei.disqualifier = EdgeMajorityInstance::Threshold{static_cast<std::uint64_t>(k)};
        }
        auto circuits = detail::parse_circuits(is, line_no, 2);
        ei.edge = std::move(circuits[0]);
        ei.verifier = std::move(circuits[1]);
        inst.value = std::move(ei);
    } else if (name == "CKT-UNIQUE-OPT" || name == "CKT-UNIQUE-VALUE" || name == "CKT-CONSENSUS" ||
               name == "2-CKT-PARETO" || name == "STRONG-DOMINANT-STRATEGY" ||
               name == "CKT-WINNER-THRESHOLD" || name == "WDOM-STRATEGY") {
        OptFamilyInstance oi;
        oi.variant = name == "CKT-UNIQUE-OPT" ? OptVariant::UniqueOpt
                   : name == "CKT-UNIQUE-VALUE" ? OptVariant::UniqueValue
                   : name == "CKT-CONSENSUS" ? OptVariant::Consensus
                   : name == "2-CKT-PARETO" ? OptVariant::Pareto2
                   : name == "STRONG-DOMINANT-STRATEGY" ? OptVariant::StrongDominant
                   : name == "CKT-WINNER-THRESHOLD" ? OptVariant::WinnerThreshold
                                                    : OptVariant::WeakDominant;
        oi.circuits = detail::parse_circuits(is, line_no);
        inst.value = std::move(oi);
    } else if (name == "EXISTS-FORALL-SAT" || name == "FORALL-EXISTS-SAT" ||
               name == "UNIQUE-EXISTS-FORALL-SAT" || name == "UNSAT") {
        QbfInstance qi;
        qi.pattern = name == "EXISTS-FORALL-SAT" ? QbfPattern::ExistsForall
                   : name == "FORALL-EXISTS-SAT" ? QbfPattern::ForallExists
                   : name == "UNIQUE-EXISTS-FORALL-SAT" ? QbfPattern::UniqueExistsForall
                                                        : QbfPattern::Unsat;
        qi.formula = detail::parse_circuits(is, line_no, 1)[0];
        inst.value = std::move(qi);
    } else if (name == "ASHG-STRONG-POPULARITY") {
        std::string hline;
        do {
            if (!std::getline(is, hline)) throw ParseError(line_no, "expected 'ashg'");
            ++line_no;
        } while (detail::split_ws(hline).empty());
        if (detail::split_ws(hline)[0] != "ashg") throw ParseError(line_no, "expected 'ashg'");
        inst.value = parse_ashg(is, line_no, /*header_consumed=*/true);
    } else {
        throw ParseError(line_no, "unknown problem '" + name + "'");
    }
    inst.validate();
    return inst;
}

inline ProblemInstance parse_instance(const std::string& text) {
    std::istringstream is(text);
    int line_no = 0;
    return parse_instance(is, line_no);
}

} // namespace uwin
