#pragma once

#include <cstdint>
#include <string>

#include "uwin/blocks.hpp"
#include "uwin/problems.hpp"
#include "uwin/rng.hpp"

namespace uwin {

/// Knobs for gen_random. `value_bits` = 0 picks a per-problem default.
struct GenParams {
    int n = 2;          // label / candidate bits per quantifier block
    int m = 2;          // circuits / voters / faces
    int gate_count = 8; // extra gates on top of the input layer
    int value_bits = 0; // output width where the problem leaves it free
    std::int64_t weight_range = 8; // graph weights drawn from [-range, range]
    int agents = 4;     // ASHG size
};

namespace detail {

inline Circuit random_gate_circuit(Rng& rng, int inputs, int gates, int outputs,
                                   const std::string& name) {
    Circuit c;
    c.name = name;
    c.input_count = inputs;
    for (int i = 0; i < inputs; ++i) c.gates.push_back(Gate::input(i));
    for (int j = 0; j < gates; ++j) {
        int hi = c.gate_count();
        switch (rng.below(8)) {
        case 0: c.gates.push_back(Gate::constant(static_cast<int>(rng.below(2)))); break;
        case 1:
        case 2: c.gates.push_back(Gate::not_of(static_cast<int>(rng.below(hi)))); break;
        case 3:
        case 4:
        case 5:
            c.gates.push_back(
                Gate::and_of(static_cast<int>(rng.below(hi)), static_cast<int>(rng.below(hi))));
            break;
        default:
            c.gates.push_back(
                Gate::or_of(static_cast<int>(rng.below(hi)), static_cast<int>(rng.below(hi))));
            break;
        }
    }
    c.outputs.resize(static_cast<size_t>(outputs));
    for (auto& o : c.outputs) o = static_cast<std::int32_t>(rng.below(c.gate_count()));
    c.validate();
    return c;
}

inline std::vector<std::vector<std::int64_t>> random_matrix(Rng& rng, int n, std::int64_t range,
                                                            bool symmetric, bool nonneg) {
    std::vector<std::vector<std::int64_t>> w(static_cast<size_t>(n),
                                             std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = symmetric ? i : 0; j < n; ++j) {
            std::int64_t v = nonneg ? static_cast<std::int64_t>(rng.below(range + 1))
                                    : static_cast<std::int64_t>(rng.below(2 * range + 1)) - range;
            w[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            if (symmetric) w[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
        }
    return w;
}

/// Edge-majority instances need structure to ever produce Yes: plant a
/// winner x0 whose row follows the UNSAT-style labeling, leave the rest to
/// chance, and sometimes sabotage one entry so planted instances can fail.
inline EdgeMajorityInstance random_edge_majority(Rng& rng, int n, bool with_set) {
    const int m = n; // balanced shape; the R11 row widens it
    std::uint64_t x0 = rng.below(1ull << n);
    int kind = static_cast<int>(rng.below(3)); // 0 random, 1 planted, 2 sabotaged
    std::uint64_t sab_y = rng.below(1ull << m);

    std::vector<std::uint64_t> edge_rows(1ull << (n + m));
    for (std::uint64_t x = 0; x < (1ull << n); ++x)
        for (std::uint64_t y = 0; y < (1ull << m); ++y) {
            std::uint64_t label;
            if (kind != 0 && x == x0) {
                label = (1ull << m) | y; // 1||y, always admissible, inverted below
                if (kind == 2 && y == sab_y) label = 0;
            } else {
                // junk region: mostly invalid labels, occasionally colliding ones
                label = rng.coin() ? 0 : rng.below(1ull << (m + 1));
            }
            edge_rows[(x << m) | y] = label;
        }
    std::vector<std::uint64_t> ver_rows(1ull << (m + 1));
    for (std::uint64_t z = 0; z < ver_rows.size(); ++z) {
        if (z >> m) {
            // 1||y inverts to x0||y
            ver_rows[z] = (x0 << m) | (z & ((1ull << m) - 1));
        } else {
            ver_rows[z] = rng.below(1ull << (n + m));
        }
    }
    EdgeMajorityInstance e;
    e.edge = table_circuit(n + m, m + 1, edge_rows, "edge");
    e.verifier = table_circuit(m + 1, n + m, ver_rows, "ver");
    if (with_set) {
        EdgeMajorityInstance::Set s;
        s.labels.push_back(0);
        std::uint64_t extra = 1 + rng.below(3);
        for (std::uint64_t i = 0; i < extra; ++i) {
            std::uint64_t v = rng.below(1ull << (m + 1));
            bool dup = false;
            for (std::uint64_t have : s.labels) dup |= have == v;
            // keep the planted row alive: never disqualify its labels
            if (!dup && !(v >> m)) s.labels.push_back(v);
        }
        e.disqualifier = std::move(s);
    } else {
        e.disqualifier = EdgeMajorityInstance::Threshold{1 + rng.below(2)};
    }
    return e;
}

} // namespace detail

/// Seed-reproducible random instance of the named problem. The same seed
/// always yields the identical instance.
inline ProblemInstance gen_random(const std::string& problem, const GenParams& p,
                                  std::uint64_t seed) {
    Rng rng(seed ^ 0x5eedULL);
    ProblemInstance inst;

    auto tournament = [&](TournamentFlavor flavor) {
        TournamentInstance t;
        int blocks = flavor == TournamentFlavor::MultiWeak ? 3 : 2;
        t.circuit = detail::random_gate_circuit(rng, blocks * p.n, p.gate_count, 1, "t");
        t.flavor = flavor;
        return t;
    };

    if (problem == "WEAK-TOURNAMENT-SOURCE") {
        inst.value = tournament(TournamentFlavor::Weak);
    } else if (problem == "TOURNAMENT-SOURCE") {
        inst.value = tournament(TournamentFlavor::Strict);
    } else if (problem == "MULTI-WEAK-TOURNAMENT-SOURCE") {
        inst.value = tournament(TournamentFlavor::MultiWeak);
    } else if (problem == "CKT-CONDORCET") {
        CondorcetInstance c;
        int w = p.value_bits > 0 ? p.value_bits : p.n;
        for (int i = 0; i < p.m; ++i)
            c.circuits.push_back(
                detail::random_gate_circuit(rng, p.n, p.gate_count, w, "v" + std::to_string(i)));
        inst.value = std::move(c);
    } else if (problem == "CKT-DICE" || problem == "STRICT-CKT-DICE") {
        DiceInstance d;
        d.strict = problem == "STRICT-CKT-DICE";
        int w = p.value_bits > 0 ? p.value_bits : p.n + 1;
        for (int i = 0; i < p.m; ++i)
            d.circuits.push_back(
                detail::random_gate_circuit(rng, p.n, p.gate_count, w, "f" + std::to_string(i)));
        inst.value = std::move(d);
    } else if (problem == "GRAPH-DICE") {
        GraphDiceInstance g;
        g.vertex_count = p.n;
        g.weights = detail::random_matrix(rng, p.n, p.weight_range, false, false);
        inst.value = std::move(g);
    } else if (problem == "TSP-UNIQUE-OPT") {
        TspInstance t;
        t.vertex_count = p.n < 3 ? 4 : p.n;
        t.weights = detail::random_matrix(rng, t.vertex_count, p.weight_range, true, true);
        for (int i = 0; i < t.vertex_count; ++i) t.weights[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
        inst.value = std::move(t);
    } else if (problem == "EDGE-MAJORITY" || problem == "EDGE-MAJORITY-BALANCED") {
        inst.value = detail::random_edge_majority(rng, p.n, false);
    } else if (problem == "EDGE-MAJORITY-SET") {
        inst.value = detail::random_edge_majority(rng, p.n, true);
    } else if (problem == "CKT-UNIQUE-OPT" || problem == "CKT-UNIQUE-VALUE") {
        OptFamilyInstance o;
        o.variant = problem == "CKT-UNIQUE-OPT" ? OptVariant::UniqueOpt : OptVariant::UniqueValue;
        int w = p.value_bits > 0 ? p.value_bits : p.n;
        o.circuits.push_back(detail::random_gate_circuit(rng, p.n, p.gate_count, w, "c"));
        inst.value = std::move(o);
    } else if (problem == "CKT-CONSENSUS") {
        OptFamilyInstance o;
        o.variant = OptVariant::Consensus;
        int w = p.value_bits > 0 ? p.value_bits : p.n;
        for (int i = 0; i < p.m; ++i)
            o.circuits.push_back(
                detail::random_gate_circuit(rng, p.n, p.gate_count, w, "c" + std::to_string(i)));
        inst.value = std::move(o);
    } else if (problem == "2-CKT-PARETO") {
        OptFamilyInstance o;
        o.variant = OptVariant::Pareto2;
        int w = p.value_bits > 0 ? p.value_bits : p.n;
        o.circuits.push_back(detail::random_gate_circuit(rng, p.n, p.gate_count, w, "c0"));
        o.circuits.push_back(detail::random_gate_circuit(rng, p.n, p.gate_count, w, "c1"));
        inst.value = std::move(o);
    } else if (problem == "STRONG-DOMINANT-STRATEGY" || problem == "WDOM-STRATEGY") {
        OptFamilyInstance o;
        o.variant = problem == "WDOM-STRATEGY" ? OptVariant::WeakDominant
                                               : OptVariant::StrongDominant;
        int w = p.value_bits > 0 ? p.value_bits : p.n;
        o.circuits.push_back(detail::random_gate_circuit(rng, 2 * p.n, p.gate_count, w, "c"));
        inst.value = std::move(o);
    } else if (problem == "CKT-WINNER-THRESHOLD") {
        OptFamilyInstance o;
        o.variant = OptVariant::WinnerThreshold;
        o.circuits.push_back(detail::random_gate_circuit(rng, 2 * p.n, p.gate_count, 1, "c"));
        inst.value = std::move(o);
    } else if (problem == "EXISTS-FORALL-SAT" || problem == "FORALL-EXISTS-SAT" ||
               problem == "UNIQUE-EXISTS-FORALL-SAT") {
        QbfInstance q;
        q.pattern = problem == "EXISTS-FORALL-SAT" ? QbfPattern::ExistsForall
                  : problem == "FORALL-EXISTS-SAT" ? QbfPattern::ForallExists
                                                   : QbfPattern::UniqueExistsForall;
        q.formula = detail::random_gate_circuit(rng, 2 * p.n, p.gate_count, 1, "psi");
        inst.value = std::move(q);
    } else if (problem == "UNSAT") {
        QbfInstance q;
        q.pattern = QbfPattern::Unsat;
        q.formula = detail::random_gate_circuit(rng, p.n, p.gate_count, 1, "psi");
        inst.value = std::move(q);
    } else if (problem == "ASHG-STRONG-POPULARITY") {
        Ashg g = Ashg::empty(p.agents);
        for (int i = 0; i < p.agents; ++i)
            for (int j = 0; j < p.agents; ++j)
                if (i != j)
                    g.set_value(i, j,
                                static_cast<std::int64_t>(rng.below(2 * p.weight_range + 1)) -
                                    p.weight_range);
        g.finalize();
        inst.value = std::move(g);
    } else {
        throw ValidationError("gen_random: unknown problem '" + problem + "'");
    }
    inst.validate();
    return inst;
}

} // namespace uwin
