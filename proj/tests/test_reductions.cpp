#include <catch2/catch_amalgamated.hpp>

#include "uwin/generate.hpp"
#include "uwin/reductions.hpp"

using namespace uwin;

namespace {

/// Verdict preservation plus witness-map forwarding for one row on one
/// instance: brute(source) == brute(target), and a mapped Yes-witness must
/// equal the target's brute witness.
void check_row(const std::string& kind, const ProblemInstance& source,
               const ReductionParams& params = {}) {
    ProblemInstance target = apply_reduction(kind, source, params);
    Verdict vs = brute(source);
    Verdict vt = brute(target);
    INFO(kind << ": source " << source.problem_name() << " -> " << target.problem_name());
    REQUIRE(vs.yes == vt.yes);
    if (vs.yes && reduction_kind(kind).has_witness_map) {
        auto mapped = witness_map(kind, source, vs);
        REQUIRE(mapped.has_value());
        if (mapped->witness) {
            REQUIRE(vt.witness.has_value());
            // ambiguous targets may hold several witnesses; the mapped one
            // must qualify, and on unambiguous targets it must be the witness
            bool ambiguous = target.problem_name() == "CKT-UNIQUE-VALUE" ||
                             target.problem_name() == "2-CKT-PARETO";
            if (ambiguous) REQUIRE(qualifies(target, *mapped->witness));
            else REQUIRE(*mapped->witness == *vt.witness);
        } else {
            REQUIRE(vt.witness_partition.has_value());
            REQUIRE(*mapped->witness_partition == *vt.witness_partition);
        }
    }
}

ProblemInstance tournament_from_table(const std::vector<std::uint64_t>& rows, int n,
                                      TournamentFlavor flavor) {
    TournamentInstance t;
    t.circuit = table_circuit(2 * n, 1, rows, "tt");
    t.flavor = flavor;
    ProblemInstance inst;
    inst.value = std::move(t);
    return inst;
}

} // namespace

TEST_CASE("R1: exhaustive n=1 truth tables and random instances") {
    for (std::uint64_t tab = 0; tab < 16; ++tab) {
        std::vector<std::uint64_t> rows(4);
        for (int i = 0; i < 4; ++i) rows[static_cast<size_t>(i)] = (tab >> i) & 1;
        check_row("R1", tournament_from_table(rows, 1, TournamentFlavor::Strict));
    }
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        check_row("R1", gen_random("TOURNAMENT-SOURCE", p, seed));
}

TEST_CASE("R2: exhaustive n=1 truth tables and random instances") {
    for (std::uint64_t tab = 0; tab < 16; ++tab) {
        std::vector<std::uint64_t> rows(4);
        for (int i = 0; i < 4; ++i) rows[static_cast<size_t>(i)] = (tab >> i) & 1;
        check_row("R2", tournament_from_table(rows, 1, TournamentFlavor::Weak));
    }
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        check_row("R2", gen_random("WEAK-TOURNAMENT-SOURCE", p, seed));
}

TEST_CASE("R2 output relation is a strict tournament") {
    GenParams p;
    p.n = 2;
    std::vector<std::uint8_t> scratch;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        ProblemInstance src = gen_random("WEAK-TOURNAMENT-SOURCE", p, seed);
        auto target = apply_reduction("R2", src).as<TournamentInstance>();
        const int n = target.label_bits();
        for (std::uint64_t x = 0; x < (1ull << n); ++x)
            for (std::uint64_t y = x + 1; y < (1ull << n); ++y) {
                int r = tournament_relation(target, x, y, scratch);
                REQUIRE(r != 0); // totality + asymmetry over doubled labels
            }
    }
}

TEST_CASE("R3: both directions preserve verdicts") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        check_row("R3", gen_random("MULTI-WEAK-TOURNAMENT-SOURCE", p, seed));
        check_row("R3", gen_random("WEAK-TOURNAMENT-SOURCE", p, seed));
    }
}

TEST_CASE("R4: two-voter fixture plus exhaustive small tables") {
    // the two-voter fixture: the reduced weak tournament still has no source
    CondorcetInstance ci;
    ci.circuits.push_back(table_circuit(2, 3, {4, 4, 3, 5}, "v1"));
    ci.circuits.push_back(table_circuit(2, 3, {2, 1, 5, 3}, "v2"));
    ProblemInstance inst;
    inst.value = ci;
    check_row("R4", inst);
    REQUIRE_FALSE(brute(apply_reduction("R4", inst)).yes);

    // exhaustive m=1 over all n=1 value tables with 2-bit values
    for (std::uint64_t t = 0; t < 16; ++t) {
        CondorcetInstance one;
        one.circuits.push_back(table_circuit(1, 2, {t & 3, (t >> 2) & 3}, "v"));
        ProblemInstance pi;
        pi.value = one;
        check_row("R4", pi);
    }
    GenParams p;
    p.n = 2;
    p.m = 3;
    for (std::uint64_t seed = 0; seed < 120; ++seed)
        check_row("R4", gen_random("CKT-CONDORCET", p, seed));
}

TEST_CASE("R5: padding preserves the identity-circuit witness") {
    CondorcetInstance ci;
    ci.circuits.push_back(identity_circuit(2));
    ProblemInstance inst;
    inst.value = ci;
    ReductionParams params;
    params.target_m = 3;
    ProblemInstance out = apply_reduction("R5", inst, params);
    REQUIRE(out.as<CondorcetInstance>().circuits.size() == 3);
    Verdict v = brute(out);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 3);

    GenParams p;
    p.n = 2;
    p.m = 2;
    for (std::uint64_t seed = 0; seed < 150; ++seed)
        check_row("R5", gen_random("CKT-CONDORCET", p, seed), params);
}

TEST_CASE("R6: graph dice to circuit dice") {
    GenParams p;
    p.weight_range = 5;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        p.n = 2 + static_cast<int>(seed % 2);
        check_row("R6", gen_random("GRAPH-DICE", p, seed));
    }
}

TEST_CASE("R7: hedonic game to graph dice via range-separating self-loops") {
    GenParams p;
    p.weight_range = 4;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        p.agents = 2 + static_cast<int>(seed % 4);
        check_row("R7", gen_random("ASHG-STRONG-POPULARITY", p, seed));
    }
}

TEST_CASE("R7 preserves per-agent order and forces cross-vertex comparisons") {
    GenParams p;
    p.agents = 4;
    p.weight_range = 5;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Ashg g = gen_random("ASHG-STRONG-POPULARITY", p, seed).as<Ashg>();
        GraphDiceInstance gd = ashg_to_graph_dice(g);
        std::vector<Partition> parts;
        for_each_partition(g.agent_count, [&](const Partition& q) { parts.push_back(q); });
        for (const Partition& pa : parts)
            for (const Partition& pb : parts) {
                auto la = pa.labels(), lb = pb.labels();
                for (int i = 0; i < g.agent_count; ++i) {
                    // order preservation per agent
                    REQUIRE((gd.face(i, la) > gd.face(i, lb)) ==
                            (utility(g, la, i) > utility(g, lb, i)));
                    // range separation: s_i < s_j for i < j across any two partitions
                    for (int j = i + 1; j < g.agent_count; ++j)
                        REQUIRE(gd.face(i, la) < gd.face(j, lb));
                }
            }
    }
}

TEST_CASE("R8: strict dice verdict preservation") {
    // exhaustive m=1, n=1 over all 2-bit face tables
    for (std::uint64_t t = 0; t < 16; ++t) {
        DiceInstance di;
        di.circuits.push_back(table_circuit(1, 2, {t & 3, (t >> 2) & 3}, "f"));
        ProblemInstance inst;
        inst.value = di;
        check_row("R8", inst);
    }
    GenParams p;
    p.n = 2;
    p.m = 2;
    for (std::uint64_t seed = 0; seed < 60; ++seed)
        check_row("R8", gen_random("CKT-DICE", p, seed));
}

TEST_CASE("R8 structure: valid beats invalid, edge-vertices cycle, factor 16") {
    GenParams p;
    p.n = 1;
    p.m = 1;
    p.value_bits = 2;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        DiceInstance src = gen_random("CKT-DICE", p, seed).as<DiceInstance>();
        DiceInstance out = build_strict_dice(src);
        const int n = src.label_bits();
        const int nn = out.label_bits();
        BruteOptions opts;
        auto src_faces = detail::value_matrix(src.circuits, n, opts);
        auto out_faces = detail::value_matrix(out.circuits, nn, opts);

        auto is_valid = [&](std::uint64_t z) {
            std::uint64_t prefix = z >> (2 * n);
            std::uint64_t a = (z >> n) & ((1ull << n) - 1);
            std::uint64_t bb = z & ((1ull << n) - 1);
            return prefix != 0 ? a != bb : a == 0;
        };
        auto original_of = [&](std::uint64_t x) { return x; }; // 0-prefix || x

        for (std::uint64_t z = 0; z < (1ull << nn); ++z)
            for (std::uint64_t zp = 0; zp < (1ull << nn); ++zp) {
                if (z == zp) continue;
                if (is_valid(z) && !is_valid(zp))
                    REQUIRE(dice_margin(out_faces, z, zp) > 0); // valid beats invalid
            }

        // three edge-vertices of one (distinct) edge form a 3-cycle
        for (std::uint64_t x = 0; x < (1ull << n); ++x)
            for (std::uint64_t y = 0; y < (1ull << n); ++y) {
                if (x == y) continue; // self-pairs are invalid vertices
                std::uint64_t e01 = (1ull << (2 * n)) | (x << n) | y;
                std::uint64_t e10 = (2ull << (2 * n)) | (x << n) | y;
                std::uint64_t e11 = (3ull << (2 * n)) | (x << n) | y;
                REQUIRE(dice_margin(out_faces, e01, e10) > 0);
                REQUIRE(dice_margin(out_faces, e10, e11) > 0);
                REQUIRE(dice_margin(out_faces, e11, e01) > 0);
            }

        // factor-16 identity between original vertices on the first 4m faces
        const int m = static_cast<int>(src.circuits.size());
        for (std::uint64_t x = 0; x < (1ull << n); ++x)
            for (std::uint64_t y = 0; y < (1ull << n); ++y) {
                long src_margin = dice_margin(src_faces, x, y);
                long first_margin = 0;
                for (int i = 0; i < 4 * m; ++i)
                    for (int j = 0; j < 4 * m; ++j)
                        first_margin += detail::sgn64(out_faces[static_cast<size_t>(i)]
                                                               [original_of(x)],
                                                      out_faces[static_cast<size_t>(j)]
                                                               [original_of(y)]);
                REQUIRE(first_margin == 16 * src_margin);
            }
    }
}

TEST_CASE("R9: de-tie preserves verdicts and kills every tie") {
    GenParams p;
    p.n = 2;
    p.m = 2;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        DiceInstance src = gen_random("STRICT-CKT-DICE", p, seed).as<DiceInstance>();
        ProblemInstance inst;
        inst.value = src;
        check_row("R9", inst);

        DiceInstance out = detie_strict_dice(src);
        BruteOptions opts;
        auto src_faces = detail::value_matrix(src.circuits, src.label_bits(), opts);
        auto out_faces = detail::value_matrix(out.circuits, out.label_bits(), opts);
        for (std::uint64_t x = 0; x < 4; ++x)
            for (std::uint64_t y = 0; y < 4; ++y) {
                if (x == y) continue;
                long before = dice_margin(src_faces, x, y);
                long after = dice_margin(out_faces, x, y);
                REQUIRE(after != 0); // no ties survive
                if (before > 0) REQUIRE(after > 0);
                if (before < 0) REQUIRE(after < 0);
                if (before == 0) REQUIRE((after > 0) == (x > y)); // numeric winner
            }
    }
}

TEST_CASE("R11: balancing both imbalance directions") {
    // n < m: widen x; build via one R11-style planted instance then check
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        ProblemInstance inst = gen_random("EDGE-MAJORITY", p, seed);
        check_row("R11", inst); // balanced already: identity, still must hold
    }
}

TEST_CASE("R11 widens the x side when it is shorter") {
    // hand-build an n=1, m=2 instance via the UNSAT-style construction
    CircuitBuilder bc(3, "c");
    {
        Word x = bc.inputs(0, 1), y = bc.inputs(1, 2);
        Word lab{bc.constant(1)};
        lab.insert(lab.end(), y.begin(), y.end());
        Wire live = bc.eq(x, bc.const_word(0, 1));
        bc.set_outputs(bc.mux(live, lab, bc.const_word(0, 3)));
    }
    CircuitBuilder bv(3, "v");
    {
        Word zp = bv.inputs(1, 2);
        Word res = bv.const_word(0, 1);
        res.insert(res.end(), zp.begin(), zp.end());
        bv.set_outputs(res);
    }
    EdgeMajorityInstance e;
    e.edge = bc.build();
    e.verifier = bv.build();
    e.disqualifier = EdgeMajorityInstance::Threshold{1};
    e.validate();
    REQUIRE(e.x_bits() == 1);
    REQUIRE(e.y_bits() == 2);
    ProblemInstance inst;
    inst.value = e;
    REQUIRE(brute(inst).yes);
    ProblemInstance out = apply_reduction("R11", inst);
    REQUIRE(out.as<EdgeMajorityInstance>().balanced());
    check_row("R11", inst);
}

TEST_CASE("R11 splits the y side when it is shorter") {
    // n=2, m=1: C(x||y) = 1||y when x = 3, verifier inverts
    CircuitBuilder bc(3, "c");
    {
        Word x = bc.inputs(0, 2), y = bc.inputs(2, 1);
        Word lab{bc.constant(1)};
        lab.insert(lab.end(), y.begin(), y.end());
        Wire live = bc.eq(x, bc.const_word(3, 2));
        bc.set_outputs(bc.mux(live, lab, bc.const_word(0, 2)));
    }
    CircuitBuilder bv(2, "v");
    {
        Word zp = bv.inputs(1, 1);
        Word res = bv.const_word(3, 2);
        res.insert(res.end(), zp.begin(), zp.end());
        bv.set_outputs(res);
    }
    EdgeMajorityInstance e;
    e.edge = bc.build();
    e.verifier = bv.build();
    e.disqualifier = EdgeMajorityInstance::Threshold{1};
    e.validate();
    REQUIRE(e.x_bits() == 2);
    REQUIRE(e.y_bits() == 1);
    ProblemInstance inst;
    inst.value = e;
    REQUIRE(brute(inst).yes);
    ProblemInstance out = apply_reduction("R11", inst);
    REQUIRE(out.as<EdgeMajorityInstance>().balanced());
    check_row("R11", inst);
}

TEST_CASE("R12: threshold squashing") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        ProblemInstance inst = gen_random("EDGE-MAJORITY", p, seed);
        ProblemInstance out = apply_reduction("R12", inst);
        auto* th = std::get_if<EdgeMajorityInstance::Threshold>(
            &out.as<EdgeMajorityInstance>().disqualifier);
        REQUIRE(th);
        REQUIRE(th->k == 1);
        check_row("R12", inst);
    }
}

TEST_CASE("R13: threshold raising for several k values") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t k : {2ull, 3ull, 4ull}) {
        ReductionParams params;
        params.target_k = k;
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            ProblemInstance inst = apply_reduction("R12", gen_random("EDGE-MAJORITY", p, seed));
            check_row("R13", inst, params);
        }
    }
}

TEST_CASE("R13 short-circuits oversized k") {
    GenParams p;
    p.n = 2;
    ReductionParams params;
    params.target_k = 64; // above 2^n = 4
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        ProblemInstance inst = apply_reduction("R12", gen_random("EDGE-MAJORITY", p, seed));
        ProblemInstance out = apply_reduction("R13", inst, params);
        REQUIRE(brute(inst).yes == brute(out).yes);
    }
}

TEST_CASE("R14: explicit sets swap into thresholds") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        ProblemInstance inst = gen_random("EDGE-MAJORITY-SET", p, seed);
        check_row("R14", inst);
    }
}

TEST_CASE("R15: UNSAT reduction, fixed formulas and random") {
    // psi = x1 and not x1: unsatisfiable, so the zero string wins
    CircuitBuilder b1(1, "contra");
    b1.set_outputs({b1.and_(b1.input(0), b1.not_(b1.input(0)))});
    QbfInstance unsat;
    unsat.formula = b1.build();
    unsat.pattern = QbfPattern::Unsat;
    ProblemInstance pi1;
    pi1.value = unsat;
    ProblemInstance out1 = apply_reduction("R15", pi1);
    Verdict v1 = brute(out1);
    REQUIRE(v1.yes);
    REQUIRE(v1.witness->value() == 0);

    // psi = x1: satisfiable at y = 1, so No
    QbfInstance sat;
    sat.formula = identity_circuit(1);
    sat.pattern = QbfPattern::Unsat;
    ProblemInstance pi2;
    pi2.value = sat;
    REQUIRE_FALSE(brute(apply_reduction("R15", pi2)).yes);

    GenParams p;
    p.n = 3;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        check_row("R15", gen_random("UNSAT", p, seed));
}

TEST_CASE("R16: TSP tours to unique optimization") {
    GenParams p;
    p.n = 4;
    p.weight_range = 6;
    for (std::uint64_t seed = 0; seed < 60; ++seed)
        check_row("R16", gen_random("TSP-UNIQUE-OPT", p, seed));
}

TEST_CASE("R17-R20: unique-opt embeds into its sibling problems") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        ProblemInstance inst = gen_random("CKT-UNIQUE-OPT", p, seed);
        check_row("R17", inst);
        check_row("R18", inst);
        check_row("R19", inst);
        check_row("R20", inst);
    }
}

TEST_CASE("R21: exists-forall to unique value") {
    GenParams p;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        p.n = 1 + static_cast<int>(seed % 3);
        check_row("R21", gen_random("EXISTS-FORALL-SAT", p, seed));
    }
}

TEST_CASE("R22: unique value to Pareto") {
    GenParams p;
    p.n = 3;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        check_row("R22", gen_random("CKT-UNIQUE-VALUE", p, seed));
}

TEST_CASE("R23: both directions between unique 2QBF and weak dominance") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        check_row("R23", gen_random("UNIQUE-EXISTS-FORALL-SAT", p, seed));
        check_row("R23", gen_random("WDOM-STRATEGY", p, seed));
    }
}

TEST_CASE("R24: forall-exists to unique exists-forall") {
    GenParams p;
    p.n = 2;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        check_row("R24", gen_random("FORALL-EXISTS-SAT", p, seed));
}

TEST_CASE("registry names resolve and reject garbage") {
    REQUIRE(reduction_kind("R4").long_name == "condorcet-to-weak");
    REQUIRE(reduction_kind("dice-to-strict").id == "R8");
    REQUIRE_THROWS_AS(reduction_kind("R99"), ValidationError);
    REQUIRE(reduction_registry().size() == 25);
    // kind/source mismatch is rejected
    GenParams p;
    REQUIRE_THROWS_AS(apply_reduction("R4", gen_random("CKT-DICE", p, 1)), ValidationError);
}
