#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "uwin/brute.hpp"
#include "uwin/generate.hpp"
#include "uwin/problem_io.hpp"

using namespace uwin;

namespace {

/// Definition-level double-loop tournament interpreter, independent of
/// brute_tournament's edge helper.
Verdict tournament_by_definition(const TournamentInstance& inst) {
    const int n = inst.label_bits();
    std::vector<std::uint8_t> scratch;
    auto c = [&](std::uint64_t a, std::uint64_t b) {
        return inst.circuit
                   .eval_value(BitString::from_value(a, n).concat(BitString::from_value(b, n)),
                               scratch) != 0;
    };
    Verdict v;
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
        bool win = true;
        for (std::uint64_t y = 0; y < (1ull << n) && win; ++y) {
            if (y == x) continue;
            bool beats = c(x, y) && !c(y, x);
            if (inst.flavor == TournamentFlavor::Strict)
                beats = beats || (c(x, y) == c(y, x) && x > y);
            win = beats;
        }
        if (win) {
            ++v.witness_count;
            if (!v.witness) {
                v.yes = true;
                v.witness = BitString::from_value(x, n);
            }
        }
    }
    return v;
}

/// Independent pairwise-majority interpreter for Condorcet instances.
Verdict condorcet_by_definition(const CondorcetInstance& inst) {
    const int n = inst.candidate_bits();
    std::vector<std::uint8_t> scratch;
    Verdict v;
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
        bool win = true;
        for (std::uint64_t y = 0; y < (1ull << n) && win; ++y) {
            if (y == x) continue;
            long margin = 0;
            for (const Circuit& c : inst.circuits) {
                std::uint64_t vx = c.eval_value(x, scratch), vy = c.eval_value(y, scratch);
                margin += vx > vy ? 1 : (vx < vy ? -1 : 0);
            }
            win = margin > 0;
        }
        if (win) {
            ++v.witness_count;
            if (!v.witness) {
                v.yes = true;
                v.witness = BitString::from_value(x, n);
            }
        }
    }
    return v;
}

CondorcetInstance two_voter_fixture() {
    CondorcetInstance ci;
    ci.circuits.push_back(table_circuit(2, 3, {4, 4, 3, 5}, "v1"));
    ci.circuits.push_back(table_circuit(2, 3, {2, 1, 5, 3}, "v2"));
    return ci;
}

} // namespace

TEST_CASE("tournament: n=1 identity-ish circuit has source 1") {
    // C(x||y) = x: vertex 1 beats 0 since C(10)=1, C(01)=0
    TournamentInstance t;
    t.circuit = identity_circuit(2);
    t.circuit.outputs = {0}; // first bit only
    t.flavor = TournamentFlavor::Weak;
    Verdict v = brute_tournament(t);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 1);
}

TEST_CASE("tournament: constant-1 circuit means all ties, no weak source") {
    TournamentInstance t;
    t.circuit = constant_circuit(2, 1, 1);
    t.flavor = TournamentFlavor::Weak;
    Verdict v = brute_tournament(t);
    REQUIRE_FALSE(v.yes);
    // the strict flavor breaks every tie toward the larger label
    t.flavor = TournamentFlavor::Strict;
    v = brute_tournament(t);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 1);
}

TEST_CASE("tournament brute matches definition-level interpreter on random instances") {
    GenParams p;
    p.n = 3;
    p.gate_count = 10;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (const char* name : {"WEAK-TOURNAMENT-SOURCE", "TOURNAMENT-SOURCE"}) {
            ProblemInstance inst = gen_random(name, p, seed);
            Verdict a = brute_tournament(inst.as<TournamentInstance>());
            Verdict b = tournament_by_definition(inst.as<TournamentInstance>());
            REQUIRE(a.yes == b.yes);
            REQUIRE(a.witness_count == b.witness_count);
            if (a.yes) REQUIRE(*a.witness == *b.witness);
        }
    }
}

TEST_CASE("strict tournament relation is total and asymmetric") {
    GenParams p;
    p.n = 3;
    std::vector<std::uint8_t> scratch;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto inst = gen_random("TOURNAMENT-SOURCE", p, seed).as<TournamentInstance>();
        for (std::uint64_t x = 0; x < 8; ++x)
            for (std::uint64_t y = 0; y < 8; ++y) {
                if (x == y) continue;
                int r1 = tournament_relation(inst, x, y, scratch);
                int r2 = tournament_relation(inst, y, x, scratch);
                REQUIRE(r1 != 0);
                REQUIRE(r1 == -r2);
            }
    }
}

TEST_CASE("two-voter fixture: relation chain and no Condorcet string") {
    CondorcetInstance ci = two_voter_fixture();
    BruteOptions opts;
    auto values = detail::value_matrix(ci.circuits, 2, opts);
    // candidates a=00 b=01 c=10 d=11
    auto margin = [&](std::uint64_t x, std::uint64_t y) { return condorcet_margin(values, x, y); };
    REQUIRE(margin(0, 1) > 0);  // a beats b
    REQUIRE(margin(1, 2) == 0); // b ties c
    REQUIRE(margin(2, 3) == 0); // c ties d
    REQUIRE(margin(3, 0) > 0);  // d beats a
    REQUIRE(margin(0, 2) == 0); // a ties c
    REQUIRE(margin(3, 1) > 0);  // d beats b
    Verdict v = brute_condorcet(ci);
    REQUIRE_FALSE(v.yes);
}

TEST_CASE("condorcet: single identity voter has winner 11") {
    CondorcetInstance ci;
    ci.circuits.push_back(identity_circuit(2));
    Verdict v = brute_condorcet(ci);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 3);
}

TEST_CASE("condorcet brute matches independent interpreter on random instances") {
    GenParams p;
    p.n = 3;
    p.m = 3;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto inst = gen_random("CKT-CONDORCET", p, seed).as<CondorcetInstance>();
        Verdict a = brute_condorcet(inst);
        Verdict b = condorcet_by_definition(inst);
        REQUIRE(a.yes == b.yes);
        if (a.yes) REQUIRE(*a.witness == *b.witness);
    }
}

TEST_CASE("dice: intransitive 3-cycle fixture (Efron-style values)") {
    // dice A=(2,4,9), B=(1,6,8), C=(3,5,7); label 11 duplicates C
    DiceInstance di;
    di.circuits.push_back(table_circuit(2, 4, {2, 1, 3, 3}, "f1"));
    di.circuits.push_back(table_circuit(2, 4, {4, 6, 5, 5}, "f2"));
    di.circuits.push_back(table_circuit(2, 4, {9, 8, 7, 7}, "f3"));
    BruteOptions opts;
    auto faces = detail::value_matrix(di.circuits, 2, opts);

    // count all 9 face pairs per match: 5 wins to 4 in the cyclic direction
    auto wins = [&](std::uint64_t x, std::uint64_t y) {
        int w = 0;
        for (const auto& fi : faces)
            for (const auto& fj : faces)
                if (fi[x] > fj[y]) ++w;
        return w;
    };
    REQUIRE(wins(0, 1) == 5); REQUIRE(wins(1, 0) == 4); // A beats B
    REQUIRE(wins(1, 2) == 5); REQUIRE(wins(2, 1) == 4); // B beats C
    REQUIRE(wins(2, 0) == 5); REQUIRE(wins(0, 2) == 4); // C beats A
    REQUIRE_FALSE(brute_dice(di).yes);
}

TEST_CASE("dice: dominating die wins") {
    DiceInstance di;
    di.circuits.push_back(table_circuit(1, 4, {9, 1}, "f1"));
    di.circuits.push_back(table_circuit(1, 4, {8, 2}, "f2"));
    Verdict v = brute_dice(di);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 0);
}

TEST_CASE("graph dice matches independent partition interpreter") {
    GenParams p;
    p.weight_range = 6;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        p.n = 2 + static_cast<int>(seed % 4); // 2..5 vertices
        auto inst = gen_random("GRAPH-DICE", p, seed).as<GraphDiceInstance>();
        Verdict got = brute_graph_dice(inst);

        // independent: recompute via Partition::blocks directly
        std::vector<Partition> parts;
        for_each_partition(inst.vertex_count, [&](const Partition& q) { parts.push_back(q); });
        auto s_of = [&](const Partition& q, int i) {
            std::int64_t s = 0;
            for (int l : q.blocks[static_cast<size_t>(q.block_of(i))]) s += inst.weight(i, l);
            return s;
        };
        int winners = 0;
        std::optional<Partition> first;
        for (const Partition& a : parts) {
            bool all = true;
            for (const Partition& b : parts) {
                if (a == b) continue;
                long margin = 0;
                for (int i = 0; i < inst.vertex_count; ++i)
                    for (int j = 0; j < inst.vertex_count; ++j) {
                        std::int64_t sa = s_of(a, i), sb = s_of(b, j);
                        margin += sa > sb ? 1 : (sa < sb ? -1 : 0);
                    }
                if (margin <= 0) {
                    all = false;
                    break;
                }
            }
            if (all) {
                ++winners;
                if (!first) first = a;
            }
        }
        REQUIRE(got.yes == (winners > 0));
        REQUIRE(got.witness_count == winners);
        if (got.yes) REQUIRE(*got.witness_partition == *first);
    }
}

TEST_CASE("edge majority: constant-zero edge circuit has no winner") {
    EdgeMajorityInstance e;
    e.edge = constant_circuit(4, 3, 0, "edge");
    e.verifier = constant_circuit(3, 4, 0, "ver");
    e.disqualifier = EdgeMajorityInstance::Threshold{1};
    REQUIRE_FALSE(brute_edge_majority(e).yes);
}

TEST_CASE("opt variants: small sanity fixtures") {
    SECTION("unique-opt with identity circuit") {
        OptFamilyInstance o;
        o.variant = OptVariant::UniqueOpt;
        o.circuits.push_back(identity_circuit(3));
        Verdict v = brute_opt(o);
        REQUIRE(v.yes);
        REQUIRE(v.witness->value() == 7);
    }
    SECTION("winner-threshold with constant-1 circuit accepts the top string") {
        OptFamilyInstance o;
        o.variant = OptVariant::WinnerThreshold;
        o.circuits.push_back(constant_circuit(4, 1, 1));
        Verdict v = brute_opt(o);
        REQUIRE(v.yes);
        REQUIRE(v.witness->value() == 3); // 1^n: nothing above it exists
    }
    SECTION("unique-value with constant circuit is No for n >= 2") {
        OptFamilyInstance o;
        o.variant = OptVariant::UniqueValue;
        o.circuits.push_back(constant_circuit(2, 2, 1));
        REQUIRE_FALSE(brute_opt(o).yes);
    }
    SECTION("strong dominant via y-ignoring circuit") {
        OptFamilyInstance o;
        o.variant = OptVariant::StrongDominant;
        CircuitBuilder b(4);
        b.set_outputs(b.inputs(0, 2)); // C(x||y) = x
        o.circuits.push_back(b.build());
        Verdict v = brute_opt(o);
        REQUIRE(v.yes);
        REQUIRE(v.witness->value() == 3);
    }
}

TEST_CASE("qbf: trivial formulas") {
    QbfInstance q;
    q.formula = constant_circuit(2, 1, 1, "one");
    q.pattern = QbfPattern::ExistsForall;
    REQUIRE(brute_qbf(q).yes);
    q.pattern = QbfPattern::UniqueExistsForall;
    REQUIRE_FALSE(brute_qbf(q).yes); // all x qualify

    // psi(x||y) = [x = 0]: unique all-winner 0
    CircuitBuilder b(2);
    b.set_outputs({b.not_(b.input(0))});
    q.formula = b.build();
    q.pattern = QbfPattern::UniqueExistsForall;
    Verdict v = brute_qbf(q);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 0);
}

TEST_CASE("qbf duality: exists-forall equals negation of forall-exists") {
    GenParams p;
    p.n = 3;
    p.gate_count = 12;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        auto ef = gen_random("EXISTS-FORALL-SAT", p, seed).as<QbfInstance>();
        QbfInstance fe;
        fe.formula = ef.formula;
        fe.pattern = QbfPattern::ForallExists;
        // exists x forall y psi=1  <=>  not (forall x exists y psi=0)
        REQUIRE(brute_qbf(ef).yes == !brute_qbf(fe).yes);
    }
}

TEST_CASE("unambiguity: brute witnesses never exceed one on unambiguous problems") {
    GenParams p;
    p.n = 2;
    p.m = 2;
    const char* names[] = {"WEAK-TOURNAMENT-SOURCE", "TOURNAMENT-SOURCE", "CKT-CONDORCET",
                           "CKT-DICE", "EDGE-MAJORITY", "CKT-UNIQUE-OPT", "CKT-WINNER-THRESHOLD",
                           "STRONG-DOMINANT-STRATEGY", "WDOM-STRATEGY",
                           "UNIQUE-EXISTS-FORALL-SAT"};
    for (const char* name : names) {
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            ProblemInstance inst = gen_random(name, p, seed);
            Verdict v = brute(inst);
            INFO(name << " seed " << seed);
            REQUIRE(v.witness_count <= 1);
        }
    }
}

TEST_CASE("gen_random is deterministic and instances validate") {
    GenParams p;
    p.n = 3;
    p.m = 2;
    const char* names[] = {"CKT-CONDORCET", "CKT-DICE", "GRAPH-DICE", "EDGE-MAJORITY-SET",
                           "TSP-UNIQUE-OPT", "ASHG-STRONG-POPULARITY", "CKT-CONSENSUS",
                           "2-CKT-PARETO", "UNSAT"};
    for (const char* name : names) {
        ProblemInstance a = gen_random(name, p, 42);
        ProblemInstance b = gen_random(name, p, 42);
        REQUIRE(serialize_instance(a) == serialize_instance(b));
        a.validate();
    }
}

TEST_CASE("gen_random condorcet yes-rate is strictly between 0 and 1") {
    GenParams p;
    p.n = 2;
    p.m = 1;
    p.gate_count = 6;
    int yes = 0;
    const int total = 10000;
    for (int seed = 0; seed < total; ++seed) {
        auto inst = gen_random("CKT-CONDORCET", p, static_cast<std::uint64_t>(seed));
        if (brute(inst).yes) ++yes;
    }
    REQUIRE(yes > 0);
    REQUIRE(yes < total);
}

TEST_CASE("instance files round-trip") {
    GenParams p;
    p.n = 2;
    p.m = 2;
    const char* names[] = {"WEAK-TOURNAMENT-SOURCE", "MULTI-WEAK-TOURNAMENT-SOURCE",
                           "CKT-CONDORCET", "STRICT-CKT-DICE", "GRAPH-DICE", "EDGE-MAJORITY",
                           "EDGE-MAJORITY-SET", "TSP-UNIQUE-OPT", "CKT-UNIQUE-OPT",
                           "WDOM-STRATEGY", "UNIQUE-EXISTS-FORALL-SAT", "UNSAT",
                           "ASHG-STRONG-POPULARITY"};
    for (const char* name : names) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            ProblemInstance inst = gen_random(name, p, seed);
            std::string text = serialize_instance(inst);
            ProblemInstance back = parse_instance(text);
            REQUIRE(back.problem_name() == inst.problem_name());
            REQUIRE(serialize_instance(back) == text);
        }
    }
}

TEST_CASE("budget overruns raise explicit errors") {
    TournamentInstance t;
    t.circuit = constant_circuit(40, 1, 1);
    t.flavor = TournamentFlavor::Weak;
    REQUIRE_THROWS_AS(brute_tournament(t), BudgetError);

    GraphDiceInstance g;
    g.vertex_count = 12;
    g.weights.assign(12, std::vector<std::int64_t>(12, 0));
    REQUIRE_THROWS_AS(brute_graph_dice(g), BudgetError);
}

TEST_CASE("parallel brute enumeration is schedule-independent") {
    GenParams p;
    p.n = 3;
    p.m = 3;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        ProblemInstance inst = gen_random("CKT-CONDORCET", p, seed);
        BruteOptions serial, threaded;
        threaded.jobs = 3;
        Verdict a = brute(inst, serial);
        Verdict b = brute(inst, threaded);
        REQUIRE(a.yes == b.yes);
        REQUIRE(a.witness_count == b.witness_count);
        if (a.yes) REQUIRE(*a.witness == *b.witness);
    }
}

TEST_CASE("partition enumeration counts Bell numbers") {
    REQUIRE(bell_number(1) == 1);
    REQUIRE(bell_number(3) == 5);
    REQUIRE(bell_number(5) == 52);
    REQUIRE(bell_number(8) == 4140);
    for (int n = 1; n <= 6; ++n) {
        std::set<Partition> seen;
        for_each_partition(n, [&](const Partition& p) {
            REQUIRE(p.element_count() == n);
            seen.insert(p);
        });
        REQUIRE(seen.size() == bell_number(n));
    }
}

TEST_CASE("multi-weak tournament brute follows the three-block definition") {
    // C(x||y||z) = 1 iff x >= y (ignoring z): source is the max label
    CircuitBuilder b(6);
    Word x = b.inputs(0, 2), y = b.inputs(2, 2);
    b.set_outputs({b.geq(x, y)});
    TournamentInstance t;
    t.circuit = b.build();
    t.flavor = TournamentFlavor::MultiWeak;
    Verdict v = brute_tournament(t);
    REQUIRE(v.yes);
    REQUIRE(v.witness->value() == 3);
}
