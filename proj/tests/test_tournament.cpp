#include <catch2/catch_amalgamated.hpp>

#include "uwin/blocks.hpp"
#include "uwin/rng.hpp"
#include "uwin/tournament.hpp"

using namespace uwin;

namespace {

ExplicitTournament random_tournament(Rng& rng, int n) {
    ExplicitTournament t = ExplicitTournament::empty(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.coin()) t.set_edge(u, v);
            else t.set_edge(v, u);
        }
    return t;
}

ExplicitTournament three_cycle() {
    ExplicitTournament t = ExplicitTournament::empty(3);
    t.set_edge(0, 1);
    t.set_edge(1, 2);
    t.set_edge(2, 0);
    return t;
}

ExplicitTournament transitive(int n) {
    ExplicitTournament t = ExplicitTournament::empty(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) t.set_edge(u, v);
    return t;
}

int ceil_log2(int n) {
    int b = 0;
    while ((1 << b) < n) ++b;
    return b;
}

} // namespace

TEST_CASE("max out-degree pick meets the averaging bound") {
    SECTION("3-cycle: every vertex has out-degree 1") {
        ExplicitTournament t = three_cycle();
        std::vector<int> all{0, 1, 2};
        int v = max_outdegree_vertex(t, all);
        REQUIRE(v == 0); // smallest-index tie-break
    }
    SECTION("transitive 4-tournament: the top vertex") {
        ExplicitTournament t = transitive(4);
        std::vector<int> all{0, 1, 2, 3};
        REQUIRE(max_outdegree_vertex(t, all) == 0);
    }
    SECTION("random tournaments: returned degree >= (n-1)/2") {
        Rng rng(211);
        for (int iter = 0; iter < 1000; ++iter) {
            int n = 2 + static_cast<int>(rng.below(63));
            ExplicitTournament t = random_tournament(rng, n);
            std::vector<int> all(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
            int v = max_outdegree_vertex(t, all);
            int deg = 0;
            for (int u = 0; u < n; ++u)
                if (u != v && t.edge(v, u)) ++deg;
            REQUIRE(2 * deg >= n - 1);
        }
    }
    SECTION("empty subset is an error") {
        REQUIRE_THROWS_AS(max_outdegree_vertex(three_cycle(), {}), ValidationError);
    }
}

TEST_CASE("solve_or_certify: transitive tournament yields its source") {
    Certificate c = solve_or_certify(transitive(6));
    REQUIRE(c.kind == Certificate::Kind::Source);
    REQUIRE(c.source == 0);
    REQUIRE(verify_certificate(transitive(6), c));
}

TEST_CASE("solve_or_certify: 3-cycle needs exactly three cover vertices") {
    ExplicitTournament t = three_cycle();
    Certificate c = solve_or_certify(t);
    REQUIRE(c.kind == Certificate::Kind::Cover);
    REQUIRE(c.cover.size() == 3);
    REQUIRE(verify_certificate(t, c));

    // exhaustive: no 2-element set covers a 3-cycle
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            Certificate two;
            two.kind = Certificate::Kind::Cover;
            two.cover = {a, b};
            REQUIRE_FALSE(verify_certificate(t, two));
        }
}

TEST_CASE("solve_or_certify: cover valid and within bound on random sourceless tournaments") {
    Rng rng(223);
    int done = 0;
    while (done < 1000) {
        int n = 3 + static_cast<int>(rng.below(254));
        ExplicitTournament t = random_tournament(rng, n);
        if (t.source()) continue; // want sourceless only
        ++done;
        Certificate c = solve_or_certify(t); // halving assertion lives inside
        REQUIRE(c.kind == Certificate::Kind::Cover);
        REQUIRE(static_cast<int>(c.cover.size()) <= ceil_log2(n) + 1);
        REQUIRE(verify_certificate(t, c));
    }
}

TEST_CASE("solve_or_certify source agrees with the brute source check") {
    Rng rng(227);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 1 + static_cast<int>(rng.below(12));
        ExplicitTournament t = random_tournament(rng, n);
        Certificate c = solve_or_certify(t);
        auto s = t.source();
        if (s) {
            REQUIRE(c.kind == Certificate::Kind::Source);
            REQUIRE(c.source == *s);
        } else {
            REQUIRE(c.kind == Certificate::Kind::Cover);
        }
    }
}

TEST_CASE("mutated covers are rejected when a needed vertex is dropped") {
    Rng rng(229);
    int checked = 0;
    for (int iter = 0; iter < 400 && checked < 100; ++iter) {
        int n = 4 + static_cast<int>(rng.below(60));
        ExplicitTournament t = random_tournament(rng, n);
        if (t.source()) continue;
        Certificate c = solve_or_certify(t);
        if (c.cover.size() < 2) continue;
        ++checked;
        for (size_t drop = 0; drop < c.cover.size(); ++drop) {
            Certificate mutated = c;
            mutated.cover.erase(mutated.cover.begin() + static_cast<long>(drop));
            // the mutated cover must fail whenever the dropped element was
            // some vertex's only dominator
            int dropped = c.cover[drop];
            bool was_sole_dominator = false;
            for (int v = 0; v < n && !was_sole_dominator; ++v) {
                if (v == dropped || !t.edge(dropped, v)) continue;
                bool other = false;
                for (int s : mutated.cover)
                    if (s != v && t.edge(s, v)) other = true;
                if (!other) was_sole_dominator = true;
            }
            if (was_sole_dominator) REQUIRE_FALSE(verify_certificate(t, mutated));
        }
    }
    REQUIRE(checked == 100);
}

TEST_CASE("certificate verification on circuit-backed instances") {
    // C(x||y) = [x >= y] over 3-bit labels: strict source is 7
    CircuitBuilder b(6);
    b.set_outputs({b.geq(b.inputs(0, 3), b.inputs(3, 3))});
    TournamentInstance inst;
    inst.circuit = b.build();
    inst.flavor = TournamentFlavor::Weak;

    Certificate good;
    good.kind = Certificate::Kind::Source;
    good.source = 7;
    REQUIRE(verify_certificate(inst, good));

    Certificate bad = good;
    bad.source = 5; // loses to 6 and 7
    REQUIRE_FALSE(verify_certificate(inst, bad));

    // cover of a sourceless circuit tournament: labels 0,1,2 form a cycle
    // and label 3 loses to everyone
    std::vector<std::uint64_t> rows(16, 0);
    rows[0 * 4 + 1] = 1; // 0 beats 1
    rows[1 * 4 + 2] = 1; // 1 beats 2
    rows[2 * 4 + 0] = 1; // 2 beats 0
    rows[0 * 4 + 3] = rows[1 * 4 + 3] = rows[2 * 4 + 3] = 1;
    TournamentInstance cyc;
    cyc.circuit = table_circuit(4, 1, rows, "cyc");
    cyc.flavor = TournamentFlavor::Weak;
    REQUIRE_FALSE(brute_tournament(cyc).yes);
    Certificate cover;
    cover.kind = Certificate::Kind::Cover;
    cover.cover = {0, 1};
    REQUIRE_FALSE(verify_certificate(cyc, cover)); // 0 only loses to 2
    cover.cover = {0, 1, 2};
    REQUIRE(verify_certificate(cyc, cover));
    cover.cover = {0, 1, 2, 3};
    REQUIRE_THROWS_AS(verify_certificate(cyc, cover), ValidationError); // > n+1
}

TEST_CASE("tournament text format round-trips") {
    Rng rng(233);
    for (int iter = 0; iter < 50; ++iter) {
        ExplicitTournament t = random_tournament(rng, 2 + static_cast<int>(rng.below(20)));
        std::ostringstream os;
        serialize_tournament(t, os);
        ExplicitTournament back = parse_tournament(os.str());
        REQUIRE(back.vertex_count == t.vertex_count);
        REQUIRE(back.beats == t.beats);
    }
    REQUIRE_THROWS_AS(parse_tournament("tournament 2\ne 0 0\n"), ParseError);
    // missing edge direction
    REQUIRE_THROWS_AS(parse_tournament("tournament 2\n"), ValidationError);
}

TEST_CASE("certificate text format round-trips") {
    Certificate s;
    s.kind = Certificate::Kind::Source;
    s.source = 5;
    std::ostringstream os;
    serialize_certificate(s, os);
    Certificate back = parse_certificate(os.str());
    REQUIRE(back.kind == Certificate::Kind::Source);
    REQUIRE(back.source == 5);

    Certificate c;
    c.kind = Certificate::Kind::Cover;
    c.cover = {3, 1, 4};
    std::ostringstream os2;
    serialize_certificate(c, os2);
    back = parse_certificate(os2.str());
    REQUIRE(back.cover == std::vector<int>{3, 1, 4});
}
