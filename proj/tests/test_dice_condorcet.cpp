#include <catch2/catch_amalgamated.hpp>

#include "uwin/dice_condorcet.hpp"
#include "uwin/generate.hpp"
#include "uwin/strict_dice.hpp"

using namespace uwin;

namespace {

/// All m=2 lookup-table dice instances over n-bit labels with 2-bit values
/// are parameterized by two value rows; this materializes one.
DiceInstance table_dice(int n, const std::vector<std::uint64_t>& f1,
                        const std::vector<std::uint64_t>& f2) {
    DiceInstance d;
    d.strict = true;
    d.circuits.push_back(table_circuit(n, 2, f1, "f1"));
    d.circuits.push_back(table_circuit(n, 2, f2, "f2"));
    return d;
}

bool tie_free(const std::vector<std::vector<std::uint64_t>>& faces, int n) {
    for (std::uint64_t x = 0; x < (1ull << n); ++x)
        for (std::uint64_t y = x + 1; y < (1ull << n); ++y)
            if (dice_margin(faces, x, y) == 0) return false;
    return true;
}

} // namespace

TEST_CASE("code-composed voters preserve dice verdicts (m=2, eps=1/33)") {
    // one code per label width, reused across the sweep
    PairwiseCode code_n1 = search_code_short(2, 2, Rational::of(1, 33), 5);
    PairwiseCode code_n2 = search_code_short(2, 4, Rational::of(1, 33), 5);
    REQUIRE(code_n1.verified);
    REQUIRE(code_n2.verified);
    CodePairCounts pc1 = CodePairCounts::build(code_n1);
    CodePairCounts pc2 = CodePairCounts::build(code_n2);

    BruteOptions opts;
    long checked = 0;

    // exhaustive n=1: all pairs of 2-entry value rows over 2-bit values
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) {
            DiceInstance d = table_dice(1, {a & 3, (a >> 2) & 3}, {b & 3, (b >> 2) & 3});
            auto faces = detail::value_matrix(d.circuits, 1, opts);
            if (!tie_free(faces, 1)) continue;
            ++checked;
            Verdict src = brute_dice(d);
            // margins of the composed instance, via the pair-count table
            bool zero_wins = code_margin(faces, pc1, 0, 1) > 0;
            bool one_wins = code_margin(faces, pc1, 1, 0) > 0;
            bool target_yes = zero_wins || one_wins;
            REQUIRE(src.yes == target_yes);
            if (src.yes) REQUIRE(src.witness->value() == (zero_wins ? 0u : 1u));
        }
    REQUIRE(checked > 0);

    // sampled n=2 instances, also via the table route
    Rng rng(77);
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<std::uint64_t> f1(4), f2(4);
        for (auto& v : f1) v = rng.below(4);
        for (auto& v : f2) v = rng.below(4);
        DiceInstance d = table_dice(2, f1, f2);
        auto faces = detail::value_matrix(d.circuits, 2, opts);
        if (!tie_free(faces, 2)) continue;
        Verdict src = brute_dice(d);
        int winners = 0;
        std::uint64_t first = 0;
        for (std::uint64_t x = 0; x < 4; ++x) {
            bool all = true;
            for (std::uint64_t y = 0; y < 4 && all; ++y)
                if (y != x && code_margin(faces, pc2, x, y) <= 0) all = false;
            if (all) {
                if (winners == 0) first = x;
                ++winners;
            }
        }
        REQUIRE(winners <= 1);
        REQUIRE(src.yes == (winners == 1));
        if (src.yes) REQUIRE(src.witness->value() == first);
    }
}

TEST_CASE("built voter circuits realize the code composition exactly") {
    PairwiseCode code = search_code_short(2, 4, Rational::of(1, 33), 9);
    BruteOptions opts;
    Rng rng(99);
    int built = 0;
    for (int iter = 0; iter < 30 && built < 3; ++iter) {
        std::vector<std::uint64_t> f1(4), f2(4);
        for (auto& v : f1) v = rng.below(4);
        for (auto& v : f2) v = rng.below(4);
        DiceInstance d = table_dice(2, f1, f2);
        auto faces = detail::value_matrix(d.circuits, 2, opts);
        if (!tie_free(faces, 2)) continue;
        ++built;
        CondorcetInstance out = build_condorcet_from_dice(d, code);
        REQUIRE(static_cast<int>(out.circuits.size()) == code.word_length);
        std::vector<std::uint8_t> scratch;
        for (int i = 0; i < code.word_length; ++i)
            for (std::uint64_t x = 0; x < 4; ++x) {
                std::uint64_t expect =
                    faces[code.word(x)[static_cast<size_t>(i)]][static_cast<size_t>(x)];
                REQUIRE(out.circuits[static_cast<size_t>(i)].eval_value(x, scratch) == expect);
            }
        // full brute on the built instance agrees with the dice verdict
        Verdict vt = brute_condorcet(out);
        Verdict vs = brute_dice(d);
        REQUIRE(vs.yes == vt.yes);
        if (vs.yes) REQUIRE(*vs.witness == *vt.witness);
    }
    REQUIRE(built == 3);
}

TEST_CASE("m=1 composition collapses to the single face circuit") {
    DiceInstance d;
    d.strict = true;
    d.circuits.push_back(table_circuit(2, 3, {5, 1, 7, 2}, "f"));
    PairwiseCode code = search_code(1, 4, Rational::of(1, 3), 1);
    CondorcetInstance out = build_condorcet_from_dice(d, code);
    Verdict vs = brute_dice(d);
    Verdict vt = brute_condorcet(out);
    REQUIRE(vs.yes == vt.yes);
    REQUIRE(vs.witness->value() == 2); // face value 7 dominates
    REQUIRE(*vs.witness == *vt.witness);
}

TEST_CASE("composition rejects bad inputs") {
    DiceInstance d = table_dice(1, {0, 3}, {1, 2});
    PairwiseCode code = search_code_short(2, 2, Rational::of(1, 33), 5);

    SECTION("non-strict flavor") {
        DiceInstance plain = d;
        plain.strict = false;
        REQUIRE_THROWS_AS(build_condorcet_from_dice(plain, code), ValidationError);
    }
    SECTION("tied instance") {
        DiceInstance tied = table_dice(1, {1, 1}, {2, 2});
        REQUIRE_THROWS_AS(build_condorcet_from_dice(tied, code), ValidationError);
    }
    SECTION("epsilon too loose") {
        PairwiseCode loose = code;
        loose.epsilon = Rational::of(1, 8); // not below 1/(2 m^4) = 1/32
        REQUIRE_THROWS_AS(build_condorcet_from_dice(d, loose), ValidationError);
    }
    SECTION("unverified code") {
        PairwiseCode raw = code;
        raw.verified = false;
        REQUIRE_THROWS_AS(build_condorcet_from_dice(d, raw), ValidationError);
    }
}

TEST_CASE("full pipeline: plain dice through strictification, de-tie, composition") {
    // R8 then R9 then table-margin comparison of the R10 stage; the
    // composed stage runs on small tie-free strict instances directly
    GenParams p;
    p.n = 1;
    p.m = 1;
    p.value_bits = 2;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        DiceInstance plain = gen_random("CKT-DICE", p, seed).as<DiceInstance>();
        DiceInstance strict = build_strict_dice(plain);
        DiceInstance tie_free_inst = detie_strict_dice(strict);
        Verdict v0 = brute_dice(plain);
        Verdict v1 = brute_dice(strict);
        Verdict v2 = brute_dice(tie_free_inst);
        REQUIRE(v0.yes == v1.yes);
        REQUIRE(v1.yes == v2.yes);
        BruteOptions opts;
        auto faces = detail::value_matrix(tie_free_inst.circuits, tie_free_inst.label_bits(), opts);
        REQUIRE(tie_free(faces, tie_free_inst.label_bits()));
    }
}
