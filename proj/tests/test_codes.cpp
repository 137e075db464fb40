#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "uwin/pairwise_code.hpp"

using namespace uwin;

namespace {

/// Independent counting routine: per (a,b) cell, scan positions with its
/// own loop structure and track the worst deviation as a reduced fraction
/// compared via cross-multiplication.
Rational independent_worst_deviation(const PairwiseCode& code) {
    Rational worst{0, 1};
    const int q = code.q, n = code.word_length;
    for (int u = 0; u < code.word_count(); ++u)
        for (int w = 0; w < code.word_count(); ++w) {
            if (u == w) continue;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b) {
                    long count = 0;
                    for (int i = 0; i < n; ++i)
                        if (code.words[static_cast<size_t>(u)][static_cast<size_t>(i)] == a &&
                            code.words[static_cast<size_t>(w)][static_cast<size_t>(i)] == b)
                            ++count;
                    std::int64_t diff = count * q * q - n;
                    if (diff < 0) diff = -diff;
                    Rational dev = Rational::of(diff, static_cast<std::int64_t>(n) * q * q);
                    if (worst < dev) worst = dev;
                }
        }
    return worst;
}

bool rational_eq(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

} // namespace

TEST_CASE("q=1 codes verify for any epsilon") {
    PairwiseCode code = search_code(1, 5, Rational::of(1, 1000), 1);
    REQUIRE(code.verified);
    REQUIRE(verify_code(code).ok);
    // every pair frequency is exactly 1 = 1/q^2, so even epsilon = 0 passes
    code.epsilon = Rational::of(0, 1);
    REQUIRE(verify_code(code).ok);
    REQUIRE_THROWS_AS(search_code(1, 5, Rational::of(0, 1), 1), ValidationError);
}

TEST_CASE("two identical words deviate by a quarter at q=2") {
    PairwiseCode code;
    code.q = 2;
    code.word_length = 8;
    code.epsilon = Rational::of(1, 5); // < 1/4
    std::vector<std::uint8_t> w;
    for (int i = 0; i < 8; ++i) w.push_back(static_cast<std::uint8_t>(i % 2));
    code.words = {w, w};
    CodeCheck check = verify_code(code);
    REQUIRE_FALSE(check.ok);
    // joint frequency of (0,1) is 0, deviating exactly 1/4
    REQUIRE(rational_eq(check.deviation, Rational::of(1, 4)));
    code.epsilon = Rational::of(1, 4);
    REQUIRE(verify_code(code).ok);
}

TEST_CASE("search_code q=2 T=8 eps=1/33 returns a verified code deterministically") {
    PairwiseCode a = search_code(2, 8, Rational::of(1, 33), 7);
    REQUIRE(a.verified);
    REQUIRE(a.word_count() == 8);
    // pinned length: smallest power of two >= 8 q^2 eps^-2 ln(4 T^2 q^2)
    REQUIRE(a.word_length == 262144);
    PairwiseCode b = search_code(2, 8, Rational::of(1, 33), 7);
    REQUIRE(a.words == b.words);
    CodeCheck check = verify_code(a);
    REQUIRE(check.ok);
    REQUIRE(rational_eq(check.deviation, independent_worst_deviation(a)));
}

TEST_CASE("search_code_short finds much shorter verified codes") {
    PairwiseCode code = search_code_short(2, 8, Rational::of(1, 33), 11);
    REQUIRE(code.verified);
    REQUIRE(code.word_length <= 16384);
    REQUIRE(verify_code(code).ok);
}

TEST_CASE("random accepted codes re-verify identically via the independent counter") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        PairwiseCode code = search_code_short(2, 4, Rational::of(1, 20), seed, 512);
        CodeCheck check = verify_code(code);
        REQUIRE(check.ok);
        REQUIRE(rational_eq(check.deviation, independent_worst_deviation(code)));
    }
}

TEST_CASE("code cache file round-trips") {
    PairwiseCode code = search_code_short(2, 4, Rational::of(1, 10), 3, 256);
    std::ostringstream os;
    serialize_code(code, os);
    std::istringstream is(os.str());
    PairwiseCode back = parse_code(is);
    REQUIRE(back.words == code.words);
    REQUIRE(back.q == code.q);
    REQUIRE(rational_eq(back.epsilon, code.epsilon));
}

TEST_CASE("exhausted search reports attempts and best deviation") {
    // tight epsilon at a forced short length cannot verify; the error must
    // surface with accounting rather than degrade silently
    try {
        search_code(2, 8, Rational::of(1, 1000000), 1, /*budget=*/4, /*length_override=*/64);
        FAIL("expected CodeSearchError");
    } catch (const CodeSearchError& e) {
        REQUIRE(e.attempts == 4);
        REQUIRE(e.best_deviation.num > 0);
        REQUIRE(std::string(e.what()).find("best deviation") != std::string::npos);
    }
}
