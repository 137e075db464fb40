#pragma once

#include <cstdint>

#include "uwin/blocks.hpp"
#include "uwin/brute.hpp"
#include "uwin/pairwise_code.hpp"
#include "uwin/problems.hpp"

namespace uwin {

/// Per-ordered-pair symbol-pair counts of a code: counts(x,y)[a][b] =
/// #{positions i : word(x)_i = a and word(y)_i = b}. Depends only on the
/// code, so exhaustive instance sweeps reuse one table.
struct CodePairCounts {
    int t = 0;
    int q = 0;
    std::vector<std::vector<long>> counts; // [x*t+y][a*q+b]

    static CodePairCounts build(const PairwiseCode& code) {
        CodePairCounts out;
        out.t = code.word_count();
        out.q = code.q;
        out.counts.assign(static_cast<size_t>(out.t) * out.t,
                          std::vector<long>(static_cast<size_t>(out.q) * out.q, 0));
        for (int x = 0; x < out.t; ++x)
            for (int y = 0; y < out.t; ++y) {
                auto& cell = out.counts[static_cast<size_t>(x) * out.t + y];
                const auto& wx = code.words[static_cast<size_t>(x)];
                const auto& wy = code.words[static_cast<size_t>(y)];
                for (int i = 0; i < code.word_length; ++i)
                    ++cell[static_cast<size_t>(wx[static_cast<size_t>(i)]) * out.q +
                           wy[static_cast<size_t>(i)]];
            }
        return out;
    }
};

/// Majority margin of the code-composed voter family, computed through the
/// pair counts: sum over (a,b) of counts(x,y)[a][b] * sgn(C_a(x) - C_b(y)).
/// Equals the voter-by-voter margin of the built instance by construction.
inline long code_margin(const std::vector<std::vector<std::uint64_t>>& faces,
                        const CodePairCounts& pc, std::uint64_t x, std::uint64_t y) {
    long margin = 0;
    const auto& cell = pc.counts[static_cast<size_t>(x) * pc.t + y];
    for (int a = 0; a < pc.q; ++a)
        for (int b = 0; b < pc.q; ++b) {
            int s = detail::sgn64(faces[static_cast<size_t>(a)][x], faces[static_cast<size_t>(b)][y]);
            margin += s * cell[static_cast<size_t>(a) * pc.q + b];
        }
    return margin;
}

/// Derandomized dice-to-Condorcet construction. Voter i of the output reads
/// die x's face picked by the i-th symbol of the x-th code word:
/// C'_i(x) = C_{S(x)_i}(x), realized as a label-keyed lookup over the m
/// embedded face circuits. A verified epsilon-pairwise code with
/// epsilon < 1/(2 m^4) guarantees every decided dice match carries over to
/// the majority vote. The input must already be tie-free; when the label
/// space fits the budget this is checked by enumeration.
inline CondorcetInstance build_condorcet_from_dice(const DiceInstance& inst,
                                                   const PairwiseCode& code,
                                                   const BruteOptions& opts = {}) {
    inst.validate();
    if (!inst.strict)
        throw ValidationError("build_condorcet_from_dice: input must be the strict flavor");
    const int n = inst.label_bits();
    const int m = static_cast<int>(inst.circuits.size());
    if (!code.verified || verify_code(code).ok == false)
        throw ValidationError("build_condorcet_from_dice: code must be verified");
    if (code.q != m) throw ValidationError("build_condorcet_from_dice: code alphabet must be m");
    if (code.word_count() != (1 << n))
        throw ValidationError("build_condorcet_from_dice: code needs 2^n words");
    // epsilon < 1/(2 m^4)
    std::int64_t m4 = 2 * static_cast<std::int64_t>(m) * m * m * m;
    if (!(code.epsilon < Rational::of(1, m4)))
        throw ValidationError("build_condorcet_from_dice: epsilon must be below 1/(2 m^4)");

    if (n <= opts.block_budget_bits) {
        auto faces = detail::value_matrix(inst.circuits, n, opts);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
            for (std::uint64_t y = x + 1; y < (std::uint64_t{1} << n); ++y)
                if (dice_margin(faces, x, y) == 0)
                    throw ValidationError("build_condorcet_from_dice: instance has a tie; "
                                          "de-tie it first");
    }

    CondorcetInstance out;
    out.circuits.reserve(static_cast<size_t>(code.word_length));
    for (int i = 0; i < code.word_length; ++i) {
        CircuitBuilder b(n, "w" + std::to_string(i));
        Word x = b.inputs(0, n);
        std::vector<Word> embedded;
        embedded.reserve(static_cast<size_t>(m));
        for (const Circuit& c : inst.circuits) embedded.push_back(b.embed(c, x));
        std::vector<Word> leaves(size_t{1} << n);
        for (std::uint64_t lab = 0; lab < (std::uint64_t{1} << n); ++lab)
            leaves[lab] = embedded[code.word(lab)[static_cast<size_t>(i)]];
        b.set_outputs(b.select(x, leaves));
        out.circuits.push_back(b.build());
    }
    out.validate();
    return out;
}

} // namespace uwin
