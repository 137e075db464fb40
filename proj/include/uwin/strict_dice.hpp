#pragma once

#include <cstdint>

#include "uwin/blocks.hpp"
#include "uwin/problems.hpp"

namespace uwin {

namespace detail {

/// Wire up the double-sgn face tally between two embedded label inputs:
/// indicator pairs (C_i(a) > C_j(b), C_i(a) < C_j(b)) feeding a signed
/// tally block. Returns 1 iff the tally is >= 0 ("a loses or ties").
inline Wire dice_loser_is_first(CircuitBuilder& b, const std::vector<Circuit>& circuits,
                                const Word& a, const Word& b_label, int value_bits) {
    std::vector<Word> va, vb;
    for (const Circuit& c : circuits) {
        va.push_back(b.embed(c, a));
        vb.push_back(b.embed(c, b_label));
    }
    (void)value_bits;
    Word pos, neg;
    for (const Word& fa : va)
        for (const Word& fb : vb) {
            pos.push_back(b.gt(fa, fb));
            neg.push_back(b.lt(fa, fb));
        }
    // sum sgn(C_i(a) - C_j(b)) >= 0  <=>  a is the loser (ties go to a)
    return b.not_(b.sgn_sum_positive(pos, neg, /*strict=*/true));
}

} // namespace detail

/// Tie-killing strictification of a dice instance. The output plays over
/// 2n+2-bit vertices: `00 || 0^n || x` carries original die x, `jk || x || y`
/// with (j,k) != (0,0) is one of three edge-vertices of the pair (x,y), and
/// everything else is invalid (all faces zero). The first 4m circuits repeat
/// each original face four times, reading the original label on originals
/// and the in-circuit dice-loser DL(x,y) on edge-vertices; the last three
/// give originals a flat high face and edge-vertices a three-dice winning
/// cycle on top of it, so edge-vertices can never win while still punishing
/// any pair that tied.
inline DiceInstance build_strict_dice(const DiceInstance& inst) {
    inst.validate();
    if (inst.strict) throw ValidationError("build_strict_dice: input must be the plain flavor");
    const int n = inst.label_bits();
    const int m = static_cast<int>(inst.circuits.size());
    const int w = std::max(inst.value_bits(), 4); // so 2^w + 9 fits in w+1 bits
    const int out_w = w + 1;
    if (2 * n + 2 > 60) throw ValidationError("build_strict_dice: label width overflow");

    DiceInstance out;
    out.strict = true;

    // edge-vertices need two distinct dice: a self-pair would repeat the
    // winner's own faces and then beat it on the cycle faces
    auto classify = [&](CircuitBuilder& b, Word& a, Word& blabel, Wire& is_orig, Wire& is_valid) {
        Word prefix = b.inputs(0, 2);
        a = b.inputs(2, n);
        blabel = b.inputs(2 + n, n);
        Wire prefix_zero = b.and_(b.not_(prefix[0]), b.not_(prefix[1]));
        Wire a_zero = b.eq(a, b.const_word(0, n));
        is_orig = b.and_(prefix_zero, a_zero);
        Wire is_edge = b.and_(b.not_(prefix_zero), b.ne(a, blabel));
        is_valid = b.or_(is_orig, is_edge);
    };

    // first 4m face circuits
    for (int i = 0; i < m; ++i) {
        CircuitBuilder b(2 * n + 2, "s" + std::to_string(i));
        Word a, blabel;
        Wire is_orig, is_valid;
        classify(b, a, blabel, is_orig, is_valid);

        Wire first_loses = detail::dice_loser_is_first(b, inst.circuits, a, blabel, w);
        Word dl = b.mux(first_loses, a, blabel);

        Word on_orig = b.zext(b.embed(inst.circuits[static_cast<size_t>(i)], blabel), out_w);
        Word on_edge = b.zext(b.embed(inst.circuits[static_cast<size_t>(i)], dl), out_w);
        Word value = b.mux(is_orig, on_orig, on_edge);
        b.set_outputs(b.mux(is_valid, value, b.const_word(0, out_w)));
        Circuit c = b.build();
        for (int copy = 0; copy < 4; ++copy) out.circuits.push_back(c);
    }

    // last three: flat 2^w on originals, a winning cycle on edge-vertices
    static const std::uint64_t cycle[3][3] = {{2, 4, 9}, {1, 6, 8}, {3, 5, 7}};
    for (int t = 0; t < 3; ++t) {
        CircuitBuilder b(2 * n + 2, "cyc" + std::to_string(t));
        Word a, blabel;
        Wire is_orig, is_valid;
        classify(b, a, blabel, is_orig, is_valid);
        Word prefix = b.inputs(0, 2);

        std::uint64_t base = std::uint64_t{1} << w;
        Word on_orig = b.const_word(base, out_w);
        // prefix 01 -> row 0, 10 -> row 1, 11 -> row 2
        Word p01 = b.const_word(base + cycle[0][t], out_w);
        Word p10 = b.const_word(base + cycle[1][t], out_w);
        Word p11 = b.const_word(base + cycle[2][t], out_w);
        Word hi = b.mux(prefix[1], p11, p10);  // prefix[0] == 1
        Word on_edge = b.mux(prefix[0], hi, p01);
        Word value = b.mux(is_orig, on_orig, on_edge);
        b.set_outputs(b.mux(is_valid, value, b.const_word(0, out_w)));
        out.circuits.push_back(b.build());
    }
    out.validate();
    return out;
}

/// De-tie a strict instance: duplicate every face circuit and append one
/// high face worth 2^w + x, which breaks any surviving tie toward the
/// numerically larger label while preserving every decided match.
inline DiceInstance detie_strict_dice(const DiceInstance& inst) {
    inst.validate();
    if (!inst.strict) throw ValidationError("detie_strict_dice: input must be strict");
    const int n = inst.label_bits();
    const int w = std::max(inst.value_bits(), n);
    const int out_w = w + 1;

    DiceInstance out;
    out.strict = true;
    for (const Circuit& c : inst.circuits) {
        CircuitBuilder b(n, c.name + "d");
        b.set_outputs(b.zext(b.embed(c, b.inputs(0, n)), out_w));
        Circuit doubled = b.build();
        out.circuits.push_back(doubled);
        out.circuits.push_back(doubled);
    }
    {
        CircuitBuilder b(n, "lex");
        Word x = b.inputs(0, n);
        Word word = b.zext(x, out_w);
        word[0] = b.constant(1); // 2^w + x
        b.set_outputs(word);
        out.circuits.push_back(b.build());
    }
    out.validate();
    return out;
}

} // namespace uwin
