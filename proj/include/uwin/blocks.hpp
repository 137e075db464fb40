#pragma once

#include <cstdint>
#include <vector>

#include "uwin/builder.hpp"

namespace uwin {

/// Stock combinational blocks. Words are unsigned, MSB first; gate counts
/// are polynomial in the width.
enum class BlockKind { EQ, LT, LEQ, ADD, MUX, CONST, SGN_SUM, SGN_SUM_GEQ };

struct BlockParams {
    int width = 0;     // operand width (EQ/LT/LEQ/ADD/MUX/CONST)
    int selectors = 0; // MUX select bits
    int count = 0;     // SGN_SUM tally size
    std::uint64_t value = 0; // CONST payload
};

/// EQ/LT/LEQ(w): 2w inputs -> 1 output comparing two w-bit operands.
/// ADD(w): 2w inputs -> w+1 outputs.
/// MUX(w, s): s select bits then 2^s operands of width w -> w outputs.
/// CONST(v, w): one ignored input -> w-bit constant (inputless circuits are
/// not representable, so the block takes a dummy bit).
/// SGN_SUM(c): c positive then c negative indicator bits -> 1 iff the signed
/// tally is > 0; SGN_SUM_GEQ is the >= 0 variant.
inline Circuit synth(BlockKind kind, const BlockParams& p) {
    switch (kind) {
    case BlockKind::EQ:
    case BlockKind::LT:
    case BlockKind::LEQ: {
        if (p.width < 1) throw ValidationError("synth: zero width");
        CircuitBuilder b(2 * p.width, "cmp");
        Word x = b.inputs(0, p.width), y = b.inputs(p.width, p.width);
        Wire out = kind == BlockKind::EQ ? b.eq(x, y)
                 : kind == BlockKind::LT ? b.lt(x, y)
                                         : b.leq(x, y);
        b.set_outputs({out});
        return b.build();
    }
    case BlockKind::ADD: {
        if (p.width < 1) throw ValidationError("synth: zero width");
        CircuitBuilder b(2 * p.width, "add");
        b.set_outputs(b.add(b.inputs(0, p.width), b.inputs(p.width, p.width)));
        return b.build();
    }
    case BlockKind::MUX: {
        if (p.width < 1 || p.selectors < 1) throw ValidationError("synth: zero width");
        CircuitBuilder b(p.selectors + (1 << p.selectors) * p.width, "mux");
        Word key = b.inputs(0, p.selectors);
        std::vector<Word> leaves;
        for (int i = 0; i < (1 << p.selectors); ++i)
            leaves.push_back(b.inputs(p.selectors + i * p.width, p.width));
        b.set_outputs(b.select(key, leaves));
        return b.build();
    }
    case BlockKind::CONST: {
        if (p.width < 1) throw ValidationError("synth: zero width");
        CircuitBuilder b(1, "const");
        b.set_outputs(b.const_word(p.value, p.width));
        return b.build();
    }
    case BlockKind::SGN_SUM:
    case BlockKind::SGN_SUM_GEQ: {
        if (p.count < 1) throw ValidationError("synth: zero width");
        CircuitBuilder b(2 * p.count, "sgnsum");
        Word pos = b.inputs(0, p.count), neg = b.inputs(p.count, p.count);
        b.set_outputs({b.sgn_sum_positive(pos, neg, kind == BlockKind::SGN_SUM)});
        return b.build();
    }
    }
    throw ValidationError("synth: unknown block");
}

/// Lookup circuit over all 2^n inputs; rows[v] is the output for input v.
/// The staple for fixtures and exhaustive semantic sweeps.
inline Circuit table_circuit(int input_width, int output_width,
                             const std::vector<std::uint64_t>& rows,
                             std::string name = "table") {
    if (input_width < 1 || output_width < 1) throw ValidationError("table_circuit: zero width");
    CircuitBuilder b(input_width, std::move(name));
    Word key = b.inputs(0, input_width);
    b.set_outputs(b.table(key, rows, output_width));
    return b.build();
}

/// Circuit computing a constant everywhere (n inputs ignored).
inline Circuit constant_circuit(int input_width, int output_width, std::uint64_t value,
                                std::string name = "zero") {
    CircuitBuilder b(input_width, std::move(name));
    b.set_outputs(b.const_word(value, output_width));
    return b.build();
}

/// Identity: outputs equal inputs.
inline Circuit identity_circuit(int width, std::string name = "id") {
    CircuitBuilder b(width, std::move(name));
    b.set_outputs(b.inputs(0, width));
    return b.build();
}

} // namespace uwin
