#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uwin/circuit.hpp"

namespace uwin {

/// Rewrite into And/Not normal form:
///   - gates 0..n-1 are the Copy-gates Input(0)..Input(n-1), and inputs are
///     referenced only through them;
///   - every later gate is And or Not;
///   - Or is replaced via De Morgan, constants are folded away;
///   - no And has identical sources (the right source is duplicated through
///     a double Not).
/// Semantics are preserved on every input. Already-normal circuits come back
/// structurally unchanged.
inline Circuit normalize_and_not(const Circuit& c) {
    c.validate();
    const int n = c.input_count;

    Circuit out;
    out.name = c.name;
    out.input_count = n;
    for (int i = 0; i < n; ++i) out.gates.push_back(Gate::input(i));

    auto emit = [&](Gate g) {
        out.gates.push_back(g);
        return static_cast<std::int32_t>(out.gates.size() - 1);
    };
    auto emit_not = [&](std::int32_t a) { return emit(Gate::not_of(a)); };
    auto emit_and = [&](std::int32_t a, std::int32_t b) {
        if (a == b) b = emit_not(emit_not(b));
        return emit(Gate::and_of(a, b));
    };

    // lazily materialized constant wires (built from copy-gate 0; n >= 1)
    std::optional<std::int32_t> const0, const1;
    auto wire_const = [&](int bit) {
        if (!const0) {
            std::int32_t n0 = emit_not(0);
            const0 = emit(Gate::and_of(0, n0));
            const1 = emit_not(*const0);
        }
        return bit ? *const1 : *const0;
    };

    // per-gate: either a known constant or a wire in `out`
    struct Val {
        std::int8_t konst = -1;
        std::int32_t wire = -1;
    };
    std::vector<Val> map(c.gates.size());
    auto materialize = [&](const Val& v) { return v.konst >= 0 ? wire_const(v.konst) : v.wire; };

    for (size_t j = 0; j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        Val v;
        switch (g.kind) {
        case GateKind::Input:
            v.wire = g.a; // the copy-gate
            break;
        case GateKind::Const:
            v.konst = static_cast<std::int8_t>(g.a);
            break;
        case GateKind::Not: {
            Val a = map[static_cast<size_t>(g.a)];
            if (a.konst >= 0)
                v.konst = static_cast<std::int8_t>(1 - a.konst);
            else
                v.wire = emit_not(a.wire);
            break;
        }
        case GateKind::And: {
            Val a = map[static_cast<size_t>(g.a)], b = map[static_cast<size_t>(g.b)];
            if (a.konst == 0 || b.konst == 0) {
                v.konst = 0;
            } else if (a.konst == 1) {
                v = b;
            } else if (b.konst == 1) {
                v = a;
            } else {
                v.wire = emit_and(a.wire, b.wire);
            }
            break;
        }
        case GateKind::Or: {
            Val a = map[static_cast<size_t>(g.a)], b = map[static_cast<size_t>(g.b)];
            if (a.konst == 1 || b.konst == 1) {
                v.konst = 1;
            } else if (a.konst == 0) {
                v = b;
            } else if (b.konst == 0) {
                v = a;
            } else {
                // a | b = ~(~a & ~b)
                v.wire = emit_not(emit_and(emit_not(a.wire), emit_not(b.wire)));
            }
            break;
        }
        }
        map[j] = v;
    }

    for (std::int32_t o : c.outputs) out.outputs.push_back(materialize(map[static_cast<size_t>(o)]));
    out.validate();
    return out;
}

/// True iff the circuit satisfies the normal form above.
inline bool is_normalized(const Circuit& c) {
    const int n = c.input_count;
    if (c.gate_count() < n) return false;
    for (int i = 0; i < n; ++i)
        if (!(c.gates[static_cast<size_t>(i)].kind == GateKind::Input &&
              c.gates[static_cast<size_t>(i)].a == i))
            return false;
    for (size_t j = static_cast<size_t>(n); j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        if (g.kind != GateKind::Not && g.kind != GateKind::And) return false;
        if (g.kind == GateKind::And && g.a == g.b) return false;
    }
    return true;
}

} // namespace uwin
