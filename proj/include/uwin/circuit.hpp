#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwin/bitstring.hpp"
#include "uwin/error.hpp"

namespace uwin {

enum class GateKind : std::uint8_t { Input, Const, Not, And, Or };

struct Gate {
    GateKind kind;
    std::int32_t a = 0; // input index (Input), bit (Const), or source gate
    std::int32_t b = 0; // second source gate (And/Or)

    static Gate input(int index) { return {GateKind::Input, index, 0}; }
    static Gate constant(int bit) { return {GateKind::Const, bit, 0}; }
    static Gate not_of(int src) { return {GateKind::Not, src, 0}; }
    static Gate and_of(int l, int r) { return {GateKind::And, l, r}; }
    static Gate or_of(int l, int r) { return {GateKind::Or, l, r}; }

    bool operator==(const Gate& o) const { return kind == o.kind && a == o.a && b == o.b; }
};

/// Combinational boolean circuit: a topologically ordered gate list plus an
/// ordered list of output gates (most significant first). Immutable in use;
/// every operation on circuits is a pure function.
struct Circuit {
    std::string name = "c";
    int input_count = 0;
    std::vector<Gate> gates;
    std::vector<std::int32_t> outputs;

    int output_count() const { return static_cast<int>(outputs.size()); }
    int gate_count() const { return static_cast<int>(gates.size()); }

    bool operator==(const Circuit& o) const {
        return input_count == o.input_count && gates == o.gates && outputs == o.outputs;
    }

    /// Check topological order and index ranges. Throws on violation.
    void validate() const {
        if (input_count < 0) throw ValidationError(name + ": negative input count");
        for (size_t j = 0; j < gates.size(); ++j) {
            const Gate& g = gates[j];
            switch (g.kind) {
            case GateKind::Input:
                if (g.a < 0 || g.a >= input_count)
                    throw ValidationError(name + ": input index out of range");
                break;
            case GateKind::Const:
                if (g.a != 0 && g.a != 1) throw ValidationError(name + ": bad constant");
                break;
            case GateKind::Not:
                check_src(j, g.a);
                break;
            case GateKind::And:
            case GateKind::Or:
                check_src(j, g.a);
                check_src(j, g.b);
                break;
            }
        }
        if (outputs.empty()) throw ValidationError(name + ": circuit must declare outputs");
        for (std::int32_t o : outputs)
            if (o < 0 || o >= gate_count())
                throw ValidationError(name + ": output index out of range");
    }

    /// Evaluate all gates into `scratch` (resized as needed) and return the
    /// output word. The scratch overload keeps bulk enumeration free of
    /// per-call allocations.
    void eval_gates(const std::vector<std::uint8_t>& input, std::vector<std::uint8_t>& scratch) const {
        if (static_cast<int>(input.size()) != input_count)
            throw ValidationError(name + ": eval width mismatch");
        scratch.resize(gates.size());
        for (size_t j = 0; j < gates.size(); ++j) {
            const Gate& g = gates[j];
            switch (g.kind) {
            case GateKind::Input: scratch[j] = input[static_cast<size_t>(g.a)]; break;
            case GateKind::Const: scratch[j] = static_cast<std::uint8_t>(g.a); break;
            case GateKind::Not: scratch[j] = scratch[static_cast<size_t>(g.a)] ^ 1u; break;
            case GateKind::And:
                scratch[j] = scratch[static_cast<size_t>(g.a)] & scratch[static_cast<size_t>(g.b)];
                break;
            case GateKind::Or:
                scratch[j] = scratch[static_cast<size_t>(g.a)] | scratch[static_cast<size_t>(g.b)];
                break;
            }
        }
    }

    BitString eval(const BitString& input) const {
        std::vector<std::uint8_t> scratch;
        return eval(input, scratch);
    }

    BitString eval(const BitString& input, std::vector<std::uint8_t>& scratch) const {
        eval_gates(input.bits(), scratch);
        std::vector<std::uint8_t> out(outputs.size());
        for (size_t k = 0; k < outputs.size(); ++k)
            out[k] = scratch[static_cast<size_t>(outputs[k])];
        return BitString(std::move(out));
    }

    /// Output interpreted as an unsigned number; requires <= 64 output bits.
    std::uint64_t eval_value(const BitString& input, std::vector<std::uint8_t>& scratch) const {
        eval_gates(input.bits(), scratch);
        std::uint64_t v = 0;
        for (std::int32_t o : outputs) v = (v << 1) | scratch[static_cast<size_t>(o)];
        return v;
    }

    std::uint64_t eval_value(std::uint64_t input_value, std::vector<std::uint8_t>& scratch) const {
        return eval_value(BitString::from_value(input_value, input_count), scratch);
    }

private:
    void check_src(size_t j, std::int32_t src) const {
        if (src < 0 || static_cast<size_t>(src) >= j)
            throw ValidationError(name + ": non-topological source");
    }
};

} // namespace uwin
