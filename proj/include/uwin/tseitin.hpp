#pragma once

#include <vector>

#include "uwin/blocks.hpp"
#include "uwin/circuit.hpp"
#include "uwin/cnf.hpp"

namespace uwin {

/// Constraints on one circuit's output word, all conjoined.
struct OutputCondition {
    enum class Rel { Eq, Ge, Le, Ne, Bit };
    struct Term {
        Rel rel;
        BitString value;     // Eq/Ge/Le/Ne operand (must match output width)
        int bit_index = 0;   // Bit
        int bit_value = 0;   // Bit
    };
    std::vector<Term> terms;

    static OutputCondition equals(BitString v) { return {{{Rel::Eq, std::move(v), 0, 0}}}; }
    static OutputCondition at_least(BitString v) { return {{{Rel::Ge, std::move(v), 0, 0}}}; }
    static OutputCondition at_most(BitString v) { return {{{Rel::Le, std::move(v), 0, 0}}}; }
    static OutputCondition differs(BitString v) { return {{{Rel::Ne, std::move(v), 0, 0}}}; }
    static OutputCondition bit(int index, int value) {
        return {{{Rel::Bit, BitString::zeros(1), index, value}}};
    }
    OutputCondition& and_also(OutputCondition other) {
        for (auto& t : other.terms) terms.push_back(std::move(t));
        return *this;
    }
};

/// Constraints between input slices (or a slice and a constant).
struct InputConstraint {
    enum class Kind { SliceEq, SliceNe, SlicesEq, SlicesNe };
    Kind kind;
    int from_a = 0;
    int from_b = 0; // SlicesEq/SlicesNe
    BitString value = BitString::zeros(1); // SliceEq/SliceNe; also fixes length

    static InputConstraint slice_eq(int from, BitString v) {
        return {Kind::SliceEq, from, 0, std::move(v)};
    }
    static InputConstraint slice_ne(int from, BitString v) {
        return {Kind::SliceNe, from, 0, std::move(v)};
    }
    static InputConstraint slices_eq(int from_a, int from_b, int len) {
        return {Kind::SlicesEq, from_a, from_b, BitString::zeros(len)};
    }
    static InputConstraint slices_ne(int from_a, int from_b, int len) {
        return {Kind::SlicesNe, from_a, from_b, BitString::zeros(len)};
    }
};

/// Gate-per-variable Tseitin encoder over a shared input vector. Comparison
/// conditions are realized by instantiating the comparator blocks from
/// blocks.hpp on top of the encoded output literals.
class CnfEncoder {
public:
    explicit CnfEncoder(int input_width) {
        true_var_ = f_.new_var();
        f_.add_clause({true_var_});
        for (int i = 0; i < input_width; ++i) f_.input_vars.push_back(f_.new_var());
    }

    int lit_const(bool b) const { return b ? true_var_ : -true_var_; }
    int input_lit(int i) const { return f_.input_vars[static_cast<size_t>(i)]; }

    std::vector<int> input_lits(int from, int len) const {
        std::vector<int> out(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) out[static_cast<size_t>(i)] = input_lit(from + i);
        return out;
    }

    std::vector<int> const_lits(const BitString& v) const {
        std::vector<int> out(static_cast<size_t>(v.width()));
        for (int i = 0; i < v.width(); ++i) out[static_cast<size_t>(i)] = lit_const(v.bit(i) != 0);
        return out;
    }

    /// Encode a circuit's gates over the given input literals; returns the
    /// output literals. Input gates reuse the given literals directly.
    std::vector<int> instantiate(const Circuit& c, const std::vector<int>& in_lits) {
        if (static_cast<int>(in_lits.size()) != c.input_count)
            throw ValidationError("tseitin: instantiate width mismatch");
        std::vector<int> lit(c.gates.size());
        for (size_t j = 0; j < c.gates.size(); ++j) {
            const Gate& g = c.gates[j];
            switch (g.kind) {
            case GateKind::Input: lit[j] = in_lits[static_cast<size_t>(g.a)]; break;
            case GateKind::Const: lit[j] = lit_const(g.a != 0); break;
            case GateKind::Not: lit[j] = -lit[static_cast<size_t>(g.a)]; break;
            case GateKind::And: {
                int z = f_.new_var();
                int a = lit[static_cast<size_t>(g.a)], b = lit[static_cast<size_t>(g.b)];
                f_.add_clause({-z, a});
                f_.add_clause({-z, b});
                f_.add_clause({z, -a, -b});
                lit[j] = z;
                break;
            }
            case GateKind::Or: {
                int z = f_.new_var();
                int a = lit[static_cast<size_t>(g.a)], b = lit[static_cast<size_t>(g.b)];
                f_.add_clause({z, -a});
                f_.add_clause({z, -b});
                f_.add_clause({-z, a, b});
                lit[j] = z;
                break;
            }
            }
        }
        std::vector<int> out(c.outputs.size());
        for (size_t k = 0; k < c.outputs.size(); ++k)
            out[k] = lit[static_cast<size_t>(c.outputs[k])];
        return out;
    }

    void assert_lit(int l) { f_.add_clause({l}); }

    /// Assert a comparison between two literal words via a comparator block.
    void assert_compare(BlockKind cmp, const std::vector<int>& a, const std::vector<int>& b,
                        bool polarity) {
        if (a.size() != b.size()) throw ValidationError("tseitin: compare width mismatch");
        BlockParams p;
        p.width = static_cast<int>(a.size());
        Circuit block = synth(cmp, p);
        std::vector<int> in = a;
        in.insert(in.end(), b.begin(), b.end());
        std::vector<int> out = instantiate(block, in);
        assert_lit(polarity ? out[0] : -out[0]);
    }

    void apply(const OutputCondition& cond, const std::vector<int>& out_lits) {
        for (const auto& t : cond.terms) {
            switch (t.rel) {
            case OutputCondition::Rel::Bit:
                if (t.bit_index < 0 || t.bit_index >= static_cast<int>(out_lits.size()))
                    throw ValidationError("tseitin: condition bit index out of range");
                assert_lit(t.bit_value ? out_lits[static_cast<size_t>(t.bit_index)]
                                       : -out_lits[static_cast<size_t>(t.bit_index)]);
                break;
            case OutputCondition::Rel::Eq:
            case OutputCondition::Rel::Ne:
                check_width(t.value, out_lits);
                assert_compare(BlockKind::EQ, out_lits, const_lits(t.value),
                               t.rel == OutputCondition::Rel::Eq);
                break;
            case OutputCondition::Rel::Ge:
                check_width(t.value, out_lits);
                // out >= c  <=>  !(out < c)
                assert_compare(BlockKind::LT, out_lits, const_lits(t.value), false);
                break;
            case OutputCondition::Rel::Le:
                check_width(t.value, out_lits);
                assert_compare(BlockKind::LEQ, out_lits, const_lits(t.value), true);
                break;
            }
        }
    }

    void apply(const InputConstraint& ic) {
        int len = ic.value.width();
        switch (ic.kind) {
        case InputConstraint::Kind::SliceEq:
            for (int i = 0; i < len; ++i)
                assert_lit(ic.value.bit(i) ? input_lit(ic.from_a + i) : -input_lit(ic.from_a + i));
            break;
        case InputConstraint::Kind::SliceNe:
            assert_compare(BlockKind::EQ, input_lits(ic.from_a, len), const_lits(ic.value), false);
            break;
        case InputConstraint::Kind::SlicesEq:
            assert_compare(BlockKind::EQ, input_lits(ic.from_a, len), input_lits(ic.from_b, len),
                           true);
            break;
        case InputConstraint::Kind::SlicesNe:
            assert_compare(BlockKind::EQ, input_lits(ic.from_a, len), input_lits(ic.from_b, len),
                           false);
            break;
        }
    }

    CnfFormula take() { return std::move(f_); }

private:
    static void check_width(const BitString& v, const std::vector<int>& out_lits) {
        if (v.width() != static_cast<int>(out_lits.size()))
            throw ValidationError("tseitin: constant width mismatch with output width");
    }

    CnfFormula f_;
    int true_var_;
};

/// CNF satisfiable iff some input makes the circuit's output meet `cond`.
inline CnfFormula tseitin(const Circuit& c, const OutputCondition& cond,
                          const std::vector<InputConstraint>& input_constraints = {}) {
    CnfEncoder enc(c.input_count);
    std::vector<int> out = enc.instantiate(c, enc.input_lits(0, c.input_count));
    enc.apply(cond, out);
    for (const auto& ic : input_constraints) enc.apply(ic);
    return enc.take();
}

/// Several circuits over one shared input vector, conditions conjoined.
struct CircuitCondition {
    const Circuit* circuit;
    OutputCondition cond;
};

inline CnfFormula tseitin_multi(int input_width, const std::vector<CircuitCondition>& parts,
                                const std::vector<InputConstraint>& input_constraints = {}) {
    CnfEncoder enc(input_width);
    for (const auto& part : parts) {
        if (part.circuit->input_count != input_width)
            throw ValidationError("tseitin: embedded circuit width mismatch");
        std::vector<int> out = enc.instantiate(*part.circuit, enc.input_lits(0, input_width));
        enc.apply(part.cond, out);
    }
    for (const auto& ic : input_constraints) enc.apply(ic);
    return enc.take();
}

} // namespace uwin
