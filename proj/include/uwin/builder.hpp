#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "uwin/circuit.hpp"

namespace uwin {

using Wire = std::int32_t;
using Word = std::vector<Wire>; // MSB first, like circuit outputs

/// Incremental circuit construction. Wires are gate indices; words are
/// MSB-first wire vectors so they compose directly with BitString values.
class CircuitBuilder {
public:
    explicit CircuitBuilder(int input_count, std::string name = "c") {
        c_.name = std::move(name);
        c_.input_count = input_count;
    }

    Wire input(int i) { return emit(Gate::input(i)); }

    /// Wires for input bits [from, from+len), MSB first.
    Word inputs(int from, int len) {
        Word w(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) w[static_cast<size_t>(i)] = input(from + i);
        return w;
    }

    Wire constant(int bit) { return emit(Gate::constant(bit)); }

    Word const_word(std::uint64_t value, int width) {
        Word w(static_cast<size_t>(width));
        for (int i = 0; i < width; ++i)
            w[static_cast<size_t>(i)] = constant(static_cast<int>((value >> (width - 1 - i)) & 1u));
        return w;
    }

    Wire not_(Wire a) { return emit(Gate::not_of(a)); }
    Wire and_(Wire a, Wire b) { return emit(Gate::and_of(a, b)); }
    Wire or_(Wire a, Wire b) { return emit(Gate::or_of(a, b)); }
    Wire xor_(Wire a, Wire b) { return or_(and_(a, not_(b)), and_(not_(a), b)); }
    Wire xnor_(Wire a, Wire b) { return not_(xor_(a, b)); }
    Wire implies(Wire a, Wire b) { return or_(not_(a), b); }

    Wire and_all(const Word& ws) { return fold(ws, /*is_and=*/true); }
    Wire or_all(const Word& ws) { return fold(ws, /*is_and=*/false); }

    Word not_word(const Word& a) {
        Word r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = not_(a[i]);
        return r;
    }

    /// a == b, bitwise over equal-width words.
    Wire eq(const Word& a, const Word& b) {
        require_same(a, b);
        Word bits(a.size());
        for (size_t i = 0; i < a.size(); ++i) bits[i] = xnor_(a[i], b[i]);
        return and_all(bits);
    }

    Wire ne(const Word& a, const Word& b) { return not_(eq(a, b)); }

    /// a < b as unsigned numbers (MSB-first ripple comparator).
    Wire lt(const Word& a, const Word& b) {
        require_same(a, b);
        // scan from MSB: lt = (a_i < b_i) at the first differing bit
        Wire result = constant(0);
        Wire all_eq_so_far = constant(1);
        for (size_t i = 0; i < a.size(); ++i) {
            Wire bit_lt = and_(not_(a[i]), b[i]);
            result = or_(result, and_(all_eq_so_far, bit_lt));
            all_eq_so_far = and_(all_eq_so_far, xnor_(a[i], b[i]));
        }
        return result;
    }

    Wire gt(const Word& a, const Word& b) { return lt(b, a); }
    Wire leq(const Word& a, const Word& b) { return not_(lt(b, a)); }
    Wire geq(const Word& a, const Word& b) { return not_(lt(a, b)); }

    /// a + b, width w in, w+1 out (carry in the MSB).
    Word add(const Word& a, const Word& b) {
        require_same(a, b);
        int w = static_cast<int>(a.size());
        Word out(static_cast<size_t>(w) + 1);
        Wire carry = constant(0);
        for (int i = w - 1; i >= 0; --i) {
            Wire ai = a[static_cast<size_t>(i)], bi = b[static_cast<size_t>(i)];
            Wire s = xor_(xor_(ai, bi), carry);
            carry = or_(and_(ai, bi), and_(carry, xor_(ai, bi)));
            out[static_cast<size_t>(i) + 1] = s;
        }
        out[0] = carry;
        return out;
    }

    /// a - b for a >= b (callers guarantee); same width as inputs.
    Word sub(const Word& a, const Word& b) {
        require_same(a, b);
        int w = static_cast<int>(a.size());
        Word out(static_cast<size_t>(w));
        Wire borrow = constant(0);
        for (int i = w - 1; i >= 0; --i) {
            Wire ai = a[static_cast<size_t>(i)], bi = b[static_cast<size_t>(i)];
            Wire d = xor_(xor_(ai, bi), borrow);
            borrow = or_(and_(not_(ai), bi), and_(borrow, not_(xor_(ai, bi))));
            out[static_cast<size_t>(i)] = d;
        }
        return out;
    }

    /// sel ? t : f on single wires.
    Wire mux1(Wire sel, Wire t, Wire f) {
        return or_(and_(sel, t), and_(not_(sel), f));
    }

    /// sel ? t : f, bitwise over equal-width words.
    Word mux(Wire sel, const Word& t, const Word& f) {
        require_same(t, f);
        Word out(t.size());
        for (size_t i = 0; i < t.size(); ++i)
            out[i] = or_(and_(sel, t[i]), and_(not_(sel), f[i]));
        return out;
    }

    /// Zero-extend to `width` bits (prepend constant zeros).
    Word zext(const Word& a, int width) {
        if (static_cast<int>(a.size()) > width)
            throw ValidationError("builder: zext target narrower than word");
        Word out;
        out.reserve(static_cast<size_t>(width));
        for (int i = 0; i < width - static_cast<int>(a.size()); ++i) out.push_back(constant(0));
        out.insert(out.end(), a.begin(), a.end());
        return out;
    }

    /// Splice another circuit's gates in, reading its inputs from `in`.
    /// Returns the embedded output wires.
    Word embed(const Circuit& sub, const Word& in) {
        if (static_cast<int>(in.size()) != sub.input_count)
            throw ValidationError("builder: embed input width mismatch");
        std::vector<Wire> map(sub.gates.size());
        for (size_t j = 0; j < sub.gates.size(); ++j) {
            const Gate& g = sub.gates[j];
            switch (g.kind) {
            case GateKind::Input: map[j] = in[static_cast<size_t>(g.a)]; break;
            case GateKind::Const: map[j] = constant(g.a); break;
            case GateKind::Not: map[j] = not_(map[static_cast<size_t>(g.a)]); break;
            case GateKind::And:
                map[j] = and_(map[static_cast<size_t>(g.a)], map[static_cast<size_t>(g.b)]);
                break;
            case GateKind::Or:
                map[j] = or_(map[static_cast<size_t>(g.a)], map[static_cast<size_t>(g.b)]);
                break;
            }
        }
        Word out(sub.outputs.size());
        for (size_t k = 0; k < sub.outputs.size(); ++k)
            out[k] = map[static_cast<size_t>(sub.outputs[k])];
        return out;
    }

    /// Table lookup: key selects among 2^key.size() constant rows.
    Word table(const Word& key, const std::vector<std::uint64_t>& rows, int out_width) {
        if (rows.size() != (size_t{1} << key.size()))
            throw ValidationError("builder: table size must be 2^key bits");
        std::vector<Word> leaves(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) leaves[r] = const_word(rows[r], out_width);
        return mux_tree(key, leaves);
    }

    /// Generalized lookup over precomputed words.
    Word select(const Word& key, const std::vector<Word>& leaves) { return mux_tree(key, leaves); }

    /// Count of set bits, as a ceil(log2(n+1))-bit word.
    Word popcount(const Word& bits) {
        if (bits.empty()) return {constant(0)};
        std::vector<Word> sums;
        sums.reserve(bits.size());
        for (Wire w : bits) sums.push_back(Word{w});
        // pairwise adder tree
        while (sums.size() > 1) {
            std::vector<Word> next;
            for (size_t i = 0; i + 1 < sums.size(); i += 2) {
                int w = static_cast<int>(std::max(sums[i].size(), sums[i + 1].size()));
                next.push_back(add(zext(sums[i], w), zext(sums[i + 1], w)));
            }
            if (sums.size() % 2 == 1) next.push_back(sums.back());
            sums = std::move(next);
        }
        return sums[0];
    }

    /// Signed tally over indicator pairs: 1 iff popcount(pos) > popcount(neg)
    /// (or >= with `strict` false).
    Wire sgn_sum_positive(const Word& pos, const Word& neg, bool strict = true) {
        Word p = popcount(pos), n = popcount(neg);
        int w = static_cast<int>(std::max(p.size(), n.size()));
        p = zext(p, w);
        n = zext(n, w);
        return strict ? gt(p, n) : geq(p, n);
    }

    void set_outputs(Word ws) { c_.outputs.assign(ws.begin(), ws.end()); }

    Circuit build() {
        Circuit out = c_;
        out.validate();
        return out;
    }

    int gate_count() const { return c_.gate_count(); }

private:
    Wire emit(Gate g) {
        c_.gates.push_back(g);
        return static_cast<Wire>(c_.gates.size() - 1);
    }

    Wire fold(const Word& ws, bool is_and) {
        if (ws.empty()) return constant(is_and ? 1 : 0);
        Wire acc = ws[0];
        for (size_t i = 1; i < ws.size(); ++i) acc = is_and ? and_(acc, ws[i]) : or_(acc, ws[i]);
        return acc;
    }

    Word mux_tree(const Word& key, const std::vector<Word>& leaves) {
        if (leaves.size() != (size_t{1} << key.size()))
            throw ValidationError("builder: leaf count must be 2^key bits");
        std::vector<Word> layer = leaves;
        // consume select bits LSB-side first so leaf order matches key value
        for (size_t level = key.size(); level-- > 0;) {
            Wire sel = key[level];
            std::vector<Word> next(layer.size() / 2);
            for (size_t i = 0; i < next.size(); ++i)
                next[i] = mux(sel, layer[2 * i + 1], layer[2 * i]);
            layer = std::move(next);
        }
        return layer[0];
    }

    static void require_same(const Word& a, const Word& b) {
        if (a.size() != b.size()) throw ValidationError("builder: width mismatch");
    }

    Circuit c_;
};

} // namespace uwin
