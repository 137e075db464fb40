#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uwin/ashg_reduction.hpp"
#include "uwin/blocks.hpp"
#include "uwin/brute.hpp"
#include "uwin/dice_condorcet.hpp"
#include "uwin/gadgets.hpp"
#include "uwin/strict_dice.hpp"

namespace uwin {

/// Optional knobs for parameterized rows: the padded voter count (R5), the
/// target disqualification threshold (R13), and the seed driving the code
/// search inside R10.
struct ReductionParams {
    int target_m = 0;          // R5: pad to this many voters (default m+1)
    std::uint64_t target_k = 2; // R13: target threshold
    std::uint64_t seed = 1;     // R10 code search
    BruteOptions brute;         // R13 short-circuit and R10 tie precheck
};

struct ReductionKind {
    std::string id;        // registry label, "R1".."R25"
    std::string long_name; // CLI alias
    std::string source;    // problem name (primary direction)
    std::string target;
    std::string description;
    bool has_witness_map;
    bool bidirectional = false;
};

/// The reduction registry. Applying any row to a valid source instance
/// yields a valid target instance with the same brute verdict; rows with a
/// witness map also carry Yes-witnesses forward.
inline const std::vector<ReductionKind>& reduction_registry() {
    static const std::vector<ReductionKind> rows = {
        {"R1", "tournament-to-weak", "TOURNAMENT-SOURCE", "WEAK-TOURNAMENT-SOURCE",
         "anti-symmetrize the edge query with a numeric tie-break", true},
        {"R2", "weak-to-tournament", "WEAK-TOURNAMENT-SOURCE", "TOURNAMENT-SOURCE",
         "structure vertices turn every tie into a 3-cycle", true},
        {"R3", "multi-weak-to-weak", "MULTI-WEAK-TOURNAMENT-SOURCE", "WEAK-TOURNAMENT-SOURCE",
         "fold the third block into doubled labels (either direction)", true, true},
        {"R4", "condorcet-to-weak", "CKT-CONDORCET", "WEAK-TOURNAMENT-SOURCE",
         "majority comparator over the voter circuits", true},
        {"R5", "condorcet-pad", "CKT-CONDORCET", "CKT-CONDORCET",
         "pad with always-zero voters", true},
        {"R6", "graph-dice-to-dice", "GRAPH-DICE", "CKT-DICE",
         "one face circuit per vertex over encoded partitions", true},
        {"R7", "ashg-to-graph-dice", "ASHG-STRONG-POPULARITY", "GRAPH-DICE",
         "self-loops separate the agents' value ranges", true},
        {"R8", "dice-to-strict", "CKT-DICE", "STRICT-CKT-DICE",
         "edge-vertices with a three-dice winning cycle kill ties", true},
        {"R9", "strict-de-tie", "STRICT-CKT-DICE", "STRICT-CKT-DICE",
         "doubled faces plus one high lexicographic face", true},
        {"R10", "strict-to-condorcet", "STRICT-CKT-DICE", "CKT-CONDORCET",
         "pairwise-code composition of face circuits", true},
        {"R11", "edge-majority-balance", "EDGE-MAJORITY", "EDGE-MAJORITY-BALANCED",
         "zero-pad the short side or split labels bit by bit", false},
        {"R12", "balanced-to-k1", "EDGE-MAJORITY-BALANCED", "EDGE-MAJORITY-BALANCED",
         "squash sub-threshold labels to zero", false},
        {"R13", "k1-to-k", "EDGE-MAJORITY-BALANCED", "EDGE-MAJORITY-BALANCED",
         "label copies with reserved spares replacing dead small copies", false},
        {"R14", "set-to-balanced", "EDGE-MAJORITY-SET", "EDGE-MAJORITY-BALANCED",
         "rank-order swap between the explicit set and the low labels", false},
        {"R15", "unsat-to-balanced1", "UNSAT", "EDGE-MAJORITY-BALANCED",
         "the zero string wins exactly when no assignment satisfies", false},
        {"R16", "tsp-to-unique-opt", "TSP-UNIQUE-OPT", "CKT-UNIQUE-OPT",
         "canonical tour encodings score BIG minus length", false},
        {"R17", "unique-opt-to-condorcet2", "CKT-UNIQUE-OPT", "CKT-CONDORCET",
         "append an indifferent always-zero voter", true},
        {"R18", "unique-opt-to-consensus", "CKT-UNIQUE-OPT", "CKT-CONSENSUS",
         "a singleton circuit list is already a consensus instance", true},
        {"R19", "unique-opt-to-strong-dominant", "CKT-UNIQUE-OPT", "STRONG-DOMINANT-STRATEGY",
         "ignore the opponent block", true},
        {"R20", "unique-opt-to-winner-threshold", "CKT-UNIQUE-OPT", "CKT-WINNER-THRESHOLD",
         "pair each value with its preimage and order the pairs", true},
        {"R21", "ea-sat-to-unique-value", "EXISTS-FORALL-SAT", "CKT-UNIQUE-VALUE",
         "paired opponent assignments collapse values unless x always wins", true},
        {"R22", "unique-value-to-pareto", "CKT-UNIQUE-VALUE", "2-CKT-PARETO",
         "complemented outputs make inequality a one-sided win", true},
        {"R23", "ueasat-to-wdom", "UNIQUE-EXISTS-FORALL-SAT", "WDOM-STRATEGY",
         "payoff equals formula value (either direction)", true, true},
        {"R24", "aesat-to-ueasat", "FORALL-EXISTS-SAT", "UNIQUE-EXISTS-FORALL-SAT",
         "guard variable makes all-ones the designated witness", true},
        {"R25", "condorcet-to-ashg", "CKT-CONDORCET", "ASHG-STRONG-POPULARITY",
         "assignment and gate gadgets with voters weighing output bits", true},
    };
    return rows;
}

inline const ReductionKind& reduction_kind(const std::string& id_or_name) {
    for (const ReductionKind& k : reduction_registry())
        if (k.id == id_or_name || k.long_name == id_or_name) return k;
    throw ValidationError("unknown reduction kind '" + id_or_name + "'");
}

// ---------------------------------------------------------------------------
// Individual constructions.

namespace red {

/// R1: strict tournament edge query from a weak one.
inline TournamentInstance tournament_to_weak(const TournamentInstance& in) {
    if (in.flavor != TournamentFlavor::Strict)
        throw ValidationError("R1: source must be TOURNAMENT-SOURCE");
    const int n = in.label_bits();
    CircuitBuilder b(2 * n, "r1");
    Word x = b.inputs(0, n), y = b.inputs(n, n);
    Word yx = y;
    yx.insert(yx.end(), x.begin(), x.end());
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    Wire c1 = b.embed(in.circuit, xy)[0];
    Wire c2 = b.embed(in.circuit, yx)[0];
    Wire beats = b.or_(b.and_(c1, b.not_(c2)), b.and_(b.xnor_(c1, c2), b.gt(x, y)));
    b.set_outputs({beats});
    TournamentInstance out;
    out.circuit = b.build();
    out.flavor = TournamentFlavor::Weak;
    return out;
}

/// R2: weak to strict via structure vertices over doubled labels. A label
/// ab is an original vertex when b = 0, a structure vertex for the pair
/// {a, b} when a < b, and invalid otherwise; ties between originals become
/// 3-cycles through the pair's structure vertex.
inline TournamentInstance weak_to_tournament(const TournamentInstance& in) {
    if (in.flavor != TournamentFlavor::Weak)
        throw ValidationError("R2: source must be WEAK-TOURNAMENT-SOURCE");
    const int n = in.label_bits();
    CircuitBuilder b(4 * n, "r2");
    Word x = b.inputs(0, n), y = b.inputs(n, n);
    Word w = b.inputs(2 * n, n), z = b.inputs(3 * n, n);
    Word zero = b.const_word(0, n);

    auto pair_word = [&](const Word& p, const Word& q) {
        Word r = p;
        r.insert(r.end(), q.begin(), q.end());
        return r;
    };
    Word xy = pair_word(x, y), wz = pair_word(w, z);

    Wire xy_orig = b.eq(y, zero);
    Wire wz_orig = b.eq(z, zero);
    Wire xy_struct = b.lt(x, y);
    Wire wz_struct = b.lt(w, z);
    Wire xy_valid = b.or_(xy_orig, xy_struct);
    Wire wz_valid = b.or_(wz_orig, wz_struct);

    // original x||0 against structure {w,z}: the structure corresponds to x
    // iff x = w or x = z; compare x against the other pair element
    Wire x_is_z = b.eq(x, z), x_is_w = b.eq(x, w);
    Wire xy_corresponds = b.and_(xy_orig, b.and_(wz_struct, b.or_(x_is_z, x_is_w)));
    Word other1 = b.mux(x_is_z, w, z);
    Wire c1a = b.embed(in.circuit, pair_word(x, other1))[0];
    Wire c2a = b.embed(in.circuit, pair_word(other1, x))[0];
    // x = z (x above the partner): win only strictly; x = w: win on ties too
    Wire case5 = b.mux1(x_is_z, b.and_(c1a, b.not_(c2a)), b.or_(c1a, b.not_(c2a)));

    // mirrored: original w||0 against structure {x,y} corresponding to w
    Wire w_is_y = b.eq(w, y), w_is_x = b.eq(w, x);
    Wire wz_corresponds = b.and_(wz_orig, b.and_(xy_struct, b.or_(w_is_y, w_is_x)));
    Word other2 = b.mux(w_is_y, x, y);
    Wire c1b = b.embed(in.circuit, pair_word(w, other2))[0];
    Wire c2b = b.embed(in.circuit, pair_word(other2, w))[0];
    Wire case6 = b.not_(b.mux1(w_is_y, b.and_(c1b, b.not_(c2b)), b.or_(c1b, b.not_(c2b))));

    // both original: the weak edge with a numeric tie-break
    Wire c1c = b.embed(in.circuit, pair_word(x, w))[0];
    Wire c2c = b.embed(in.circuit, pair_word(w, x))[0];
    Wire case7 = b.mux1(b.xnor_(c1c, c2c), b.gt(x, w), c1c);

    Wire bigger = b.gt(xy, wz);

    // priority chain, most specific case first
    Wire out = case7; // both original (the residual case)
    out = b.mux1(b.and_(xy_orig, b.and_(wz_struct, b.not_(xy_corresponds))), b.constant(1), out);
    out = b.mux1(xy_corresponds, case5, out);
    out = b.mux1(b.and_(wz_orig, b.and_(xy_struct, b.not_(wz_corresponds))), b.constant(0), out);
    out = b.mux1(wz_corresponds, case6, out);
    out = b.mux1(b.and_(xy_struct, wz_struct), bigger, out);
    out = b.mux1(b.and_(xy_valid, b.not_(wz_valid)), b.constant(1), out);
    out = b.mux1(b.and_(b.not_(xy_valid), wz_valid), b.constant(0), out);
    out = b.mux1(b.and_(b.not_(xy_valid), b.not_(wz_valid)), bigger, out);
    out = b.mux1(b.eq(xy, wz), b.constant(0), out);

    b.set_outputs({out});
    TournamentInstance t;
    t.circuit = b.build();
    t.flavor = TournamentFlavor::Strict;
    return t;
}

/// R3 forward: three-block to two-block over doubled labels.
inline TournamentInstance multi_weak_to_weak(const TournamentInstance& in) {
    const int n = in.label_bits();
    CircuitBuilder b(4 * n, "r3");
    Word x1 = b.inputs(0, n), x2 = b.inputs(n, n);
    Word y = b.inputs(2 * n, n), z = b.inputs(3 * n, n);
    Word xyz = x1;
    xyz.insert(xyz.end(), y.begin(), y.end());
    xyz.insert(xyz.end(), z.begin(), z.end());
    Word yxz = y;
    yxz.insert(yxz.end(), x1.begin(), x1.end());
    yxz.insert(yxz.end(), z.begin(), z.end());
    Wire fwd = b.embed(in.circuit, xyz)[0];
    Wire bwd = b.embed(in.circuit, yxz)[0];
    Wire pad_ok = b.eq(x2, b.const_word(0, n));
    Wire cond = b.or_(b.eq(x1, y), b.and_(fwd, b.not_(bwd)));
    b.set_outputs({b.and_(pad_ok, cond)});
    TournamentInstance out;
    out.circuit = b.build();
    out.flavor = TournamentFlavor::Weak;
    return out;
}

/// R3 reverse: ignore a fresh third block.
inline TournamentInstance weak_to_multi_weak(const TournamentInstance& in) {
    const int n = in.label_bits();
    CircuitBuilder b(3 * n, "r3r");
    Word x = b.inputs(0, n), y = b.inputs(n, n);
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    b.set_outputs({b.embed(in.circuit, xy)[0]});
    TournamentInstance out;
    out.circuit = b.build();
    out.flavor = TournamentFlavor::MultiWeak;
    return out;
}

/// R4: pairwise-majority comparator.
inline TournamentInstance condorcet_to_weak(const CondorcetInstance& in) {
    const int n = in.candidate_bits();
    CircuitBuilder b(2 * n, "r4");
    Word x = b.inputs(0, n), y = b.inputs(n, n);
    Word pos, neg;
    for (const Circuit& c : in.circuits) {
        Word vx = b.embed(c, x), vy = b.embed(c, y);
        pos.push_back(b.gt(vx, vy));
        neg.push_back(b.lt(vx, vy));
    }
    b.set_outputs({b.sgn_sum_positive(pos, neg)});
    TournamentInstance out;
    out.circuit = b.build();
    out.flavor = TournamentFlavor::Weak;
    return out;
}

/// R5: zero-circuit padding to a larger voter count.
inline CondorcetInstance condorcet_pad(const CondorcetInstance& in, int target_m) {
    if (target_m == 0) target_m = static_cast<int>(in.circuits.size()) + 1;
    if (target_m <= static_cast<int>(in.circuits.size()))
        throw ValidationError("R5: target voter count must exceed the source's");
    CondorcetInstance out = in;
    while (static_cast<int>(out.circuits.size()) < target_m)
        out.circuits.push_back(constant_circuit(in.candidate_bits(), in.value_bits(), 0, "z"));
    return out;
}

/// R6: encode partitions as restricted-growth strings; invalid encodings
/// get all-zero faces while every real face is shifted to be >= 1.
inline DiceInstance graph_dice_to_dice(const GraphDiceInstance& in) {
    const int nv = in.vertex_count;
    int bpv = 1;
    while ((1 << bpv) < nv) ++bpv;
    const int width = nv * bpv;
    if (width > 30) throw ValidationError("R6: encoded partition width overflow");

    std::int64_t neg_total = 0, pos_total = 0;
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            std::int64_t w = in.weight(i, j);
            if (w > 0) pos_total += w;
            else neg_total += -w;
        }
    const std::int64_t bias = neg_total + 1;
    std::int64_t max_face = bias + pos_total;
    int out_w = 1;
    while ((std::int64_t{1} << out_w) <= max_face) ++out_w;

    DiceInstance out;
    for (int i = 0; i < nv; ++i) {
        CircuitBuilder b(width, "vtx" + std::to_string(i));
        std::vector<Word> slot(static_cast<size_t>(nv));
        for (int v = 0; v < nv; ++v) slot[static_cast<size_t>(v)] = b.inputs(v * bpv, bpv);

        // restricted-growth validity: slot0 = 0, each next <= running max + 1,
        // and every slot below the vertex count
        Wire valid = b.eq(slot[0], b.const_word(0, bpv));
        Word running_max = slot[0];
        for (int v = 1; v < nv; ++v) {
            Word cap = b.add(running_max, b.const_word(1, bpv)); // bpv+1 bits
            valid = b.and_(valid, b.leq(b.zext(slot[static_cast<size_t>(v)], bpv + 1), cap));
            valid = b.and_(valid, b.leq(slot[static_cast<size_t>(v)],
                                        b.const_word(static_cast<std::uint64_t>(nv - 1), bpv)));
            running_max = b.mux(b.gt(slot[static_cast<size_t>(v)], running_max),
                                slot[static_cast<size_t>(v)], running_max);
        }

        // face = bias + w_ii + sum of selected positive weights
        //        - sum of selected negative magnitudes
        std::int64_t base = bias + in.weight(i, i);
        Word pos_sum = b.const_word(static_cast<std::uint64_t>(base), out_w);
        Word neg_sum = b.const_word(0, out_w);
        for (int l = 0; l < nv; ++l) {
            if (l == i || in.weight(i, l) == 0) continue;
            Wire same = b.eq(slot[static_cast<size_t>(l)], slot[static_cast<size_t>(i)]);
            std::int64_t wl = in.weight(i, l);
            if (wl > 0) {
                Word term = b.mux(same, b.const_word(static_cast<std::uint64_t>(wl), out_w),
                                  b.const_word(0, out_w));
                Word sum = b.add(pos_sum, term);
                pos_sum = Word(sum.begin() + 1, sum.end()); // stays below 2^out_w
            } else {
                Word term = b.mux(same, b.const_word(static_cast<std::uint64_t>(-wl), out_w),
                                  b.const_word(0, out_w));
                Word sum = b.add(neg_sum, term);
                neg_sum = Word(sum.begin() + 1, sum.end());
            }
        }
        Word face = b.sub(pos_sum, neg_sum); // >= 1 by the bias
        b.set_outputs(b.mux(valid, face, b.const_word(0, out_w)));
        out.circuits.push_back(b.build());
    }
    out.validate();
    return out;
}

/// RGS encoding of a canonical partition, for the R6 witness map.
inline BitString encode_partition(const Partition& p, int vertex_count) {
    int bpv = 1;
    while ((1 << bpv) < vertex_count) ++bpv;
    std::vector<int> labels = p.labels();
    BitString enc = BitString::from_value(static_cast<std::uint64_t>(labels[0]), bpv);
    for (size_t i = 1; i < labels.size(); ++i)
        enc = enc.concat(BitString::from_value(static_cast<std::uint64_t>(labels[i]), bpv));
    return enc;
}

/// R11: balance an edge-majority instance.
inline EdgeMajorityInstance edge_majority_balance(const EdgeMajorityInstance& in) {
    if (!std::holds_alternative<EdgeMajorityInstance::Threshold>(in.disqualifier))
        throw ValidationError("R11: source must use a threshold disqualifier");
    int n = in.x_bits(), m = in.y_bits();
    if (n == m) return in;

    if (n < m) {
        // pad x with leading zeros; everything else is mapped to dead labels
        EdgeMajorityInstance out;
        CircuitBuilder bc(2 * m, "r11c");
        Word x1 = bc.inputs(0, m - n), x2 = bc.inputs(m - n, n), y = bc.inputs(m, m);
        Word xy = x2;
        xy.insert(xy.end(), y.begin(), y.end());
        Word label = bc.embed(in.edge, xy);
        Wire live = bc.eq(x1, bc.const_word(0, m - n));
        bc.set_outputs(bc.mux(live, label, bc.const_word(0, m + 1)));
        out.edge = bc.build();

        CircuitBuilder bv(m + 1, "r11v");
        Word z = bv.inputs(0, m + 1);
        Word back = bv.embed(in.verifier, z); // n + m bits
        Word padded = bv.const_word(0, m - n);
        padded.insert(padded.end(), back.begin(), back.end());
        bv.set_outputs(padded);
        out.verifier = bv.build();
        out.disqualifier = in.disqualifier;
        out.validate();
        return out;
    }

    // m < n: split the y side one bit at a time
    EdgeMajorityInstance cur = in;
    while (cur.y_bits() < cur.x_bits()) {
        int cn = cur.x_bits(), cm = cur.y_bits();
        EdgeMajorityInstance next;
        CircuitBuilder bc(cn + cm + 1, "r11c");
        Word x = bc.inputs(0, cn);
        Wire ydot = bc.input(cn);
        Word y = bc.inputs(cn + 1, cm);
        Word xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        Word label = bc.embed(cur.edge, xy);
        Word out_label{ydot};
        out_label.insert(out_label.end(), label.begin(), label.end());
        bc.set_outputs(out_label);
        next.edge = bc.build();

        CircuitBuilder bv(cm + 2, "r11v");
        Wire zdot = bv.input(0);
        Word z = bv.inputs(1, cm + 1);
        Word back = bv.embed(cur.verifier, z); // cn + cm bits
        Word res(back.begin(), back.begin() + cn);
        res.push_back(zdot);
        res.insert(res.end(), back.begin() + cn, back.end());
        bv.set_outputs(res);
        next.verifier = bv.build();
        next.disqualifier = cur.disqualifier;
        next.validate();
        cur = std::move(next);
    }
    return cur;
}

/// R12: squash sub-threshold labels to the zero label; threshold becomes 1.
inline EdgeMajorityInstance balanced_to_k1(const EdgeMajorityInstance& in) {
    auto* th = std::get_if<EdgeMajorityInstance::Threshold>(&in.disqualifier);
    if (!th || !in.balanced()) throw ValidationError("R12: source must be balanced threshold");
    const int n = in.x_bits(), lw = in.label_bits();
    EdgeMajorityInstance out;
    CircuitBuilder bc(2 * n, "r12c");
    Word xy = bc.inputs(0, 2 * n);
    Word label = bc.embed(in.edge, xy);
    Wire keep = bc.geq(label, bc.const_word(th->k, lw));
    bc.set_outputs(bc.mux(keep, label, bc.const_word(0, lw)));
    out.edge = bc.build();
    out.verifier = in.verifier;
    out.disqualifier = EdgeMajorityInstance::Threshold{1};
    out.validate();
    return out;
}

/// R13: raise the threshold from 1 to k by copying labels log2(k) times;
/// the spare copies of the zero label stand in for the dead lowest copies
/// of small labels. k above 2^n short-circuits to a fixed instance of the
/// source's verdict.
inline EdgeMajorityInstance k1_to_k(const EdgeMajorityInstance& in, std::uint64_t k,
                                    const BruteOptions& brute_opts) {
    auto* th = std::get_if<EdgeMajorityInstance::Threshold>(&in.disqualifier);
    if (!th || th->k != 1 || !in.balanced())
        throw ValidationError("R13: source must be balanced with threshold 1");
    if (k < 1) throw ValidationError("R13: k must be >= 1");
    if (k == 1) return in;
    const int n = in.x_bits();

    if (n >= 63 || k > (std::uint64_t{1} << n)) {
        // solve outright and emit a fixed instance of the same verdict
        bool yes = brute_edge_majority(in, brute_opts).yes;
        int nn = 1;
        while ((std::uint64_t{1} << nn) < k) ++nn;
        EdgeMajorityInstance out;
        CircuitBuilder bc(2 * nn, "r13fix");
        Word x = bc.inputs(0, nn), y = bc.inputs(nn, nn);
        if (yes) {
            Word lab{bc.constant(1)};
            Word ybits = y;
            lab.insert(lab.end(), ybits.begin(), ybits.end());
            Wire live = bc.eq(x, bc.const_word(0, nn));
            bc.set_outputs(bc.mux(live, lab, bc.const_word(0, nn + 1)));
        } else {
            bc.set_outputs(bc.const_word(0, nn + 1));
        }
        out.edge = bc.build();
        CircuitBuilder bv(nn + 1, "r13fixv");
        Word z = bv.inputs(1, nn);
        Word res = bv.const_word(0, nn);
        res.insert(res.end(), z.begin(), z.end());
        bv.set_outputs(res);
        out.verifier = bv.build();
        out.disqualifier = EdgeMajorityInstance::Threshold{k};
        out.validate();
        return out;
    }

    int kp = 0; // copy-index bits: k2 = 2^kp is the next power of two >= k
    while ((std::uint64_t{1} << kp) < k) ++kp;
    const std::uint64_t k2 = std::uint64_t{1} << kp;
    const int lw = n + 1; // source label width

    EdgeMajorityInstance out;
    {
        CircuitBuilder bc(2 * (n + kp), "r13c");
        Word x1 = bc.inputs(0, kp), x2 = bc.inputs(kp, n);
        Word y1 = bc.inputs(n + kp, kp), y2 = bc.inputs(n + kp * 2, n);
        Word xy = x2;
        xy.insert(xy.end(), y2.begin(), y2.end());
        Word label = bc.embed(in.edge, xy);
        Word vback = bc.embed(in.verifier, label);
        Wire verified = bc.eq(vback, xy);
        Wire live = bc.and_(bc.eq(x1, bc.const_word(0, kp)),
                            bc.and_(bc.ne(label, bc.const_word(0, lw)), verified));

        // i || l when l >= k2 or i != 0; otherwise l' || 0^{n+1}
        Word il = y1;
        il.insert(il.end(), label.begin(), label.end());
        Word low_kp(label.end() - kp, label.end()); // the kp-bit value of a small label
        Word spare = low_kp;
        Word zeros = bc.const_word(0, lw);
        spare.insert(spare.end(), zeros.begin(), zeros.end());
        Wire big = bc.geq(label, bc.const_word(k2, lw));
        Wire nonzero_copy = bc.ne(y1, bc.const_word(0, kp));
        Word mapped = bc.mux(bc.or_(big, nonzero_copy), il, spare);
        bc.set_outputs(bc.mux(live, mapped, bc.const_word(0, n + kp + 1)));
        out.edge = bc.build();
    }
    {
        CircuitBuilder bv(n + kp + 1, "r13v");
        Word i = bv.inputs(0, kp);
        Word l = bv.inputs(kp, lw);
        Word back_l = bv.embed(in.verifier, l); // x||y for the label case
        Word iext = bv.zext(i, lw);
        Word back_i = bv.embed(in.verifier, iext); // spare-copy case
        Wire is_spare = bv.eq(l, bv.const_word(0, lw));
        Word kp_zeros = bv.const_word(0, kp);
        // label case: 0^{kp} x i y ; spare case: 0^{kp} x 0^{kp} y
        Word label_case = kp_zeros;
        label_case.insert(label_case.end(), back_l.begin(), back_l.begin() + n);
        label_case.insert(label_case.end(), i.begin(), i.end());
        label_case.insert(label_case.end(), back_l.begin() + n, back_l.end());
        Word spare_case = kp_zeros;
        spare_case.insert(spare_case.end(), back_i.begin(), back_i.begin() + n);
        Word kp_zeros2 = bv.const_word(0, kp);
        spare_case.insert(spare_case.end(), kp_zeros2.begin(), kp_zeros2.end());
        spare_case.insert(spare_case.end(), back_i.begin() + n, back_i.end());
        bv.set_outputs(bv.mux(is_spare, spare_case, label_case));
        out.verifier = bv.build();
    }
    out.disqualifier = EdgeMajorityInstance::Threshold{k};
    out.validate();
    return out;
}

/// R14: explicit-set disqualifier to a threshold, swapping the set's
/// high members with unused low labels rank by rank.
inline EdgeMajorityInstance set_to_balanced(const EdgeMajorityInstance& in) {
    auto* set = std::get_if<EdgeMajorityInstance::Set>(&in.disqualifier);
    if (!set || !in.balanced()) throw ValidationError("R14: source must be balanced with a set");
    const int n = in.x_bits(), lw = in.label_bits();
    std::vector<std::uint64_t> s = set->labels;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const std::uint64_t k = s.size();

    // S' = members of S at or above k; K' = labels below k not in S
    std::vector<std::uint64_t> s_high, k_low;
    for (std::uint64_t v : s)
        if (v >= k) s_high.push_back(v);
    for (std::uint64_t v = 0; v < k; ++v)
        if (!std::binary_search(s.begin(), s.end(), v)) k_low.push_back(v);
    // |s_high| == |k_low|; pair them by rank to build an involution
    std::vector<std::pair<std::uint64_t, std::uint64_t>> swaps;
    for (size_t i = 0; i < s_high.size(); ++i) {
        swaps.push_back({s_high[i], k_low[i]});
        swaps.push_back({k_low[i], s_high[i]});
    }

    auto swap_word = [&](CircuitBuilder& b, const Word& z) {
        Word acc = z;
        for (const auto& [from, to] : swaps) {
            Wire hit = b.eq(z, b.const_word(from, lw));
            acc = b.mux(hit, b.const_word(to, lw), acc);
        }
        return acc;
    };

    EdgeMajorityInstance out;
    {
        CircuitBuilder bc(2 * n, "r14c");
        Word xy = bc.inputs(0, 2 * n);
        bc.set_outputs(swap_word(bc, bc.embed(in.edge, xy)));
        out.edge = bc.build();
    }
    {
        CircuitBuilder bv(lw, "r14v");
        Word z = bv.inputs(0, lw);
        bv.set_outputs(bv.embed(in.verifier, swap_word(bv, z)));
        out.verifier = bv.build();
    }
    out.disqualifier = EdgeMajorityInstance::Threshold{k};
    out.validate();
    return out;
}

/// R15: UNSAT instance to a balanced threshold-1 instance where the zero
/// string wins exactly when the formula has no satisfying assignment.
inline EdgeMajorityInstance unsat_to_balanced1(const QbfInstance& in) {
    if (in.pattern != QbfPattern::Unsat) throw ValidationError("R15: source must be UNSAT");
    const int n = in.formula.input_count;
    EdgeMajorityInstance out;
    {
        CircuitBuilder bc(2 * n, "r15c");
        Word x = bc.inputs(0, n), y = bc.inputs(n, n);
        Wire psi = bc.embed(in.formula, y)[0];
        Wire live = bc.and_(bc.eq(x, bc.const_word(0, n)), bc.not_(psi));
        Word lab{bc.constant(1)};
        lab.insert(lab.end(), y.begin(), y.end());
        bc.set_outputs(bc.mux(live, lab, bc.const_word(0, n + 1)));
        out.edge = bc.build();
    }
    {
        CircuitBuilder bv(n + 1, "r15v");
        Word zp = bv.inputs(1, n);
        Word res = bv.const_word(0, n);
        res.insert(res.end(), zp.begin(), zp.end());
        bv.set_outputs(res);
        out.verifier = bv.build();
    }
    out.disqualifier = EdgeMajorityInstance::Threshold{1};
    out.validate();
    return out;
}

/// R16: tours as index sequences; canonical encodings (start at 0, second
/// vertex below the last, a permutation) score BIG - length, everything
/// else scores zero, so the unique shortest cycle is the unique maximizer.
inline OptFamilyInstance tsp_to_unique_opt(const TspInstance& in) {
    in.validate();
    const int v = in.vertex_count;
    int bpv = 1;
    while ((1 << bpv) < v) ++bpv;
    const int width = v * bpv;
    if (width > 30) throw ValidationError("R16: tour encoding width overflow");

    std::int64_t maxw = 0;
    for (const auto& row : in.weights)
        for (std::int64_t x : row) maxw = std::max(maxw, x);
    const std::int64_t big = 1 + static_cast<std::int64_t>(v) * maxw;
    int value_w = 1;
    while ((std::int64_t{1} << value_w) <= big) ++value_w;
    const int out_w = std::max(width, value_w);

    // pair-indexed weight table over 2b key bits; impossible keys read 0
    std::vector<std::uint64_t> wtab(size_t{1} << (2 * bpv), 0);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j)
            wtab[(static_cast<size_t>(i) << bpv) | static_cast<size_t>(j)] =
                static_cast<std::uint64_t>(in.weights[static_cast<size_t>(i)][static_cast<size_t>(j)]);

    CircuitBuilder b(width, "r16");
    std::vector<Word> idx(static_cast<size_t>(v));
    for (int p = 0; p < v; ++p) idx[static_cast<size_t>(p)] = b.inputs(p * bpv, bpv);

    Wire canonical = b.eq(idx[0], b.const_word(0, bpv));
    canonical = b.and_(canonical, b.lt(idx[1], idx[static_cast<size_t>(v) - 1]));
    for (int p = 0; p < v; ++p)
        canonical = b.and_(canonical, b.leq(idx[static_cast<size_t>(p)],
                                            b.const_word(static_cast<std::uint64_t>(v - 1), bpv)));
    for (int p = 0; p < v; ++p)
        for (int r = p + 1; r < v; ++r)
            canonical = b.and_(canonical,
                               b.ne(idx[static_cast<size_t>(p)], idx[static_cast<size_t>(r)]));

    Word length = b.const_word(0, out_w);
    for (int p = 0; p < v; ++p) {
        Word key = idx[static_cast<size_t>(p)];
        const Word& nxt = idx[static_cast<size_t>((p + 1) % v)];
        key.insert(key.end(), nxt.begin(), nxt.end());
        Word step = b.table(key, wtab, out_w);
        Word sum = b.add(length, step);
        length = Word(sum.begin() + 1, sum.end()); // below 2^out_w by choice of width
    }
    Word score = b.sub(b.const_word(static_cast<std::uint64_t>(big), out_w), length);
    b.set_outputs(b.mux(canonical, score, b.const_word(0, out_w)));
    Circuit core = b.build();

    // square the instance: n inputs, n outputs
    OptFamilyInstance out;
    out.variant = OptVariant::UniqueOpt;
    if (out_w == width) {
        out.circuits.push_back(core);
    } else {
        CircuitBuilder sq(std::max(width, out_w), "r16sq");
        Word ins = sq.inputs(0, width);
        out.circuits.push_back([&] {
            Word val = sq.embed(core, ins);
            sq.set_outputs(sq.zext(val, std::max(width, out_w)));
            return sq.build();
        }());
    }
    out.validate();
    return out;
}

/// R17: unique optimizer as a two-voter Condorcet instance.
inline CondorcetInstance unique_opt_to_condorcet2(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::UniqueOpt) throw ValidationError("R17: source must be UNIQUE-OPT");
    CondorcetInstance out;
    out.circuits.push_back(in.circuit());
    out.circuits.push_back(
        constant_circuit(in.circuit().input_count, in.circuit().output_count(), 0, "z"));
    out.validate();
    return out;
}

/// R18: the singleton consensus instance.
inline OptFamilyInstance unique_opt_to_consensus(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::UniqueOpt) throw ValidationError("R18: source must be UNIQUE-OPT");
    OptFamilyInstance out;
    out.variant = OptVariant::Consensus;
    out.circuits = {in.circuit()};
    out.validate();
    return out;
}

/// R19: a game ignoring the opponent.
inline OptFamilyInstance unique_opt_to_strong_dominant(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::UniqueOpt) throw ValidationError("R19: source must be UNIQUE-OPT");
    const int n = in.circuit().input_count;
    CircuitBuilder b(2 * n, "r19");
    Word x = b.inputs(0, n);
    b.set_outputs(b.embed(in.circuit(), x));
    OptFamilyInstance out;
    out.variant = OptVariant::StrongDominant;
    out.circuits = {b.build()};
    out.validate();
    return out;
}

/// R20: winner-threshold over value||preimage pairs.
inline OptFamilyInstance unique_opt_to_winner_threshold(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::UniqueOpt) throw ValidationError("R20: source must be UNIQUE-OPT");
    const int n = in.circuit().input_count;
    const int w = in.circuit().output_count();
    if (w != n) throw ValidationError("R20: needs a square circuit");
    CircuitBuilder b(4 * n, "r20");
    Word ybits = b.inputs(0, n), x = b.inputs(n, n);
    Word yp = b.inputs(2 * n, n), xp = b.inputs(3 * n, n);
    Word cx = b.embed(in.circuit(), x);
    Word cxp = b.embed(in.circuit(), xp);
    Wire is_image = b.eq(cx, ybits);
    // the self-challenge must pass too: the all-winner condition quantifies
    // over every challenge string, the candidate's own encoding included
    Wire self = b.and_(b.eq(ybits, yp), b.eq(x, xp));
    Wire rival_dead = b.or_(self, b.or_(b.gt(ybits, yp), b.ne(cxp, yp)));
    b.set_outputs({b.and_(is_image, rival_dead)});
    OptFamilyInstance out;
    out.variant = OptVariant::WinnerThreshold;
    out.circuits = {b.build()};
    out.validate();
    return out;
}

/// R21: exists-forall satisfiability to unique value. Opponent assignments
/// are paired by a low-bit flip; x's value stays on the even rail exactly
/// while its formula keeps holding, and only the all-ones opponent ever
/// leaves a candidate's odd value un-duplicated.
inline OptFamilyInstance ea_sat_to_unique_value(const QbfInstance& in) {
    if (in.pattern != QbfPattern::ExistsForall)
        throw ValidationError("R21: source must be EXISTS-FORALL-SAT");
    const int n = in.block_bits();
    CircuitBuilder b(2 * n, "r21");
    Word x = b.inputs(0, n), y = b.inputs(n, n);
    Word ybar = b.const_word((std::uint64_t{1} << n) - 1, n);

    auto psi_at = [&](const Word& yy) {
        Word in_w = x;
        in_w.insert(in_w.end(), yy.begin(), yy.end());
        return b.embed(in.formula, in_w)[0];
    };
    Word y_pair = y;
    y_pair[static_cast<size_t>(n) - 1] = b.not_(y[static_cast<size_t>(n) - 1]);

    Wire even_cond;
    if (n >= 2) {
        Wire below = b.leq(y, b.const_word((std::uint64_t{1} << n) - 3, n));
        even_cond = b.and_(below, b.and_(psi_at(y), psi_at(y_pair)));
    } else {
        even_cond = b.constant(0);
    }
    Wire at_pre_top = b.eq(y, b.const_word((std::uint64_t{1} << n) - 2, n));
    Wire top_cond = b.and_(
        at_pre_top,
        b.and_(b.and_(psi_at(y), psi_at(ybar)),
               b.and_(psi_at(b.const_word(0, n)), psi_at(b.const_word(1, n)))));
    Wire even = b.or_(even_cond, top_cond);

    // output 2x (even) or 2x + 1 over 2n bits
    Word x2 = b.zext(x, 2 * n - 1);
    x2.push_back(b.not_(even));
    b.set_outputs(b.zext(x2, 2 * n));
    OptFamilyInstance out;
    out.variant = OptVariant::UniqueValue;
    out.circuits = {b.build()};
    out.validate();
    return out;
}

/// R22: unique value to a two-circuit Pareto instance via complemented
/// outputs (order reversal under the unsigned reading).
inline OptFamilyInstance unique_value_to_pareto(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::UniqueValue)
        throw ValidationError("R22: source must be UNIQUE-VALUE");
    const Circuit& c = in.circuit();
    CircuitBuilder b(c.input_count, "r22");
    Word x = b.inputs(0, c.input_count);
    b.set_outputs(b.not_word(b.embed(c, x)));
    OptFamilyInstance out;
    out.variant = OptVariant::Pareto2;
    out.circuits = {c, b.build()};
    out.validate();
    return out;
}

/// R23 forward. Paying out the raw formula value is not enough: a row that
/// pointwise-dominates all others without being all-ones would win the game
/// while the formula has no all-winner at all. One benchmark strategy
/// (1||0^n) paying 1 on the original columns and 0 on the fresh ones forces
/// any winner to carry an all-ones formula row, while the benchmark itself
/// can never weakly dominate a formula row.
inline OptFamilyInstance ueasat_to_wdom(const QbfInstance& in) {
    if (in.pattern != QbfPattern::UniqueExistsForall)
        throw ValidationError("R23: source must be UNIQUE-EXISTS-FORALL-SAT");
    const int n = in.block_bits();
    CircuitBuilder b(2 * (n + 1), "r23");
    Wire xa = b.input(0);
    Word x = b.inputs(1, n);
    Wire ya = b.input(n + 1);
    Word y = b.inputs(n + 2, n);
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    Wire psi = b.embed(in.formula, xy)[0];
    // formula rows: psi on old columns (ya = 0), 1 on fresh columns;
    // benchmark 1||0^n: the mirror; other aux rows: all zero
    Wire formula_row = b.not_(xa);
    Wire benchmark = b.and_(xa, b.eq(x, b.const_word(0, n)));
    Wire value = b.mux1(formula_row, b.mux1(ya, b.constant(1), psi),
                        b.and_(benchmark, b.not_(ya)));
    b.set_outputs(b.zext(Word{value}, n + 1));
    OptFamilyInstance out;
    out.variant = OptVariant::WeakDominant;
    out.circuits = {b.build()};
    out.validate();
    return out;
}

/// R23 reverse: a guard block plus a pairwise payoff comparison.
inline QbfInstance wdom_to_ueasat(const OptFamilyInstance& in) {
    if (in.variant != OptVariant::WeakDominant)
        throw ValidationError("R23: source must be WDOM-STRATEGY");
    const int n = in.x_bits();
    CircuitBuilder b(4 * n, "r23r");
    Word xp = b.inputs(0, n), x1 = b.inputs(n, n);
    Word x2 = b.inputs(2 * n, n), y = b.inputs(3 * n, n);
    Word x1y = x1;
    x1y.insert(x1y.end(), y.begin(), y.end());
    Word x2y = x2;
    x2y.insert(x2y.end(), y.begin(), y.end());
    Word p1 = b.embed(in.circuit(), x1y);
    Word p2 = b.embed(in.circuit(), x2y);
    Wire guard = b.eq(xp, b.const_word(0, n));
    b.set_outputs({b.and_(guard, b.geq(p1, p2))});
    QbfInstance out;
    out.formula = b.build();
    out.pattern = QbfPattern::UniqueExistsForall;
    out.validate();
    return out;
}

/// R24: guard variable makes all-ones the designated unique witness.
inline QbfInstance aesat_to_ueasat(const QbfInstance& in) {
    if (in.pattern != QbfPattern::ForallExists)
        throw ValidationError("R24: source must be FORALL-EXISTS-SAT");
    const int n = in.block_bits();
    CircuitBuilder b(2 * (n + 1), "r24");
    Wire x0 = b.input(0);
    Word x = b.inputs(1, n);
    Word y = b.inputs(n + 2, n); // y0 at position n+1 is ignored
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    Wire psi = b.embed(in.formula, xy)[0];
    Word all = x;
    all.push_back(x0);
    Wire ones = b.and_all(all);
    b.set_outputs({b.or_(ones, b.and_(b.not_(x0), psi))});
    QbfInstance out;
    out.formula = b.build();
    out.pattern = QbfPattern::UniqueExistsForall;
    out.validate();
    return out;
}

} // namespace red

// ---------------------------------------------------------------------------
// Dispatcher and witness maps.

inline ProblemInstance apply_reduction(const std::string& kind_id, const ProblemInstance& source,
                                       const ReductionParams& params = {}) {
    const ReductionKind& kind = reduction_kind(kind_id);
    source.validate();
    ProblemInstance out;

    auto require = [&](bool ok) {
        if (!ok)
            throw ValidationError(kind.id + ": instance is not a valid " + kind.source +
                                  (kind.bidirectional ? " (or " + kind.target + ")" : ""));
    };

    if (kind.id == "R1") {
        require(source.is<TournamentInstance>());
        out.value = red::tournament_to_weak(source.as<TournamentInstance>());
    } else if (kind.id == "R2") {
        require(source.is<TournamentInstance>());
        out.value = red::weak_to_tournament(source.as<TournamentInstance>());
    } else if (kind.id == "R3") {
        require(source.is<TournamentInstance>());
        const auto& t = source.as<TournamentInstance>();
        out.value = t.flavor == TournamentFlavor::MultiWeak ? red::multi_weak_to_weak(t)
                                                            : red::weak_to_multi_weak(t);
    } else if (kind.id == "R4") {
        require(source.is<CondorcetInstance>());
        out.value = red::condorcet_to_weak(source.as<CondorcetInstance>());
    } else if (kind.id == "R5") {
        require(source.is<CondorcetInstance>());
        out.value = red::condorcet_pad(source.as<CondorcetInstance>(), params.target_m);
    } else if (kind.id == "R6") {
        require(source.is<GraphDiceInstance>());
        out.value = red::graph_dice_to_dice(source.as<GraphDiceInstance>());
    } else if (kind.id == "R7") {
        require(source.is<Ashg>());
        out.value = ashg_to_graph_dice(source.as<Ashg>());
    } else if (kind.id == "R8") {
        require(source.is<DiceInstance>());
        out.value = build_strict_dice(source.as<DiceInstance>());
    } else if (kind.id == "R9") {
        require(source.is<DiceInstance>());
        out.value = detie_strict_dice(source.as<DiceInstance>());
    } else if (kind.id == "R10") {
        require(source.is<DiceInstance>());
        const auto& d = source.as<DiceInstance>();
        int m = static_cast<int>(d.circuits.size());
        std::int64_t den = 2 * static_cast<std::int64_t>(m) * m * m * m + 1;
        PairwiseCode code = search_code_short(m, 1 << d.label_bits(), Rational::of(1, den),
                                              params.seed);
        out.value = build_condorcet_from_dice(d, code, params.brute);
    } else if (kind.id == "R11") {
        require(source.is<EdgeMajorityInstance>());
        out.value = red::edge_majority_balance(source.as<EdgeMajorityInstance>());
    } else if (kind.id == "R12") {
        require(source.is<EdgeMajorityInstance>());
        out.value = red::balanced_to_k1(source.as<EdgeMajorityInstance>());
    } else if (kind.id == "R13") {
        require(source.is<EdgeMajorityInstance>());
        out.value = red::k1_to_k(source.as<EdgeMajorityInstance>(), params.target_k, params.brute);
    } else if (kind.id == "R14") {
        require(source.is<EdgeMajorityInstance>());
        out.value = red::set_to_balanced(source.as<EdgeMajorityInstance>());
    } else if (kind.id == "R15") {
        require(source.is<QbfInstance>());
        out.value = red::unsat_to_balanced1(source.as<QbfInstance>());
    } else if (kind.id == "R16") {
        require(source.is<TspInstance>());
        out.value = red::tsp_to_unique_opt(source.as<TspInstance>());
    } else if (kind.id == "R17") {
        require(source.is<OptFamilyInstance>());
        out.value = red::unique_opt_to_condorcet2(source.as<OptFamilyInstance>());
    } else if (kind.id == "R18") {
        require(source.is<OptFamilyInstance>());
        out.value = red::unique_opt_to_consensus(source.as<OptFamilyInstance>());
    } else if (kind.id == "R19") {
        require(source.is<OptFamilyInstance>());
        out.value = red::unique_opt_to_strong_dominant(source.as<OptFamilyInstance>());
    } else if (kind.id == "R20") {
        require(source.is<OptFamilyInstance>());
        out.value = red::unique_opt_to_winner_threshold(source.as<OptFamilyInstance>());
    } else if (kind.id == "R21") {
        require(source.is<QbfInstance>());
        out.value = red::ea_sat_to_unique_value(source.as<QbfInstance>());
    } else if (kind.id == "R22") {
        require(source.is<OptFamilyInstance>());
        out.value = red::unique_value_to_pareto(source.as<OptFamilyInstance>());
    } else if (kind.id == "R23") {
        if (source.is<QbfInstance>()) {
            out.value = red::ueasat_to_wdom(source.as<QbfInstance>());
        } else {
            require(source.is<OptFamilyInstance>());
            out.value = red::wdom_to_ueasat(source.as<OptFamilyInstance>());
        }
    } else if (kind.id == "R24") {
        require(source.is<QbfInstance>());
        out.value = red::aesat_to_ueasat(source.as<QbfInstance>());
    } else if (kind.id == "R25") {
        require(source.is<CondorcetInstance>());
        out.value = build_ashg_from_condorcet(source.as<CondorcetInstance>()).game;
    } else {
        throw ValidationError("apply_reduction: unhandled kind " + kind.id);
    }
    out.validate();
    return out;
}

/// Forward witness map where the construction defines one; the remaining
/// rows are verdict-only.
inline std::optional<Verdict> witness_map(const std::string& kind_id,
                                          const ProblemInstance& source,
                                          const Verdict& source_verdict) {
    const ReductionKind& kind = reduction_kind(kind_id);
    if (!kind.has_witness_map || !source_verdict.yes) return std::nullopt;

    auto bits = [&]() { return *source_verdict.witness; };

    if (kind.id == "R1" || kind.id == "R4" || kind.id == "R5" || kind.id == "R9" ||
        kind.id == "R10" || kind.id == "R17" || kind.id == "R18" || kind.id == "R19" ||
        kind.id == "R22")
        return Verdict::yes_with(bits());

    if (kind.id == "R2") {
        int n = source.as<TournamentInstance>().label_bits();
        return Verdict::yes_with(bits().concat(BitString::zeros(n)));
    }
    if (kind.id == "R3") {
        const auto& t = source.as<TournamentInstance>();
        if (t.flavor == TournamentFlavor::MultiWeak)
            return Verdict::yes_with(bits().concat(BitString::zeros(t.label_bits())));
        return Verdict::yes_with(bits());
    }
    if (kind.id == "R6") {
        const auto& g = source.as<GraphDiceInstance>();
        return Verdict::yes_with(
            red::encode_partition(*source_verdict.witness_partition, g.vertex_count));
    }
    if (kind.id == "R7") return Verdict::yes_with(*source_verdict.witness_partition);
    if (kind.id == "R8") {
        int n = source.as<DiceInstance>().label_bits();
        return Verdict::yes_with(BitString::zeros(n + 2).concat(bits()));
    }
    if (kind.id == "R20") {
        const auto& c = source.as<OptFamilyInstance>().circuit();
        return Verdict::yes_with(c.eval(bits()).concat(bits()));
    }
    if (kind.id == "R21") {
        int n = source.as<QbfInstance>().block_bits();
        return Verdict::yes_with(bits().concat(BitString::ones(n)));
    }
    if (kind.id == "R23") {
        if (source.is<QbfInstance>())
            return Verdict::yes_with(BitString::zeros(1).concat(bits())); // formula-row strategy
        int n = source.as<OptFamilyInstance>().x_bits();
        return Verdict::yes_with(BitString::zeros(n).concat(bits()));
    }
    if (kind.id == "R24") {
        int n = source.as<QbfInstance>().block_bits();
        return Verdict::yes_with(BitString::ones(n + 1));
    }
    if (kind.id == "R25") {
        const auto& ci = source.as<CondorcetInstance>();
        GadgetGame gg = build_ashg_from_condorcet(ci);
        return Verdict::yes_with(build_pi_star(gg, bits()));
    }
    return std::nullopt;
}

} // namespace uwin
