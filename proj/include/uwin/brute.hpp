#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "uwin/parallel.hpp"
#include "uwin/problems.hpp"

namespace uwin {

/// Enumeration limits for the ground-truth oracles. The default allows 2^12
/// candidate evaluations per quantifier block; exceeding it raises
/// BudgetError rather than silently truncating.
struct BruteOptions {
    int block_budget_bits = 12;
    int partition_budget = 4140; // Bell(8)
    int jobs = 1;
};

namespace detail {

inline void check_block(int bits, const BruteOptions& opts, const char* what) {
    if (bits > opts.block_budget_bits)
        throw BudgetError(std::string(what) + ": quantifier block of " + std::to_string(bits) +
                          " bits exceeds budget 2^" + std::to_string(opts.block_budget_bits));
}

inline void check_value_width(const Circuit& c, const char* what) {
    if (c.output_count() > 64)
        throw ValidationError(std::string(what) + ": output width beyond 64-bit format limit");
}

/// values[i][x] = circuits[i](x) as unsigned numbers.
inline std::vector<std::vector<std::uint64_t>> value_matrix(const std::vector<Circuit>& circuits,
                                                            int n, const BruteOptions& opts) {
    std::vector<std::vector<std::uint64_t>> values(circuits.size());
    for (size_t i = 0; i < circuits.size(); ++i) {
        check_value_width(circuits[i], "brute");
        values[i].resize(size_t{1} << n);
        const Circuit& c = circuits[i];
        parallel_for(std::uint64_t{1} << n, opts.jobs, [&](std::uint64_t from, std::uint64_t to) {
            std::vector<std::uint8_t> scratch;
            for (std::uint64_t x = from; x < to; ++x)
                values[i][x] = c.eval_value(x, scratch);
        });
    }
    return values;
}

inline int sgn64(std::uint64_t a, std::uint64_t b) { return a > b ? 1 : (a < b ? -1 : 0); }
inline int sgn_i64(std::int64_t a, std::int64_t b) { return a > b ? 1 : (a < b ? -1 : 0); }

/// Scan all labels, counting qualifiers; `first_loss(x)` returns the first
/// defeater when x fails, or nullopt when x qualifies. Defeaters may live
/// in a different-width space (edge-majority challenges).
template <class FirstLoss>
Verdict scan_labels(int n, FirstLoss&& first_loss, int defeater_bits = 0) {
    if (defeater_bits == 0) defeater_bits = n;
    Verdict v;
    std::optional<std::pair<BitString, BitString>> refutation;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        auto loss = first_loss(x);
        if (!loss) {
            ++v.witness_count;
            if (!v.witness) {
                v.yes = true;
                v.witness = BitString::from_value(x, n);
            }
        } else if (x == 0) {
            refutation = {BitString::from_value(x, n),
                          BitString::from_value(*loss, defeater_bits)};
        }
    }
    if (!v.yes) v.refutation = std::move(refutation);
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Tournament oracles.

/// Pairwise relation of a tournament instance: +1 if x beats y, -1 if y
/// beats x, 0 on a tie (never 0 for the strict flavor).
inline int tournament_relation(const TournamentInstance& inst, std::uint64_t x, std::uint64_t y,
                               std::vector<std::uint8_t>& scratch) {
    const int n = inst.label_bits();
    auto edge = [&](std::uint64_t a, std::uint64_t b) {
        BitString in = BitString::from_value(a, n).concat(BitString::from_value(b, n));
        return inst.circuit.eval_value(in, scratch) != 0;
    };
    if (inst.flavor == TournamentFlavor::MultiWeak)
        throw ValidationError("tournament_relation: use brute for the multi flavor");
    bool cxy = edge(x, y), cyx = edge(y, x);
    if (cxy && !cyx) return 1;
    if (cyx && !cxy) return -1;
    if (inst.flavor == TournamentFlavor::Strict) return x > y ? 1 : -1;
    return 0;
}

inline Verdict brute_tournament(const TournamentInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    const int n = inst.label_bits();
    detail::check_block(n, opts, "brute_tournament");
    std::vector<std::uint8_t> scratch;

    if (inst.flavor == TournamentFlavor::MultiWeak) {
        auto edge = [&](std::uint64_t a, std::uint64_t b, std::uint64_t z) {
            BitString in = BitString::from_value(a, n)
                               .concat(BitString::from_value(b, n))
                               .concat(BitString::from_value(z, n));
            return inst.circuit.eval_value(in, scratch) != 0;
        };
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                if (y == x) continue;
                for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z)
                    if (!(edge(x, y, z) && !edge(y, x, z))) return y;
            }
            return std::nullopt;
        });
    }

    return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
            if (y != x && tournament_relation(inst, x, y, scratch) != 1) return y;
        return std::nullopt;
    });
}

// ---------------------------------------------------------------------------
// Condorcet oracles.

/// Majority margin of x over y: sum over voters of sgn(C_i(x) - C_i(y)).
inline long condorcet_margin(const std::vector<std::vector<std::uint64_t>>& values,
                             std::uint64_t x, std::uint64_t y) {
    long margin = 0;
    for (const auto& row : values) margin += detail::sgn64(row[x], row[y]);
    return margin;
}

inline Verdict brute_condorcet(const CondorcetInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    const int n = inst.candidate_bits();
    detail::check_block(n, opts, "brute_condorcet");
    auto values = detail::value_matrix(inst.circuits, n, opts);

    Verdict v = detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
            if (y != x && condorcet_margin(values, x, y) <= 0) return y;
        return std::nullopt;
    });
    // anti-symmetry of the majority relation makes two winners impossible
    if (v.witness_count > 1)
        throw Error("brute_condorcet: internal error, two Condorcet strings found");
    return v;
}

// ---------------------------------------------------------------------------
// Dice oracles.

/// Double-sgn face tally of die x against die y.
inline long dice_margin(const std::vector<std::vector<std::uint64_t>>& faces, std::uint64_t x,
                        std::uint64_t y) {
    long margin = 0;
    for (const auto& fi : faces)
        for (const auto& fj : faces) margin += detail::sgn64(fi[x], fj[y]);
    return margin;
}

/// +1 iff x beats y under the instance's flavor (strict adds the
/// lexicographic disjunct on ties).
inline bool dice_beats(const DiceInstance& inst,
                       const std::vector<std::vector<std::uint64_t>>& faces, std::uint64_t x,
                       std::uint64_t y) {
    long m = dice_margin(faces, x, y);
    if (m > 0) return true;
    return inst.strict && m == 0 && x > y;
}

inline Verdict brute_dice(const DiceInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    const int n = inst.label_bits();
    detail::check_block(n, opts, "brute_dice");
    auto faces = detail::value_matrix(inst.circuits, n, opts);

    return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
            if (y != x && !dice_beats(inst, faces, x, y)) return y;
        return std::nullopt;
    });
}

inline long graph_dice_margin(const std::vector<std::vector<std::int64_t>>& s_rows, size_t a,
                              size_t b) {
    long margin = 0;
    size_t n = s_rows[a].size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            margin += detail::sgn_i64(s_rows[a][i], s_rows[b][j]);
    return margin;
}

inline Verdict brute_graph_dice(const GraphDiceInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    std::uint64_t bell = bell_number(inst.vertex_count);
    if (bell > static_cast<std::uint64_t>(opts.partition_budget))
        throw BudgetError("brute_graph_dice: Bell(" + std::to_string(inst.vertex_count) +
                          ") exceeds partition budget");

    std::vector<Partition> parts;
    std::vector<std::vector<std::int64_t>> s_rows; // s_rows[p][i] = s_i(partition p)
    for_each_partition(inst.vertex_count, [&](const Partition& p) {
        std::vector<int> labels = p.labels();
        std::vector<std::int64_t> s(static_cast<size_t>(inst.vertex_count));
        for (int i = 0; i < inst.vertex_count; ++i) s[static_cast<size_t>(i)] = inst.face(i, labels);
        parts.push_back(p);
        s_rows.push_back(std::move(s));
    });

    Verdict v;
    std::optional<std::pair<Partition, Partition>> refutation;
    for (size_t a = 0; a < parts.size(); ++a) {
        bool all = true;
        for (size_t b = 0; b < parts.size(); ++b) {
            if (a == b) continue;
            if (graph_dice_margin(s_rows, a, b) <= 0) {
                all = false;
                if (a == 0 && !refutation) refutation = {parts[a], parts[b]};
                break;
            }
        }
        if (all) {
            ++v.witness_count;
            if (!v.witness_partition) {
                v.yes = true;
                v.witness_partition = parts[a];
            }
        }
    }
    if (!v.yes) v.refutation_partitions = std::move(refutation);
    return v;
}

// ---------------------------------------------------------------------------
// TSP.

/// Canonical tours: start at vertex 0, second vertex smaller than the last.
/// Returns (unique?, best length, canonical best tour).
inline Verdict brute_tsp(const TspInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    const int v = inst.vertex_count;
    if (v > 10) throw BudgetError("brute_tsp: too many vertices");
    (void)opts;
    std::vector<int> rest(static_cast<size_t>(v) - 1);
    std::iota(rest.begin(), rest.end(), 1);
    long best_count = 0;
    std::int64_t best = 0;
    std::vector<int> best_tour;
    do {
        if (rest.front() > rest.back()) continue; // canonical direction
        std::int64_t len = inst.weights[0][static_cast<size_t>(rest.front())];
        for (size_t i = 0; i + 1 < rest.size(); ++i)
            len += inst.weights[static_cast<size_t>(rest[i])][static_cast<size_t>(rest[i + 1])];
        len += inst.weights[static_cast<size_t>(rest.back())][0];
        if (best_count == 0 || len < best) {
            best = len;
            best_count = 1;
            best_tour = rest;
        } else if (len == best) {
            ++best_count;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    if (best_count == 1) {
        Verdict out;
        out.yes = true;
        out.witness_count = 1;
        // canonical encoding: vertex indices, ceil(log2 v) bits each
        int b = 1;
        while ((1 << b) < v) ++b;
        BitString enc = BitString::from_value(0, b);
        for (int vertex : best_tour) enc = enc.concat(BitString::from_value(
            static_cast<std::uint64_t>(vertex), b));
        out.witness = enc;
        return out;
    }
    return Verdict::no();
}

// ---------------------------------------------------------------------------
// Edge-majority.

inline bool edge_label_admissible(const EdgeMajorityInstance& inst, std::uint64_t label) {
    if (auto* t = std::get_if<EdgeMajorityInstance::Threshold>(&inst.disqualifier))
        return label >= t->k;
    const auto& s = std::get<EdgeMajorityInstance::Set>(inst.disqualifier);
    return std::find(s.labels.begin(), s.labels.end(), label) == s.labels.end();
}

inline Verdict brute_edge_majority(const EdgeMajorityInstance& inst,
                                   const BruteOptions& opts = {}) {
    inst.validate();
    const int n = inst.x_bits(), m = inst.y_bits();
    detail::check_block(n, opts, "brute_edge_majority");
    detail::check_block(m, opts, "brute_edge_majority");
    detail::check_value_width(inst.edge, "brute_edge_majority");
    std::vector<std::uint8_t> scratch;

    Verdict v = detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
        BitString xb = BitString::from_value(x, n);
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
            BitString yb = BitString::from_value(y, m);
            BitString xy = xb.concat(yb);
            BitString label = inst.edge.eval(xy, scratch);
            if (!edge_label_admissible(inst, label.value())) return y;
            if (inst.verifier.eval(label, scratch) != xy) return y;
        }
        return std::nullopt;
    }, m);
    if (v.witness_count > 1)
        throw Error("brute_edge_majority: internal error, two winners found");
    return v;
}

// ---------------------------------------------------------------------------
// Optimization family.

inline Verdict brute_opt(const OptFamilyInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    std::vector<std::uint8_t> scratch;
    switch (inst.variant) {
    case OptVariant::UniqueOpt: {
        const int n = inst.circuit().input_count;
        detail::check_block(n, opts, "brute_opt");
        auto values = detail::value_matrix(inst.circuits, n, opts);
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && values[0][x] <= values[0][y]) return y;
            return std::nullopt;
        });
    }
    case OptVariant::UniqueValue: {
        const int n = inst.circuit().input_count;
        detail::check_block(n, opts, "brute_opt");
        auto values = detail::value_matrix(inst.circuits, n, opts);
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && values[0][x] == values[0][y]) return y;
            return std::nullopt;
        });
    }
    case OptVariant::Consensus: {
        const int n = inst.circuit().input_count;
        detail::check_block(n, opts, "brute_opt");
        auto values = detail::value_matrix(inst.circuits, n, opts);
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                if (y == x) continue;
                for (const auto& row : values)
                    if (row[x] <= row[y]) return y;
            }
            return std::nullopt;
        });
    }
    case OptVariant::Pareto2: {
        const int n = inst.circuit().input_count;
        detail::check_block(n, opts, "brute_opt");
        auto values = detail::value_matrix(inst.circuits, n, opts);
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && values[0][x] <= values[0][y] && values[1][x] <= values[1][y])
                    return y;
            return std::nullopt;
        });
    }
    case OptVariant::StrongDominant: {
        const int n = inst.x_bits();
        detail::check_block(n, opts, "brute_opt");
        detail::check_value_width(inst.circuit(), "brute_opt");
        const Circuit& c = inst.circuit();
        auto payoff = [&](std::uint64_t x, std::uint64_t y) {
            return c.eval_value(BitString::from_value(x, n).concat(BitString::from_value(y, n)),
                                scratch);
        };
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t xp = 0; xp < (std::uint64_t{1} << n); ++xp) {
                if (xp == x) continue;
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                    if (payoff(x, y) <= payoff(xp, y)) return xp;
            }
            return std::nullopt;
        });
    }
    case OptVariant::WinnerThreshold: {
        const int n = inst.x_bits();
        detail::check_block(n, opts, "brute_opt");
        const Circuit& c = inst.circuit();
        auto sat = [&](std::uint64_t x, std::uint64_t y) {
            return c.eval_value(BitString::from_value(x, n).concat(BitString::from_value(y, n)),
                                scratch) != 0;
        };
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (!sat(x, y)) return y; // x must be an all-winner
            for (std::uint64_t xp = x + 1; xp < (std::uint64_t{1} << n); ++xp)
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                    if (sat(xp, y)) return xp; // anything above must be an all-loser
            return std::nullopt;
        });
    }
    case OptVariant::WeakDominant: {
        const int n = inst.x_bits();
        detail::check_block(n, opts, "brute_opt");
        detail::check_value_width(inst.circuit(), "brute_opt");
        const Circuit& c = inst.circuit();
        auto payoff = [&](std::uint64_t x, std::uint64_t y) {
            return c.eval_value(BitString::from_value(x, n).concat(BitString::from_value(y, n)),
                                scratch);
        };
        // literal four-block loop per the problem statement
        return detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t xp = 0; xp < (std::uint64_t{1} << n); ++xp) {
                if (xp == x) continue;
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                    if (payoff(x, y) < payoff(xp, y)) return xp;
                    bool strict_somewhere = false;
                    for (std::uint64_t yp = 0; yp < (std::uint64_t{1} << n); ++yp)
                        if (payoff(x, yp) > payoff(xp, yp)) {
                            strict_somewhere = true;
                            break;
                        }
                    if (!strict_somewhere) return xp;
                }
            }
            return std::nullopt;
        });
    }
    }
    throw Error("brute_opt: unknown variant");
}

// ---------------------------------------------------------------------------
// Quantified satisfiability.

inline Verdict brute_qbf(const QbfInstance& inst, const BruteOptions& opts = {}) {
    inst.validate();
    const int n = inst.block_bits();
    detail::check_block(n, opts, "brute_qbf");
    std::vector<std::uint8_t> scratch;
    const Circuit& psi = inst.formula;
    auto sat2 = [&](std::uint64_t x, std::uint64_t y) {
        return psi.eval_value(BitString::from_value(x, n).concat(BitString::from_value(y, n)),
                              scratch) != 0;
    };

    switch (inst.pattern) {
    case QbfPattern::Unsat: {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
            if (psi.eval_value(x, scratch) != 0) {
                Verdict v = Verdict::no();
                v.refutation = {BitString::from_value(x, n), BitString::from_value(x, n)};
                return v;
            }
        Verdict v;
        v.yes = true;
        v.witness_count = 1;
        return v;
    }
    case QbfPattern::ExistsForall:
    case QbfPattern::UniqueExistsForall: {
        Verdict v = detail::scan_labels(n, [&](std::uint64_t x) -> std::optional<std::uint64_t> {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (!sat2(x, y)) return y;
            return std::nullopt;
        });
        if (inst.pattern == QbfPattern::UniqueExistsForall && v.witness_count > 1)
            return Verdict::no(); // two all-winner strings refute uniqueness
        return v;
    }
    case QbfPattern::ForallExists: {
        // forall x exists y with psi(x||y) = 0
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            bool found = false;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (!sat2(x, y)) {
                    found = true;
                    break;
                }
            if (!found) {
                Verdict v = Verdict::no();
                v.refutation = {BitString::from_value(x, n), BitString::from_value(x, n)};
                return v;
            }
        }
        Verdict v;
        v.yes = true;
        v.witness_count = 1;
        return v;
    }
    }
    throw Error("brute_qbf: unknown pattern");
}

// ---------------------------------------------------------------------------
// Single-candidate check: does this witness satisfy the problem's
// quantified condition? Used to audit mapped witnesses and certificates of
// the ambiguous problems, where enumeration order could pick a different
// one.

inline bool qualifies(const ProblemInstance& inst, const BitString& witness,
                      const BruteOptions& opts = {}) {
    struct Visitor {
        const BitString& w;
        const BruteOptions& opts;
        bool operator()(const TournamentInstance& t) const {
            const int n = t.label_bits();
            detail::check_block(n, opts, "qualifies");
            if (w.width() != n) return false;
            std::vector<std::uint8_t> scratch;
            std::uint64_t x = w.value();
            if (t.flavor == TournamentFlavor::MultiWeak) {
                auto edge = [&](std::uint64_t a, std::uint64_t b, std::uint64_t z) {
                    BitString in = BitString::from_value(a, n)
                                       .concat(BitString::from_value(b, n))
                                       .concat(BitString::from_value(z, n));
                    return t.circuit.eval_value(in, scratch) != 0;
                };
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                    if (y == x) continue;
                    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z)
                        if (!(edge(x, y, z) && !edge(y, x, z))) return false;
                }
                return true;
            }
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && tournament_relation(t, x, y, scratch) != 1) return false;
            return true;
        }
        bool operator()(const CondorcetInstance& c) const {
            const int n = c.candidate_bits();
            detail::check_block(n, opts, "qualifies");
            if (w.width() != n) return false;
            auto values = detail::value_matrix(c.circuits, n, opts);
            std::uint64_t x = w.value();
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && condorcet_margin(values, x, y) <= 0) return false;
            return true;
        }
        bool operator()(const DiceInstance& d) const {
            const int n = d.label_bits();
            detail::check_block(n, opts, "qualifies");
            if (w.width() != n) return false;
            auto faces = detail::value_matrix(d.circuits, n, opts);
            std::uint64_t x = w.value();
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                if (y != x && !dice_beats(d, faces, x, y)) return false;
            return true;
        }
        bool operator()(const GraphDiceInstance&) const { return false; }
        bool operator()(const TspInstance&) const { return false; }
        bool operator()(const Ashg&) const { return false; }
        bool operator()(const EdgeMajorityInstance& e) const {
            const int n = e.x_bits(), m = e.y_bits();
            detail::check_block(m, opts, "qualifies");
            if (w.width() != n) return false;
            std::vector<std::uint8_t> scratch;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
                BitString xy = w.concat(BitString::from_value(y, m));
                BitString label = e.edge.eval(xy, scratch);
                if (!edge_label_admissible(e, label.value())) return false;
                if (e.verifier.eval(label, scratch) != xy) return false;
            }
            return true;
        }
        bool operator()(const OptFamilyInstance& o) const {
            std::vector<std::uint8_t> scratch;
            const int n = o.x_bits();
            detail::check_block(n, opts, "qualifies");
            if (w.width() != n) return false;
            std::uint64_t x = w.value();
            auto val = [&](const Circuit& c, std::uint64_t v) { return c.eval_value(v, scratch); };
            auto val2 = [&](std::uint64_t a, std::uint64_t bb) {
                return o.circuit().eval_value(
                    BitString::from_value(a, n).concat(BitString::from_value(bb, n)), scratch);
            };
            switch (o.variant) {
            case OptVariant::UniqueOpt:
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                    if (y != x && val(o.circuit(), x) <= val(o.circuit(), y)) return false;
                return true;
            case OptVariant::UniqueValue:
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                    if (y != x && val(o.circuit(), x) == val(o.circuit(), y)) return false;
                return true;
            case OptVariant::Consensus:
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                    if (y == x) continue;
                    for (const Circuit& c : o.circuits)
                        if (val(c, x) <= val(c, y)) return false;
                }
                return true;
            case OptVariant::Pareto2:
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                    if (y == x) continue;
                    if (val(o.circuits[0], x) <= val(o.circuits[0], y) &&
                        val(o.circuits[1], x) <= val(o.circuits[1], y))
                        return false;
                }
                return true;
            case OptVariant::StrongDominant:
                for (std::uint64_t xp = 0; xp < (std::uint64_t{1} << n); ++xp) {
                    if (xp == x) continue;
                    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                        if (val2(x, y) <= val2(xp, y)) return false;
                }
                return true;
            case OptVariant::WinnerThreshold:
                for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                    if (val2(x, y) == 0) return false;
                for (std::uint64_t xp = x + 1; xp < (std::uint64_t{1} << n); ++xp)
                    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                        if (val2(xp, y) != 0) return false;
                return true;
            case OptVariant::WeakDominant:
                for (std::uint64_t xp = 0; xp < (std::uint64_t{1} << n); ++xp) {
                    if (xp == x) continue;
                    bool strict = false;
                    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                        if (val2(x, y) < val2(xp, y)) return false;
                        if (val2(x, y) > val2(xp, y)) strict = true;
                    }
                    if (!strict) return false;
                }
                return true;
            }
            return false;
        }
        bool operator()(const QbfInstance& q) const {
            const int n = q.block_bits();
            detail::check_block(n, opts, "qualifies");
            if (q.pattern != QbfPattern::ExistsForall &&
                q.pattern != QbfPattern::UniqueExistsForall)
                return false;
            if (w.width() != n) return false;
            std::vector<std::uint8_t> scratch;
            std::uint64_t x = w.value();
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                BitString in = w.concat(BitString::from_value(y, n));
                if (q.formula.eval_value(in, scratch) == 0) return false;
            }
            if (q.pattern == QbfPattern::UniqueExistsForall) {
                for (std::uint64_t xp = 0; xp < (std::uint64_t{1} << n); ++xp) {
                    if (xp == x) continue;
                    bool all = true;
                    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n) && all; ++y) {
                        BitString in =
                            BitString::from_value(xp, n).concat(BitString::from_value(y, n));
                        all = q.formula.eval_value(in, scratch) != 0;
                    }
                    if (all) return false;
                }
            }
            return true;
        }
    };
    return std::visit(Visitor{witness, opts}, inst.value);
}

// ---------------------------------------------------------------------------
// ASHG strong popularity.

/// Enumerates all partitions (Bell-number budget) and checks
/// phi(pi*, pi) > 0 against every rival. Strong popularity admits at most
/// one witness by definition; the count is asserted anyway.
inline Verdict brute_strong_popular(const Ashg& g, const BruteOptions& opts = {}) {
    g.validate();
    std::uint64_t bell = bell_number(g.agent_count);
    if (bell > static_cast<std::uint64_t>(opts.partition_budget))
        throw BudgetError("brute_strong_popular: Bell(" + std::to_string(g.agent_count) +
                          ") exceeds partition budget");

    std::vector<Partition> parts;
    std::vector<std::vector<std::int64_t>> utils; // utils[p][agent]
    for_each_partition(g.agent_count, [&](const Partition& p) {
        std::vector<int> labels = p.labels();
        std::vector<std::int64_t> u(static_cast<size_t>(g.agent_count));
        for (int a = 0; a < g.agent_count; ++a) u[static_cast<size_t>(a)] = utility(g, labels, a);
        parts.push_back(p);
        utils.push_back(std::move(u));
    });

    auto margin = [&](size_t a, size_t b) {
        long m = 0;
        for (int i = 0; i < g.agent_count; ++i) {
            if (utils[a][static_cast<size_t>(i)] > utils[b][static_cast<size_t>(i)]) ++m;
            else if (utils[b][static_cast<size_t>(i)] > utils[a][static_cast<size_t>(i)]) --m;
        }
        return m;
    };

    Verdict v;
    std::optional<std::pair<Partition, Partition>> refutation;
    for (size_t a = 0; a < parts.size(); ++a) {
        bool all = true;
        for (size_t b = 0; b < parts.size(); ++b) {
            if (a == b) continue;
            if (margin(a, b) <= 0) {
                all = false;
                if (a == 0 && !refutation) refutation = {parts[a], parts[b]};
                break;
            }
        }
        if (all) {
            ++v.witness_count;
            if (!v.witness_partition) {
                v.yes = true;
                v.witness_partition = parts[a];
            }
        }
    }
    if (v.witness_count > 1)
        throw Error("brute_strong_popular: internal error, two strongly popular partitions");
    if (!v.yes) v.refutation_partitions = std::move(refutation);
    return v;
}

/// Pareto optimality check for a partition (no rival weakly preferred by
/// all agents and strictly by one).
inline bool is_pareto_optimal(const Ashg& g, const Partition& pi, const BruteOptions& opts = {}) {
    g.validate();
    std::uint64_t bell = bell_number(g.agent_count);
    if (bell > static_cast<std::uint64_t>(opts.partition_budget))
        throw BudgetError("is_pareto_optimal: partition budget exceeded");
    std::vector<int> base = pi.labels();
    std::vector<std::int64_t> u0(static_cast<size_t>(g.agent_count));
    for (int a = 0; a < g.agent_count; ++a) u0[static_cast<size_t>(a)] = utility(g, base, a);
    bool improved = false;
    for_each_partition(g.agent_count, [&](const Partition& q) {
        if (improved || q == pi) return;
        std::vector<int> lab = q.labels();
        bool weak_all = true, strict_one = false;
        for (int a = 0; a < g.agent_count && weak_all; ++a) {
            std::int64_t u = utility(g, lab, a);
            if (u < u0[static_cast<size_t>(a)]) weak_all = false;
            else if (u > u0[static_cast<size_t>(a)]) strict_one = true;
        }
        if (weak_all && strict_one) improved = true;
    });
    return !improved;
}

// ---------------------------------------------------------------------------
// Dispatcher. GRAPH-DICE and ASHG instances return partition witnesses;
// everything else returns bit-string witnesses.

inline Verdict brute(const ProblemInstance& inst, const BruteOptions& opts = {}) {
    struct Visitor {
        const BruteOptions& opts;
        Verdict operator()(const TournamentInstance& i) const { return brute_tournament(i, opts); }
        Verdict operator()(const CondorcetInstance& i) const { return brute_condorcet(i, opts); }
        Verdict operator()(const DiceInstance& i) const { return brute_dice(i, opts); }
        Verdict operator()(const GraphDiceInstance& i) const { return brute_graph_dice(i, opts); }
        Verdict operator()(const TspInstance& i) const { return brute_tsp(i, opts); }
        Verdict operator()(const EdgeMajorityInstance& i) const {
            return brute_edge_majority(i, opts);
        }
        Verdict operator()(const OptFamilyInstance& i) const { return brute_opt(i, opts); }
        Verdict operator()(const QbfInstance& i) const { return brute_qbf(i, opts); }
        Verdict operator()(const Ashg& i) const { return brute_strong_popular(i, opts); }
    };
    return std::visit(Visitor{opts}, inst.value);
}

} // namespace uwin
