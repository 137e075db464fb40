#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uwin/ashg.hpp"
#include "uwin/circuit.hpp"
#include "uwin/error.hpp"
#include "uwin/partitions.hpp"

namespace uwin {

// ---------------------------------------------------------------------------
// Instance types, one per decision-problem family.

enum class TournamentFlavor { Weak, Strict, MultiWeak };

/// WEAK-TOURNAMENT-SOURCE / TOURNAMENT-SOURCE / MULTI-WEAK-TOURNAMENT-SOURCE.
/// One circuit with 2n (or 3n) inputs and a single output defines the edge
/// queries over n-bit vertex labels.
struct TournamentInstance {
    Circuit circuit;
    TournamentFlavor flavor = TournamentFlavor::Weak;

    int label_bits() const {
        int div = flavor == TournamentFlavor::MultiWeak ? 3 : 2;
        return circuit.input_count / div;
    }

    void validate() const {
        circuit.validate();
        int div = flavor == TournamentFlavor::MultiWeak ? 3 : 2;
        if (circuit.input_count % div != 0 || circuit.input_count == 0)
            throw ValidationError("tournament: input width must be a multiple of " +
                                  std::to_string(div));
        if (circuit.output_count() != 1)
            throw ValidationError("tournament: circuit must have one output");
    }
};

/// CKT-CONDORCET (and its fixed-arity variant): m voter circuits over n-bit
/// candidates. Output width is uniform across voters but may exceed n; the
/// problem statement's square n->n shape is the special case needed by the
/// hedonic reduction.
struct CondorcetInstance {
    std::vector<Circuit> circuits;

    int candidate_bits() const { return circuits.at(0).input_count; }
    int value_bits() const { return circuits.at(0).output_count(); }

    void validate() const {
        if (circuits.empty()) throw ValidationError("condorcet: need m >= 1 circuits");
        for (const Circuit& c : circuits) {
            c.validate();
            if (c.input_count != candidate_bits() || c.output_count() != value_bits())
                throw ValidationError("condorcet: circuits must share input/output widths");
        }
    }
};

/// CKT-DICE / STRICT-CKT-DICE: m face circuits, n-bit die labels, n'-bit
/// face values. `strict` switches on the lexicographic tie-break disjunct.
struct DiceInstance {
    std::vector<Circuit> circuits;
    bool strict = false;

    int label_bits() const { return circuits.at(0).input_count; }
    int value_bits() const { return circuits.at(0).output_count(); }

    void validate() const {
        if (circuits.empty()) throw ValidationError("dice: need m >= 1 circuits");
        for (const Circuit& c : circuits) {
            c.validate();
            if (c.input_count != label_bits() || c.output_count() != value_bits())
                throw ValidationError("dice: circuits must share input/output widths");
        }
    }
};

/// GRAPH-DICE: integer edge weights including self-loops; partitions of the
/// vertex set play the dice.
struct GraphDiceInstance {
    int vertex_count = 0;
    std::vector<std::vector<std::int64_t>> weights;

    std::int64_t weight(int i, int j) const {
        return weights[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    void validate() const {
        if (vertex_count < 1) throw ValidationError("graph-dice: need at least one vertex");
        if (weights.size() != static_cast<size_t>(vertex_count))
            throw ValidationError("graph-dice: weight matrix shape");
        for (const auto& row : weights)
            if (row.size() != static_cast<size_t>(vertex_count))
                throw ValidationError("graph-dice: weight matrix shape");
    }

    /// Face value of vertex i under partition labels.
    std::int64_t face(int i, const std::vector<int>& labels) const {
        std::int64_t s = 0;
        for (int l = 0; l < vertex_count; ++l)
            if (labels[static_cast<size_t>(l)] == labels[static_cast<size_t>(i)])
                s += weight(i, l);
        return s;
    }
};

/// TSP-UNIQUE-OPT: symmetric nonnegative adjacency matrix.
struct TspInstance {
    int vertex_count = 0;
    std::vector<std::vector<std::int64_t>> weights;

    void validate() const {
        if (vertex_count < 3) throw ValidationError("tsp: need at least three vertices");
        if (weights.size() != static_cast<size_t>(vertex_count))
            throw ValidationError("tsp: weight matrix shape");
        for (int i = 0; i < vertex_count; ++i) {
            if (weights[static_cast<size_t>(i)].size() != static_cast<size_t>(vertex_count))
                throw ValidationError("tsp: weight matrix shape");
            for (int j = 0; j < vertex_count; ++j) {
                if (weights[static_cast<size_t>(i)][static_cast<size_t>(j)] < 0)
                    throw ValidationError("tsp: weights must be nonnegative");
                if (weights[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                    weights[static_cast<size_t>(j)][static_cast<size_t>(i)])
                    throw ValidationError("tsp: weight matrix must be symmetric");
            }
        }
    }
};

/// EDGE-MAJORITY family. C maps (x,y) to an edge label, V maps labels back;
/// the disqualifier is either a threshold k (labels < k are invalid) or an
/// explicit set of invalid labels.
struct EdgeMajorityInstance {
    Circuit edge; // "C": n+m inputs -> m+1 outputs
    Circuit verifier; // "V": m+1 inputs -> n+m outputs
    struct Threshold {
        std::uint64_t k = 1;
    };
    struct Set {
        std::vector<std::uint64_t> labels;
    };
    std::variant<Threshold, Set> disqualifier = Threshold{};

    int x_bits() const { return edge.input_count - y_bits(); }
    int y_bits() const { return verifier.input_count - 1; }
    int label_bits() const { return verifier.input_count; }
    bool balanced() const { return x_bits() == y_bits(); }

    void validate() const {
        edge.validate();
        verifier.validate();
        int m1 = edge.output_count();
        if (verifier.input_count != m1)
            throw ValidationError("edge-majority: verifier input width must equal label width");
        int m = m1 - 1;
        int n = edge.input_count - m;
        if (m < 1 || n < 1)
            throw ValidationError("edge-majority: inconsistent widths");
        if (verifier.output_count() != n + m)
            throw ValidationError("edge-majority: verifier output width must be n+m");
        if (auto* t = std::get_if<Threshold>(&disqualifier)) {
            if (t->k < 1) throw ValidationError("edge-majority: k must be >= 1");
        } else {
            const auto& s = std::get<Set>(disqualifier);
            if (s.labels.empty()) throw ValidationError("edge-majority: set must be non-empty");
            for (std::uint64_t v : s.labels)
                if (m1 < 64 && (v >> m1) != 0)
                    throw ValidationError("edge-majority: set label exceeds label width");
        }
    }
};

enum class OptVariant {
    UniqueOpt,      // CKT-UNIQUE-OPT
    UniqueValue,    // CKT-UNIQUE-VALUE
    Consensus,      // CKT-CONSENSUS
    Pareto2,        // 2-CKT-PARETO
    StrongDominant, // STRONG-DOMINANT-STRATEGY
    WinnerThreshold,// CKT-WINNER-THRESHOLD
    WeakDominant    // WDOM-STRATEGY
};

/// The unique-optimization problem family; arity and width checks per variant.
struct OptFamilyInstance {
    OptVariant variant = OptVariant::UniqueOpt;
    std::vector<Circuit> circuits;

    const Circuit& circuit() const { return circuits.at(0); }

    /// Width of the existential block x.
    int x_bits() const {
        switch (variant) {
        case OptVariant::StrongDominant:
        case OptVariant::WeakDominant:
        case OptVariant::WinnerThreshold:
            return circuit().input_count / 2;
        default:
            return circuit().input_count;
        }
    }

    void validate() const {
        if (circuits.empty()) throw ValidationError("opt: need at least one circuit");
        for (const Circuit& c : circuits) c.validate();
        const Circuit& c0 = circuit();
        switch (variant) {
        case OptVariant::UniqueOpt:
        case OptVariant::UniqueValue:
            if (circuits.size() != 1) throw ValidationError("opt: variant takes one circuit");
            break;
        case OptVariant::Consensus:
            for (const Circuit& c : circuits)
                if (c.input_count != c0.input_count || c.output_count() != c0.output_count())
                    throw ValidationError("consensus: circuits must share widths");
            break;
        case OptVariant::Pareto2:
            if (circuits.size() != 2) throw ValidationError("pareto: takes two circuits");
            if (circuits[1].input_count != c0.input_count ||
                circuits[1].output_count() != c0.output_count())
                throw ValidationError("pareto: circuits must share widths");
            break;
        case OptVariant::StrongDominant:
        case OptVariant::WeakDominant:
            if (circuits.size() != 1) throw ValidationError("opt: variant takes one circuit");
            if (c0.input_count % 2 != 0)
                throw ValidationError("dominant: input width must be 2n");
            break;
        case OptVariant::WinnerThreshold:
            if (circuits.size() != 1) throw ValidationError("opt: variant takes one circuit");
            if (c0.input_count % 2 != 0)
                throw ValidationError("winner-threshold: input width must be 2n");
            if (c0.output_count() != 1)
                throw ValidationError("winner-threshold: circuit must have one output");
            break;
        }
    }
};

enum class QbfPattern { ExistsForall, ForallExists, UniqueExistsForall, Unsat };

/// Quantified satisfiability family over a circuit-represented formula.
struct QbfInstance {
    Circuit formula;
    QbfPattern pattern = QbfPattern::ExistsForall;

    int block_bits() const {
        return pattern == QbfPattern::Unsat ? formula.input_count : formula.input_count / 2;
    }

    void validate() const {
        formula.validate();
        if (formula.output_count() != 1)
            throw ValidationError("qbf: formula must have one output");
        if (pattern != QbfPattern::Unsat && formula.input_count % 2 != 0)
            throw ValidationError("qbf: input width must be 2n");
    }
};

/// Tagged union over every decision problem the tool speaks.
struct ProblemInstance;

using ProblemVariant = std::variant<TournamentInstance, CondorcetInstance, DiceInstance,
                                    GraphDiceInstance, TspInstance, EdgeMajorityInstance,
                                    OptFamilyInstance, QbfInstance, Ashg>;

struct ProblemInstance {
    ProblemVariant value;

    template <class T> bool is() const { return std::holds_alternative<T>(value); }
    template <class T> const T& as() const { return std::get<T>(value); }
    template <class T> T& as() { return std::get<T>(value); }

    void validate() const {
        std::visit([](const auto& v) { v.validate(); }, value);
    }

    std::string problem_name() const;
};

/// Canonical problem names as used in instance files.
inline std::string ProblemInstance::problem_name() const {
    struct Namer {
        std::string operator()(const TournamentInstance& t) const {
            switch (t.flavor) {
            case TournamentFlavor::Weak: return "WEAK-TOURNAMENT-SOURCE";
            case TournamentFlavor::Strict: return "TOURNAMENT-SOURCE";
            case TournamentFlavor::MultiWeak: return "MULTI-WEAK-TOURNAMENT-SOURCE";
            }
            return "?";
        }
        std::string operator()(const CondorcetInstance&) const { return "CKT-CONDORCET"; }
        std::string operator()(const DiceInstance& d) const {
            return d.strict ? "STRICT-CKT-DICE" : "CKT-DICE";
        }
        std::string operator()(const GraphDiceInstance&) const { return "GRAPH-DICE"; }
        std::string operator()(const TspInstance&) const { return "TSP-UNIQUE-OPT"; }
        std::string operator()(const EdgeMajorityInstance& e) const {
            return std::holds_alternative<EdgeMajorityInstance::Set>(e.disqualifier)
                       ? "EDGE-MAJORITY-SET"
                       : (e.balanced() ? "EDGE-MAJORITY-BALANCED" : "EDGE-MAJORITY");
        }
        std::string operator()(const OptFamilyInstance& o) const {
            switch (o.variant) {
            case OptVariant::UniqueOpt: return "CKT-UNIQUE-OPT";
            case OptVariant::UniqueValue: return "CKT-UNIQUE-VALUE";
            case OptVariant::Consensus: return "CKT-CONSENSUS";
            case OptVariant::Pareto2: return "2-CKT-PARETO";
            case OptVariant::StrongDominant: return "STRONG-DOMINANT-STRATEGY";
            case OptVariant::WinnerThreshold: return "CKT-WINNER-THRESHOLD";
            case OptVariant::WeakDominant: return "WDOM-STRATEGY";
            }
            return "?";
        }
        std::string operator()(const Ashg&) const { return "ASHG-STRONG-POPULARITY"; }
        std::string operator()(const QbfInstance& q) const {
            switch (q.pattern) {
            case QbfPattern::ExistsForall: return "EXISTS-FORALL-SAT";
            case QbfPattern::ForallExists: return "FORALL-EXISTS-SAT";
            case QbfPattern::UniqueExistsForall: return "UNIQUE-EXISTS-FORALL-SAT";
            case QbfPattern::Unsat: return "UNSAT";
            }
            return "?";
        }
    };
    return std::visit(Namer{}, value);
}

// ---------------------------------------------------------------------------
// Verdicts.

/// Outcome of a decision procedure. Yes carries the witness; No carries,
/// when cheap, a refuting pair (the defeater of the lexicographically first
/// candidate only, to bound memory). `witness_count` is the number of
/// qualifying witnesses seen by brute enumeration; the unambiguous problems
/// must never report more than one.
struct Verdict {
    bool yes = false;
    std::optional<BitString> witness;
    std::optional<Partition> witness_partition;
    long witness_count = 0;
    std::optional<std::pair<BitString, BitString>> refutation;
    std::optional<std::pair<Partition, Partition>> refutation_partitions;

    static Verdict no() { return {}; }
    static Verdict yes_with(BitString w, long count = 1) {
        Verdict v;
        v.yes = true;
        v.witness = std::move(w);
        v.witness_count = count;
        return v;
    }
    static Verdict yes_with(Partition p, long count = 1) {
        Verdict v;
        v.yes = true;
        v.witness_partition = std::move(p);
        v.witness_count = count;
        return v;
    }

    std::string witness_str() const {
        if (witness) return witness->str();
        if (witness_partition) return witness_partition->str();
        return "";
    }

    bool operator==(const Verdict& o) const {
        if (yes != o.yes) return false;
        if (!yes) return true;
        return witness == o.witness && witness_partition == o.witness_partition;
    }
};

} // namespace uwin
