#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "uwin/cnf.hpp"

namespace uwin::sat {

/// Clause-learning SAT solver (watched literals, 1UIP learning, backjumping).
/// Branching is deterministic: lowest-index unassigned variable, positive
/// phase first, so identical formulas always take identical paths.
class Solver {
public:
    explicit Solver(const CnfFormula& f) : nvars_(f.variable_count) {
        assign_.assign(static_cast<size_t>(nvars_) + 1, Unassigned);
        level_.assign(static_cast<size_t>(nvars_) + 1, 0);
        reason_.assign(static_cast<size_t>(nvars_) + 1, -1);
        watches_.assign(2 * (static_cast<size_t>(nvars_) + 1), {});
        ok_ = true;
        for (const auto& cl : f.clauses) add_clause(cl);
    }

    /// Returns a model (index v-1 = value of variable v) or nullopt if UNSAT.
    std::optional<std::vector<bool>> solve() {
        if (!ok_) return std::nullopt;
        if (propagate() != -1) return std::nullopt;
        for (;;) {
            int v = pick_branch();
            if (v == 0) {
                std::vector<bool> model(static_cast<size_t>(nvars_));
                for (int x = 1; x <= nvars_; ++x)
                    model[static_cast<size_t>(x) - 1] = assign_[static_cast<size_t>(x)] == True;
                return model;
            }
            ++decision_level_;
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(pos_lit(v), -1);
            for (;;) {
                int confl = propagate();
                if (confl == -1) break;
                if (decision_level_ == 0) return std::nullopt;
                std::vector<int> learnt;
                int back_level = analyze(confl, learnt);
                backtrack(back_level);
                int cref = attach_learnt(learnt);
                enqueue(learnt[0], cref);
            }
        }
    }

private:
    enum Value : std::int8_t { False = 0, True = 1, Unassigned = 2 };

    // literal encoding: var v -> 2v (positive), 2v+1 (negative)
    static int pos_lit(int v) { return 2 * v; }
    static int from_dimacs(int l) { return l > 0 ? 2 * l : -2 * l + 1; }
    static int neg(int lit) { return lit ^ 1; }
    static int var_of(int lit) { return lit >> 1; }
    static bool sign_of(int lit) { return (lit & 1) != 0; } // true = negated

    Value value_of(int lit) const {
        Value v = assign_[static_cast<size_t>(var_of(lit))];
        if (v == Unassigned) return Unassigned;
        return (v == True) != sign_of(lit) ? True : False;
    }

    void add_clause(const std::vector<int>& dimacs) {
        std::vector<int> cl;
        cl.reserve(dimacs.size());
        for (int l : dimacs) cl.push_back(from_dimacs(l));
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        for (size_t i = 0; i + 1 < cl.size(); ++i)
            if (var_of(cl[i]) == var_of(cl[i + 1])) return; // tautology
        if (cl.size() == 1) {
            if (value_of(cl[0]) == False) ok_ = false;
            else if (value_of(cl[0]) == Unassigned) enqueue(cl[0], -1);
            return;
        }
        attach(std::move(cl));
    }

    int attach(std::vector<int> cl) {
        int cref = static_cast<int>(clauses_.size());
        watches_[static_cast<size_t>(neg(cl[0]))].push_back(cref);
        watches_[static_cast<size_t>(neg(cl[1]))].push_back(cref);
        clauses_.push_back(std::move(cl));
        return cref;
    }

    int attach_learnt(std::vector<int>& learnt) {
        if (learnt.size() == 1) return -1;
        // watch the asserting literal and a literal from the backjump level
        int best = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[static_cast<size_t>(var_of(learnt[i]))] >
                level_[static_cast<size_t>(var_of(learnt[best]))])
                best = static_cast<int>(i);
        std::swap(learnt[1], learnt[static_cast<size_t>(best)]);
        return attach(learnt);
    }

    void enqueue(int lit, int reason_cref) {
        int v = var_of(lit);
        assign_[static_cast<size_t>(v)] = sign_of(lit) ? False : True;
        level_[static_cast<size_t>(v)] = decision_level_;
        reason_[static_cast<size_t>(v)] = reason_cref;
        trail_.push_back(lit);
    }

    /// Unit propagation; returns a conflicting clause ref or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int lit = trail_[qhead_++]; // this literal became true
            std::vector<int>& ws = watches_[static_cast<size_t>(lit)];
            size_t keep = 0;
            for (size_t i = 0; i < ws.size(); ++i) {
                int cref = ws[i];
                std::vector<int>& cl = clauses_[static_cast<size_t>(cref)];
                // ensure the falsified watch sits at cl[1]
                if (cl[0] == neg(lit)) std::swap(cl[0], cl[1]);
                if (value_of(cl[0]) == True) {
                    ws[keep++] = cref;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < cl.size(); ++k) {
                    if (value_of(cl[k]) != False) {
                        std::swap(cl[1], cl[k]);
                        watches_[static_cast<size_t>(neg(cl[1]))].push_back(cref);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = cref;
                if (value_of(cl[0]) == False) {
                    // conflict: restore untouched watches and bail
                    for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                    ws.resize(keep);
                    qhead_ = trail_.size();
                    return cref;
                }
                enqueue(cl[0], cref);
            }
            ws.resize(keep);
        }
        return -1;
    }

    /// First-UIP conflict analysis; fills `learnt` (asserting literal first)
    /// and returns the backjump level.
    int analyze(int confl, std::vector<int>& learnt) {
        std::vector<bool> seen(static_cast<size_t>(nvars_) + 1, false);
        int counter = 0;
        int lit = -1;
        size_t index = trail_.size();
        learnt.push_back(0); // slot for the asserting literal

        int cref = confl;
        for (;;) {
            const std::vector<int>& cl = clauses_[static_cast<size_t>(cref)];
            for (int q : cl) {
                if (lit != -1 && q == lit) continue;
                int v = var_of(q);
                if (seen[static_cast<size_t>(v)] || level_[static_cast<size_t>(v)] == 0) continue;
                seen[static_cast<size_t>(v)] = true;
                if (level_[static_cast<size_t>(v)] == decision_level_)
                    ++counter;
                else
                    learnt.push_back(q);
            }
            // walk back to the next marked literal on the trail
            do {
                --index;
            } while (!seen[static_cast<size_t>(var_of(trail_[index]))]);
            lit = trail_[index];
            seen[static_cast<size_t>(var_of(lit))] = false;
            --counter;
            if (counter == 0) break;
            cref = reason_[static_cast<size_t>(var_of(lit))];
        }
        learnt[0] = neg(lit);

        int back = 0;
        for (size_t i = 1; i < learnt.size(); ++i)
            back = std::max(back, level_[static_cast<size_t>(var_of(learnt[i]))]);
        return back;
    }

    void backtrack(int to_level) {
        if (decision_level_ <= to_level) return;
        size_t bound = static_cast<size_t>(trail_lim_[static_cast<size_t>(to_level)]);
        for (size_t i = trail_.size(); i-- > bound;)
            assign_[static_cast<size_t>(var_of(trail_[i]))] = Unassigned;
        trail_.resize(bound);
        trail_lim_.resize(static_cast<size_t>(to_level));
        qhead_ = trail_.size();
        decision_level_ = to_level;
    }

    int pick_branch() const {
        for (int v = 1; v <= nvars_; ++v)
            if (assign_[static_cast<size_t>(v)] == Unassigned) return v;
        return 0;
    }

    int nvars_;
    bool ok_;
    std::vector<Value> assign_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;
    int decision_level_ = 0;
};

} // namespace uwin::sat
