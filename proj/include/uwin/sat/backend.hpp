#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uwin/cnf.hpp"
#include "uwin/sat/solver.hpp"

namespace uwin::sat {

struct SatResult {
    bool satisfiable = false;
    bool has_model = false;
    std::vector<bool> model; // indexed by variable-1, meaningful iff has_model
};

/// Per-run oracle accounting. Procedures declare a query budget and the
/// phase counters feed the run reports.
struct OracleStats {
    long query_count = 0;
    long binary_search_queries = 0;
    long witness_queries = 0;
    long uniqueness_queries = 0;
};

class SatBackend {
public:
    virtual ~SatBackend() = default;
    virtual SatResult solve(const CnfFormula& f) = 0;
    const OracleStats& stats() const { return stats_; }
    void reset_stats() { stats_ = {}; }

protected:
    void count(OracleStats& s, long OracleStats::*phase) {
        ++s.query_count;
        ++(s.*phase);
    }
    OracleStats stats_;

    friend class Oracle;
};

/// The built-in clause-learning solver; always returns a model on SAT.
class InternalBackend : public SatBackend {
public:
    SatResult solve(const CnfFormula& f) override {
        ++stats_.query_count;
        Solver s(f);
        auto model = s.solve();
        SatResult r;
        r.satisfiable = model.has_value();
        if (model) {
            r.has_model = true;
            r.model = std::move(*model);
        }
        return r;
    }
};

/// Child-process backend. The command is split on whitespace and invoked
/// with the DIMACS file path appended; it must print a line `SAT` followed
/// by a model line of literals (or `s SATISFIABLE` / `v ` lines), or
/// `UNSAT` / `s UNSATISFIABLE`. A missing model is tolerated; callers fall
/// back to per-bit fixing.
class ExternalBackend : public SatBackend {
public:
    explicit ExternalBackend(std::string command, std::string temp_dir = "/tmp")
        : command_(std::move(command)), temp_dir_(std::move(temp_dir)) {}

    SatResult solve(const CnfFormula& f) override {
        ++stats_.query_count;
        std::string path = temp_dir_ + "/uwin_query_" + std::to_string(counter_++) + "_" +
                           std::to_string(reinterpret_cast<std::uintptr_t>(this) & 0xffff) + ".cnf";
        {
            std::ofstream os(path);
            if (!os) throw Error("sat: cannot write " + path);
            write_dimacs(f, os);
        }
        std::string cmd = command_ + " " + path + " 2>/dev/null";
        std::string output = run_and_capture(cmd);
        std::remove(path.c_str());
        return parse_output(output, f.variable_count);
    }

private:
    static std::string run_and_capture(const std::string& cmd) {
        std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
        if (!pipe) throw Error("sat: cannot spawn '" + cmd + "'");
        std::string out;
        char buf[4096];
        size_t got;
        while ((got = fread(buf, 1, sizeof(buf), pipe.get())) > 0) out.append(buf, got);
        return out;
    }

    static SatResult parse_output(const std::string& output, int nvars) {
        SatResult r;
        std::istringstream is(output);
        std::string line;
        bool verdict_seen = false;
        std::vector<int> lits;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok)) continue;
            if (tok == "UNSAT" || (tok == "s" && line.find("UNSATISFIABLE") != std::string::npos)) {
                r.satisfiable = false;
                return r;
            }
            if (tok == "SAT" || (tok == "s" && line.find("SATISFIABLE") != std::string::npos)) {
                verdict_seen = true;
                r.satisfiable = true;
                continue;
            }
            if (verdict_seen) {
                if (tok == "v") { /* literals follow */
                } else {
                    ls.clear();
                    ls.str(line);
                }
                int l;
                while (ls >> l)
                    if (l != 0) lits.push_back(l);
            }
        }
        if (!verdict_seen) throw Error("sat: external solver produced no verdict");
        if (!lits.empty()) {
            r.has_model = true;
            r.model.assign(static_cast<size_t>(nvars), false);
            for (int l : lits) {
                int v = l < 0 ? -l : l;
                if (v >= 1 && v <= nvars) r.model[static_cast<size_t>(v) - 1] = l > 0;
            }
        }
        return r;
    }

    std::string command_;
    std::string temp_dir_;
    long counter_ = 0;
};

} // namespace uwin::sat
