// uwin: generate, solve, reduce, and verify instances of circuit-defined
// winner problems (tournaments, Condorcet votes, dice games, edge-majority
// graphs, dominance games, hedonic partitions).
//
// Exit codes: 0 = Yes / accepted, 1 = No / rejected, 2 = usage or input
// error, 3 = --check found a verdict mismatch.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uwin/brute.hpp"
#include "uwin/gadgets.hpp"
#include "uwin/generate.hpp"
#include "uwin/oracle.hpp"
#include "uwin/problem_io.hpp"
#include "uwin/reductions.hpp"
#include "uwin/report.hpp"
#include "uwin/tournament.hpp"

using namespace uwin;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

int report_verdict(RunReport& report, const Verdict& v) {
    report.add("verdict", v.yes ? "Yes" : "No");
    if (v.yes) report.add("witness", v.witness_str());
    report.add("witness-count", v.witness_count);
    if (!v.yes && v.refutation)
        report.add("refutation", v.refutation->first.str() + " loses-to " +
                                     v.refutation->second.str());
    if (!v.yes && v.refutation_partitions)
        report.add("refutation", v.refutation_partitions->first.str() + " loses-to " +
                                     v.refutation_partitions->second.str());
    return v.yes ? 0 : 1;
}

// --- solve ------------------------------------------------------------

int cmd_solve(const std::string& file, const std::string& engine, int budget_bits, int jobs,
              const std::string& sat_cmd) {
    Timer timer;
    std::string text = read_file(file);
    ProblemInstance inst = parse_instance(text);
    BruteOptions opts;
    opts.block_budget_bits = budget_bits;
    opts.jobs = jobs;

    RunReport report;
    report.add("command", "solve");
    report.add("problem", inst.problem_name());
    report.add("digest", digest_hex(serialize_instance(inst)));
    report.add("engine", engine);

    int code;
    if (engine == "brute") {
        code = report_verdict(report, brute(inst, opts));
    } else if (engine == "oracle") {
        std::unique_ptr<sat::SatBackend> backend;
        if (sat_cmd.empty()) backend = std::make_unique<sat::InternalBackend>();
        else backend = std::make_unique<sat::ExternalBackend>(sat_cmd);
        OracleRun run = solve_delta2(*backend, inst);
        code = report_verdict(report, run.verdict);
        report.add("oracle-queries", run.stats.query_count);
        report.add("oracle-binary-search", run.stats.binary_search_queries);
        report.add("oracle-witness", run.stats.witness_queries);
        report.add("oracle-uniqueness", run.stats.uniqueness_queries);
    } else {
        throw Error("unknown engine '" + engine + "' (use brute or oracle)");
    }
    report.add("wall-ms", timer.ms());
    report.print(std::cout);
    return code;
}

// --- gen --------------------------------------------------------------

int cmd_gen(const std::string& problem, const GenParams& params, std::uint64_t seed,
            const std::string& out) {
    ProblemInstance inst = gen_random(problem, params, seed);
    std::string text = serialize_instance(inst);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    RunReport report;
    report.add("command", "gen");
    report.add("problem", inst.problem_name());
    report.add("digest", digest_hex(text));
    report.add("seed", static_cast<long long>(seed));
    if (!out.empty()) {
        report.add("out", out);
        report.print(std::cout);
    }
    return 0;
}

// --- reduce -----------------------------------------------------------

int cmd_reduce(const std::string& file, const std::string& kind, const std::string& out,
               bool check, const ReductionParams& params, int budget_bits) {
    Timer timer;
    ProblemInstance source = parse_instance(read_file(file));
    ProblemInstance target = apply_reduction(kind, source, params);
    std::string text = serialize_instance(target);
    if (!out.empty()) write_file(out, text);

    RunReport report;
    report.add("command", "reduce");
    report.add("kind", reduction_kind(kind).id + " (" + reduction_kind(kind).long_name + ")");
    report.add("source-problem", source.problem_name());
    report.add("target-problem", target.problem_name());
    report.add("source-digest", digest_hex(serialize_instance(source)));
    report.add("target-digest", digest_hex(text));
    if (!out.empty()) report.add("out", out);

    int code = 0;
    if (check) {
        BruteOptions opts;
        opts.block_budget_bits = budget_bits;
        Verdict vs = brute(source, opts);
        Verdict vt = brute(target, opts);
        bool ok = vs.yes == vt.yes;
        report.add("check", ok ? "verdicts-match" : "VERDICT-MISMATCH");
        report.add("source-verdict", vs.yes ? "Yes" : "No");
        report.add("target-verdict", vt.yes ? "Yes" : "No");
        if (!ok) code = 3;
    }
    report.add("wall-ms", timer.ms());
    report.print(std::cout);
    return code;
}

// --- verify -----------------------------------------------------------

int cmd_verify(const std::string& file, const std::string& cert_file,
               const std::string& map_file, int budget_bits) {
    Timer timer;
    std::string text = read_file(file);
    RunReport report;
    report.add("command", "verify");

    std::istringstream probe(text);
    std::string first_tok;
    probe >> first_tok;

    int code;
    if (first_tok == "tournament") {
        ExplicitTournament t = parse_tournament(text);
        Certificate cert = parse_certificate(read_file(cert_file));
        report.add("problem", "explicit-tournament");
        bool ok = verify_certificate(t, cert);
        report.add("certificate", cert.kind == Certificate::Kind::Source ? "source" : "cover");
        report.add("result", ok ? "accept" : "reject");
        if (!ok && cert.kind == Certificate::Kind::Cover) {
            for (int v = 0; v < t.vertex_count; ++v) {
                bool covered = false;
                for (int s : cert.cover)
                    if (s != v && t.edge(s, v)) covered = true;
                if (!covered) {
                    report.add("uncovered-vertex", v);
                    break;
                }
            }
        }
        code = ok ? 0 : 1;
    } else if (first_tok == "ashg" || !map_file.empty()) {
        // hedonic partition audit: utilities against the per-role caps
        Ashg game = parse_ashg(text);
        Partition pi = parse_partition(read_file(cert_file));
        if (pi.element_count() != game.agent_count)
            throw Error("partition size does not match the game");
        report.add("problem", "ASHG-STRONG-POPULARITY");
        std::vector<int> labels = pi.labels();
        if (map_file.empty()) throw Error("verify for ashg needs --map <sidecar>");
        // reconstruct roles from the sidecar
        std::istringstream ms(read_file(map_file));
        std::string line;
        std::vector<std::string> role(static_cast<size_t>(game.agent_count), "?");
        std::vector<std::string> gid(static_cast<size_t>(game.agent_count), "-");
        int m_count = 0;
        long x_count = 0;
        while (std::getline(ms, line)) {
            std::istringstream ls(line);
            std::string head, r, g;
            int agent;
            if (!(ls >> head >> agent >> r >> g) || head != "role") continue;
            if (agent < 0 || agent >= game.agent_count) throw Error("sidecar agent out of range");
            role[static_cast<size_t>(agent)] = r;
            gid[static_cast<size_t>(agent)] = g;
            if (r == "V") ++m_count;
            if (r == "X") ++x_count;
        }
        std::set<std::string> and_gadgets;
        for (int a = 0; a < game.agent_count; ++a)
            if (role[static_cast<size_t>(a)] == "W") and_gadgets.insert(gid[static_cast<size_t>(a)]);
        bool ok = true;
        int violations = 0;
        for (int a = 0; a < game.agent_count; ++a) {
            const std::string& r = role[static_cast<size_t>(a)];
            std::int64_t cap;
            if (r == "X") cap = x_count - 1;
            else if (r == "A1" || r == "A0" || r == "LA") cap = 10 * m_count + 1;
            else if (r == "LG") cap = 11;
            else if (r == "W" || r == "Z") cap = 10;
            else if (r == "G1") cap = and_gadgets.count(gid[static_cast<size_t>(a)]) ? 12 : 11;
            else if (r == "G0") cap = and_gadgets.count(gid[static_cast<size_t>(a)]) ? 13 : 11;
            else continue;
            std::int64_t u = utility(game, labels, a);
            if (u > cap) {
                ok = false;
                if (++violations <= 5)
                    report.add("cap-violation", "agent " + std::to_string(a) + " role " + r +
                                                    " utility " + std::to_string(u) + " cap " +
                                                    std::to_string(cap));
            }
        }
        report.add("caps", ok ? "all-within-bounds" : "violated");
        report.add("result", ok ? "accept" : "reject");
        code = ok ? 0 : 1;
    } else {
        // circuit-backed tournament instance
        ProblemInstance inst = parse_instance(text);
        if (!inst.is<TournamentInstance>())
            throw Error("verify supports tournaments, explicit tournaments, and ashg partitions");
        Certificate cert = parse_certificate(read_file(cert_file));
        BruteOptions opts;
        opts.block_budget_bits = budget_bits;
        report.add("problem", inst.problem_name());
        bool ok = verify_certificate(inst.as<TournamentInstance>(), cert, opts);
        report.add("certificate", cert.kind == Certificate::Kind::Source ? "source" : "cover");
        report.add("result", ok ? "accept" : "reject");
        code = ok ? 0 : 1;
    }
    report.add("wall-ms", timer.ms());
    report.print(std::cout);
    return code;
}

// --- tournament (explicit solve-or-certify) -----------------------------

int cmd_tournament(const std::string& file, const std::string& out) {
    ExplicitTournament t = parse_tournament(read_file(file));
    Certificate cert = solve_or_certify(t);
    std::ostringstream os;
    serialize_certificate(cert, os);
    if (!out.empty()) write_file(out, os.str());

    RunReport report;
    report.add("command", "tournament");
    report.add("vertices", t.vertex_count);
    if (cert.kind == Certificate::Kind::Source) {
        report.add("result", "source");
        report.add("source", cert.source);
    } else {
        report.add("result", "cover");
        std::string members;
        for (int s : cert.cover) members += (members.empty() ? "" : " ") + std::to_string(s);
        report.add("cover", members);
        report.add("cover-size", static_cast<long long>(cert.cover.size()));
    }
    report.print(std::cout);
    if (out.empty()) serialize_certificate(cert, std::cout);
    return cert.kind == Certificate::Kind::Source ? 0 : 1;
}

// --- ashg (gadget build) ------------------------------------------------

int cmd_ashg(const std::string& file, const std::string& out, const std::string& map_out,
             const std::string& pistar_out, int budget_bits) {
    ProblemInstance inst = parse_instance(read_file(file));
    if (!inst.is<CondorcetInstance>()) throw Error("ashg expects a CKT-CONDORCET instance file");
    const auto& ci = inst.as<CondorcetInstance>();
    GadgetGame gg = build_ashg_from_condorcet(ci);

    RunReport report;
    report.add("command", "ashg");
    report.add("agents", gg.map.agent_count);
    report.add("x-agents", static_cast<long long>(gg.map.x_agents.size()));
    report.add("voters", static_cast<long long>(gg.map.voters.size()));

    if (!out.empty()) {
        write_file(out, serialize_ashg(gg.game));
        report.add("game", out);
    }
    if (!map_out.empty()) {
        std::ostringstream os;
        serialize_gadget_map(gg.map, os);
        write_file(map_out, os.str());
        report.add("map", map_out);
    }
    BruteOptions opts;
    opts.block_budget_bits = budget_bits;
    Verdict v = brute_condorcet(ci, opts);
    report.add("condorcet-verdict", v.yes ? "Yes" : "No");
    if (v.yes) {
        Partition pi = build_pi_star(gg, *v.witness);
        report.add("condorcet-string", v.witness->str());
        CapReport caps = check_caps(gg, pi);
        report.add("caps", caps.ok ? "all-within-bounds" : "violated");
        if (!pistar_out.empty()) {
            std::ostringstream os;
            serialize_partition(pi, os);
            write_file(pistar_out, os.str());
            report.add("pistar", pistar_out);
        }
    }
    report.print(std::cout);
    return v.yes ? 0 : 1;
}

// --- sat (expose the internal solver as an external-backend target) -----

int cmd_sat(const std::string& file) {
    std::ifstream f(file);
    if (!f) throw Error("cannot open " + file);
    std::string line;
    int vars = -1;
    CnfFormula formula;
    while (std::getline(f, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "p") {
            std::string kind;
            long clauses;
            if (!(ls >> kind >> vars >> clauses) || kind != "cnf")
                throw Error("bad DIMACS header");
            for (int i = 0; i < vars; ++i) formula.new_var();
            continue;
        }
        if (vars < 0) throw Error("clause before DIMACS header");
        std::vector<int> clause;
        int l = std::stoi(tok);
        while (l != 0) {
            clause.push_back(l);
            if (!(ls >> l)) break;
        }
        if (!clause.empty()) formula.add_clause(std::move(clause));
    }
    sat::InternalBackend backend;
    sat::SatResult r = backend.solve(formula);
    if (!r.satisfiable) {
        std::cout << "UNSAT\n";
        return 1;
    }
    std::cout << "SAT\n";
    for (int v = 1; v <= formula.variable_count; ++v)
        std::cout << (r.model[static_cast<size_t>(v) - 1] ? v : -v) << " ";
    std::cout << "0\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circuit-defined winner problems: generate, solve, reduce, verify"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    std::string gen_problem, gen_out;
    GenParams gen_params;
    std::uint64_t gen_seed = 1;
    gen->add_option("--problem", gen_problem, "problem name, e.g. CKT-CONDORCET")->required();
    gen->add_option("--n", gen_params.n, "label/candidate bits per block");
    gen->add_option("--m", gen_params.m, "circuit count");
    gen->add_option("--gates", gen_params.gate_count, "extra gates per circuit");
    gen->add_option("--value-bits", gen_params.value_bits, "output width (0 = default)");
    gen->add_option("--weight-range", gen_params.weight_range, "graph weight range");
    gen->add_option("--agents", gen_params.agents, "ASHG agent count");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "decide an instance file");
    std::string solve_file, solve_engine = "brute", solve_sat_cmd;
    int solve_budget = 12, solve_jobs = 1;
    solve->add_option("file", solve_file, "instance file")->required();
    solve->add_option("--engine", solve_engine, "brute or oracle");
    solve->add_option("--budget", solve_budget, "enumeration bits per quantifier block");
    solve->add_option("--jobs", solve_jobs, "threads for brute enumeration");
    solve->add_option("--sat-cmd", solve_sat_cmd,
                      "external SAT command (given a DIMACS path; absent = internal solver)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "apply a registry reduction");
    std::string red_file, red_kind, red_out;
    bool red_check = false;
    ReductionParams red_params;
    int red_budget = 12;
    reduce->add_option("file", red_file, "source instance file")->required();
    reduce->add_option("--kind", red_kind, "registry id (R1..R25) or long name")->required();
    reduce->add_option("--out", red_out, "target instance file");
    reduce->add_flag("--check", red_check, "brute both sides and compare verdicts");
    reduce->add_option("--target-m", red_params.target_m, "padded voter count (R5)");
    reduce->add_option("--target-k", red_params.target_k, "target threshold (R13)");
    reduce->add_option("--seed", red_params.seed, "code-search seed (R10)");
    reduce->add_option("--budget", red_budget, "enumeration bits for --check");

    // verify
    auto* verify = app.add_subcommand("verify", "check a certificate or partition");
    std::string ver_file, ver_cert, ver_map;
    int ver_budget = 12;
    verify->add_option("file", ver_file, "instance / tournament / ashg file")->required();
    verify->add_option("--cert", ver_cert, "certificate or partition file")->required();
    verify->add_option("--map", ver_map, "gadget role sidecar (ashg cap audit)");
    verify->add_option("--budget", ver_budget, "enumeration bits");

    // tournament
    auto* tour = app.add_subcommand("tournament", "solve-or-certify an explicit tournament");
    std::string tour_file, tour_out;
    tour->add_option("file", tour_file, "tournament file")->required();
    tour->add_option("--out", tour_out, "certificate output file");

    // ashg
    auto* ashg = app.add_subcommand("ashg", "build the hedonic game of a Condorcet instance");
    std::string ashg_file, ashg_out, ashg_map, ashg_pistar;
    int ashg_budget = 12;
    ashg->add_option("file", ashg_file, "CKT-CONDORCET instance file")->required();
    ashg->add_option("--out", ashg_out, "game output file");
    ashg->add_option("--map", ashg_map, "role sidecar output file");
    ashg->add_option("--pistar", ashg_pistar, "designated partition output file");
    ashg->add_option("--budget", ashg_budget, "enumeration bits");

    // sat
    auto* satc = app.add_subcommand("sat", "solve a DIMACS file with the internal solver");
    std::string sat_file;
    satc->add_option("file", sat_file, "DIMACS CNF file")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_problem, gen_params, gen_seed, gen_out);
        if (solve->parsed())
            return cmd_solve(solve_file, solve_engine, solve_budget, solve_jobs, solve_sat_cmd);
        if (reduce->parsed())
            return cmd_reduce(red_file, red_kind, red_out, red_check, red_params, red_budget);
        if (verify->parsed()) return cmd_verify(ver_file, ver_cert, ver_map, ver_budget);
        if (tour->parsed()) return cmd_tournament(tour_file, tour_out);
        if (ashg->parsed()) return cmd_ashg(ashg_file, ashg_out, ashg_map, ashg_pistar, ashg_budget);
        if (satc->parsed()) return cmd_sat(sat_file);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
