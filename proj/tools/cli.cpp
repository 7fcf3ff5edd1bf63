#include "cli.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bulkrobust/driver.hpp"
#include "bulkrobust/error.hpp"
#include "bulkrobust/generators.hpp"
#include "bulkrobust/oracle.hpp"
#include "bulkrobust/suite.hpp"
#include "bulkrobust/trace_json.hpp"

namespace bulkrobust::cli {

namespace {

Problem problem_from(const std::string& s)
{
    if (s == "st") {
        return Problem::st;
    }
    if (s == "mst") {
        return Problem::mst;
    }
    throw CLI::ValidationError("--problem", "expected st or mst");
}

int solver_threads()
{
    const char* env = std::getenv("SOLVER_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        throw Error("SOLVER_THREADS must be a positive integer");
    }
    return static_cast<int>(v);
}

// Runs work(i) for i in [0, count) on up to `threads` workers; the first exception wins.
void parallel_for(int count, int threads, const std::function<void(int)>& work)
{
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex lock;
    auto worker = [&]() {
        while (true) {
            const int i = next++;
            if (i >= count) {
                return;
            }
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(lock);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min(threads, count); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
    } else {
        save_text(path, text);
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"bulk-robust s-t connection and spanning tree on planar graphs", "bulkrobust"};
    app.require_subcommand(1);

    std::function<int()> action;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run the approximation algorithm");
    std::string solve_in, solve_out, solve_trace, solve_lp;
    bool solve_gaps = false;
    solve_cmd->add_option("-i,--input", solve_in, "instance file")->required();
    solve_cmd->add_option("-o,--output", solve_out, "solution file")->required();
    solve_cmd->add_option("--trace", solve_trace, "write the trace alone to this file");
    solve_cmd->add_option("--lp-dump", solve_lp, "write every level's link LP to this file");
    solve_cmd->add_flag("--gaps", solve_gaps, "measure per-face integrality gaps into the trace");
    solve_cmd->callback([&]() {
        action = [&]() {
            const Instance inst = load_instance(solve_in);
            SolveOptions options;
            options.measure_gaps = solve_gaps;
            options.dump_lp = !solve_lp.empty();
            const SolveResult res = solve(inst, options);
            save_text(solve_out, solution_to_json(inst, res));
            if (!solve_trace.empty()) {
                save_text(solve_trace, trace_to_json(inst, res.trace));
            }
            if (!solve_lp.empty()) {
                std::string text;
                for (const auto& rec : res.trace.levels) {
                    if (!rec.lp_dump.empty()) {
                        text += "/* level " + std::to_string(rec.level) + " */\n" + rec.lp_dump;
                    }
                }
                save_text(solve_lp, text);
            }
            out << "cost " << res.cost << "\n";
            return static_cast<int>(kOk);
        };
    });

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "write a generated instance");
    gen_cmd->require_subcommand(1);
    int rows = 3, cols = 3, depth = 3, count_m = 2, diameter = 2, hk = 2, max_part = 2, max_edges = 4;
    Weight weight_max = 9;
    std::uint64_t gen_seed = 0;
    std::string gen_out, gen_problem = "st", hyper_out, hyper_from;
    auto common = [&](CLI::App* c) {
        c->add_option("--scenarios", count_m, "scenario count m");
        c->add_option("--diameter", diameter, "largest scenario size k");
        c->add_option("--weight-max", weight_max, "weights are drawn from [1, weight-max]");
        c->add_option("--problem", gen_problem, "st or mst");
        c->add_option("--seed", gen_seed, "random seed")->required();
        c->add_option("-o,--output", gen_out, "instance file")->required();
    };
    auto* grid_cmd = gen_cmd->add_subcommand("grid", "rows x cols grid");
    grid_cmd->add_option("--rows", rows);
    grid_cmd->add_option("--cols", cols);
    common(grid_cmd);
    grid_cmd->callback([&]() {
        action = [&]() {
            save_text(gen_out, serialize_instance(gen_grid(rows, cols, ScenarioParams{count_m, diameter},
                                                           weight_max, gen_seed, problem_from(gen_problem))));
            return static_cast<int>(kOk);
        };
    });
    auto* sp_cmd = gen_cmd->add_subcommand("sp", "random series-parallel graph");
    sp_cmd->add_option("--depth", depth);
    common(sp_cmd);
    sp_cmd->callback([&]() {
        action = [&]() {
            save_text(gen_out, serialize_instance(gen_series_parallel(depth, ScenarioParams{count_m, diameter},
                                                                      weight_max, gen_seed,
                                                                      problem_from(gen_problem))));
            return static_cast<int>(kOk);
        };
    });
    auto* hvc_cmd = gen_cmd->add_subcommand("hvc", "hypergraph vertex cover reduction");
    hvc_cmd->add_option("--k", hk, "uniformity (number of parts)");
    hvc_cmd->add_option("--max-part", max_part, "largest part size");
    hvc_cmd->add_option("--max-edges", max_edges, "hyperedges drawn (duplicates dropped)");
    hvc_cmd->add_option("--seed", gen_seed, "random seed");
    hvc_cmd->add_option("--from", hyper_from, "reduce this hypergraph file instead of drawing one");
    hvc_cmd->add_option("--hypergraph-out", hyper_out, "also write the source hypergraph");
    hvc_cmd->add_option("-o,--output", gen_out, "instance file")->required();
    hvc_cmd->callback([&]() {
        action = [&]() {
            const Hypergraph h = hyper_from.empty() ? gen_hypergraph(hk, max_part, max_edges, gen_seed)
                                                    : parse_hypergraph(load_text(hyper_from));
            save_text(gen_out, serialize_instance(reduce_hypergraph_vc(h)));
            if (!hyper_out.empty()) {
                save_text(hyper_out, serialize_hypergraph(h));
            }
            return static_cast<int>(kOk);
        };
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a solution file");
    std::string verify_in, verify_sol;
    verify_cmd->add_option("-i,--input", verify_in, "instance file")->required();
    verify_cmd->add_option("-s,--solution", verify_sol, "solution file")->required();
    verify_cmd->callback([&]() {
        action = [&]() {
            const Instance inst = load_instance(verify_in);
            const SolutionFile sol = parse_solution(inst, load_text(verify_sol));
            const Weight actual = inst.weight_of(sol.chosen);
            if (actual != sol.cost) {
                out << "cost mismatch: file says " << sol.cost << ", edges weigh " << actual << "\n";
                return static_cast<int>(kVerifyFailed);
            }
            if (!is_feasible(inst, sol.chosen)) {
                out << "infeasible: some scenario disconnects the solution\n";
                return static_cast<int>(kVerifyFailed);
            }
            out << "ok cost " << actual << "\n";
            return static_cast<int>(kOk);
        };
    });

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by exhaustive search");
    std::string oracle_in, oracle_h;
    int oracle_edges = 24;
    oracle_cmd->add_option("-i,--input", oracle_in, "instance file");
    oracle_cmd->add_option("--hypergraph", oracle_h, "also solve vertex cover on this hypergraph");
    oracle_cmd->add_option("--max-edges", oracle_edges, "branching budget");
    oracle_cmd->callback([&]() {
        action = [&]() {
            if (oracle_in.empty() && oracle_h.empty()) {
                throw CLI::RequiredError("--input or --hypergraph");
            }
            OracleBudget budget;
            budget.max_edges = oracle_edges;
            nlohmann::ordered_json doc;
            if (!oracle_in.empty()) {
                const Instance inst = load_instance(oracle_in);
                precheck_feasibility(inst);
                const OracleResult r = brute_force_opt(inst, budget);
                doc["opt"] = r.opt;
                doc["witness"] = inst.ids_of(r.witness);
            }
            if (!oracle_h.empty()) {
                const VertexCoverResult vc = brute_force_vc(parse_hypergraph(load_text(oracle_h)), budget);
                doc["vc_opt"] = vc.opt;
                doc["vc_witness"] = vc.witness;
            }
            out << doc.dump() << "\n";
            return static_cast<int>(kOk);
        };
    });

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "solve a generated family and report ratios");
    std::string bench_family = "grid", bench_report;
    int bench_count = 10, bench_oracle = 20;
    std::uint64_t bench_seed = 1;
    bool bench_timing = false;
    bench_cmd->add_option("--family", bench_family, "grid, sp or hvc");
    bench_cmd->add_option("--count", bench_count);
    bench_cmd->add_option("--seed", bench_seed);
    bench_cmd->add_option("--report", bench_report, "CSV file (stdout when omitted)");
    bench_cmd->add_option("--oracle-edges", bench_oracle, "compute OPT only up to this many edges");
    bench_cmd->add_flag("--timing", bench_timing, "fill the wall_ms column");
    bench_cmd->callback([&]() {
        action = [&]() {
            const auto entries = make_family(bench_family, bench_count, bench_seed);
            std::vector<BenchRow> rows(entries.size());
            parallel_for(static_cast<int>(entries.size()), solver_threads(),
                         [&](int i) { rows[static_cast<std::size_t>(i)] = bench_instance(entries[static_cast<std::size_t>(i)], bench_oracle); });
            write_or_print(bench_report, bench_csv(rows, bench_timing), out);
            int code = kOk;
            for (const auto& r : rows) {
                const auto q = r.ratio();
                if (q && *q > r.guarantee() + 1e-9) {
                    err << r.id << ": ratio " << *q << " exceeds the guarantee " << r.guarantee() << "\n";
                    code = kInvariant;
                }
            }
            return code;
        };
    });

    // gap
    auto* gap_cmd = app.add_subcommand("gap", "per-face integrality gaps of the covering problem");
    std::string gap_family = "sp", gap_report;
    int gap_count = 10;
    std::uint64_t gap_seed = 1;
    gap_cmd->add_option("--family", gap_family, "grid, sp or hvc");
    gap_cmd->add_option("--count", gap_count);
    gap_cmd->add_option("--seed", gap_seed);
    gap_cmd->add_option("--report", gap_report, "CSV file (stdout when omitted)");
    gap_cmd->callback([&]() {
        action = [&]() {
            const auto entries = make_family(gap_family, gap_count, gap_seed);
            std::vector<std::vector<GapRow>> per(entries.size());
            parallel_for(static_cast<int>(entries.size()), solver_threads(),
                         [&](int i) { per[static_cast<std::size_t>(i)] = gap_rows(entries[static_cast<std::size_t>(i)]); });
            std::vector<GapRow> rows;
            for (auto& p : per) {
                rows.insert(rows.end(), p.begin(), p.end());
            }
            write_or_print(gap_report, gap_csv(rows), out);
            int code = kOk;
            for (const auto& r : rows) {
                if (r.ratio > 8.0 + 1e-9) {
                    err << r.id << " level " << r.level << " face " << r.face << ": gap " << r.ratio << " exceeds 8\n";
                    code = kInvariant;
                }
            }
            return code;
        };
    });

    std::vector<std::string> argv_store{"bulkrobust"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    try {
        return action ? action() : static_cast<int>(kUsage);
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const InvariantError& e) {
        err << "invariant breach: " << e.what() << "\n";
        return kInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInvariant;
    }
}

} // namespace bulkrobust::cli
