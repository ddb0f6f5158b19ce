// gccf: generate, solve and benchmark graph-constrained coalition formation
// instances.  Exit codes: 0 success, 1 usage, 2 bad input/IO, 3 internal.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gccf/coalition.hpp"
#include "gccf/instances.hpp"
#include "gccf/oracle.hpp"
#include "gccf/ordering.hpp"
#include "gccf/search.hpp"

namespace {

using nlohmann::json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double pruned_fraction(const gccf::solve_report& r) {
    const double total = static_cast<double>(r.nodes_visited + r.nodes_pruned);
    return total > 0 ? static_cast<double>(r.nodes_pruned) / total : 0.0;
}

json structure_json(const gccf::coalition_structure& cs) {
    json blocks = json::array();
    for (const auto& c : gccf::canonical(cs)) blocks.push_back(c.members());
    return blocks;
}

std::string fmt_ratio(const gccf::solve_report& r) {
    if (r.ratio_degenerate) return "unbounded";
    std::ostringstream os;
    os << r.ratio;
    return os.str();
}

// ---------------------------------------------------------------------- generate

int run_generate(const std::string& out, unsigned n, std::optional<unsigned> ba_m,
                 const std::string& subgraph, std::optional<unsigned> k,
                 const std::string& function, std::uint64_t seed) {
    if (ba_m && !subgraph.empty())
        throw usage_error("--ba-m and --subgraph are mutually exclusive");
    if (!ba_m && subgraph.empty())
        throw usage_error("one of --ba-m or --subgraph is required");
    if (!subgraph.empty() && !k) throw usage_error("--subgraph requires --k");

    gccf::edge_list edges;
    unsigned agents = 0;
    if (ba_m) {
        if (n == 0) throw usage_error("--n is required with --ba-m");
        edges = gccf::barabasi_albert(n, *ba_m, seed);  // validates m < n
        agents = n;
    } else {
        auto host = gccf::read_edge_list_file(subgraph);
        auto sub = gccf::bfs_subgraph(host, *k, seed);
        edges = std::move(sub.edges);
        agents = sub.n;
    }
    auto ins = gccf::make_instance(gccf::kind_from_token(function), agents, std::move(edges), seed);
    gccf::write_instance_file(out, ins);
    std::cout << "wrote " << out << ": n=" << ins.n << " |E|=" << ins.edges.size()
              << " kind=" << gccf::to_token(ins.kind()) << " seed=" << ins.seed << "\n";
    return 0;
}

// ---------------------------------------------------------------------- solve

gccf::bound_kind parse_bound(const std::string& tok) {
    if (tok == "general") return gccf::bound_kind::general;
    if (tok == "edgesum") return gccf::bound_kind::edge_sum;
    throw usage_error("unknown --bound '" + tok + "' (general or edgesum)");
}

int run_solve(const std::string& in, const std::string& mode, std::optional<std::uint64_t> budget_ms,
              unsigned workers, const std::string& edge_order, const std::string& bound_tok,
              const std::string& format, std::uint64_t progress_every) {
    if (mode != "enumerate" && mode != "optimal" && mode != "anytime")
        throw usage_error("unknown --mode '" + mode + "' (enumerate, optimal or anytime)");
    if (mode == "anytime" && !budget_ms) throw usage_error("--mode anytime requires --budget-ms");
    if (mode != "anytime" && budget_ms) throw usage_error("--budget-ms applies to --mode anytime only");
    if (workers > 1 && mode != "optimal") throw usage_error("--workers applies to --mode optimal only");
    if (workers > 1 && progress_every > 0)
        throw usage_error("--progress-every is unavailable with --workers > 1");
    if (edge_order != "heuristic" && edge_order != "input")
        throw usage_error("unknown --edge-order '" + edge_order + "' (heuristic or input)");
    if (format != "text" && format != "csv" && format != "json")
        throw usage_error("unknown --format '" + format + "' (text, csv or json)");
    const gccf::bound_kind bk = parse_bound(bound_tok);

    const gccf::instance ins = gccf::read_instance_file(in);
    if (bk == gccf::bound_kind::edge_sum && ins.kind() != gccf::function_kind::edge_sum)
        throw usage_error("--bound edgesum requires an edgesum instance (this one is " +
                          std::string(gccf::to_token(ins.kind())) + ")");
    auto f = gccf::make_function(ins);
    auto g = gccf::to_contraction_graph(ins);
    if (edge_order == "heuristic") g = gccf::order_edges(g);

    gccf::progress_options progress;
    if (progress_every > 0) {
        progress.every = progress_every;
        if (format == "json") {
            progress.callback = [](const gccf::progress_event& ev) {
                json j{{"event", "progress"},
                       {"visited", ev.nodes_visited},
                       {"pruned", ev.nodes_pruned},
                       {"best_value", ev.best_value},
                       {"elapsed_ms", ev.elapsed_ms}};
                std::cout << j.dump() << "\n";
            };
        } else {
            progress.callback = [](const gccf::progress_event& ev) {
                std::cerr << "progress: visited=" << ev.nodes_visited
                          << " pruned=" << ev.nodes_pruned << " best=" << ev.best_value
                          << " elapsed=" << ev.elapsed_ms << "ms\n";
            };
        }
    }

    // values and bounds must survive a round-trip through scripts
    std::cout << std::setprecision(17);

    gccf::solve_report r;
    if (mode == "enumerate") {
        r = gccf::enumerate_structures(g, *f, {}, progress);
    } else if (mode == "optimal") {
        r = workers > 1 ? gccf::cfss_parallel(g, *f, workers, bk)
                        : gccf::cfss(g, *f, bk, progress);
    } else {
        gccf::budget b;
        b.time_limit = std::chrono::milliseconds(*budget_ms);
        r = gccf::cfss_anytime(g, *f, b, bk, progress);
    }

    if (format == "text") {
        std::cout << "instance: n=" << ins.n << " |E|=" << ins.edges.size()
                  << " kind=" << gccf::to_token(ins.kind()) << " seed=" << ins.seed << "\n";
        std::cout << "mode: " << mode << " (bound=" << bound_tok << ", edge-order=" << edge_order;
        if (workers > 1) std::cout << ", workers=" << workers;
        std::cout << ")\n";
        std::cout << "value: " << r.best_value << "\n";
        std::cout << "structure: " << gccf::to_string(r.best) << "\n";
        std::cout << "bound: " << (r.completed ? r.best_value : r.upper_bound)
                  << "  ratio: " << fmt_ratio(r) << "  completed: " << (r.completed ? "yes" : "no")
                  << "\n";
        std::cout << "nodes: visited=" << r.nodes_visited << " pruned=" << r.nodes_pruned
                  << " pruned-fraction=" << pruned_fraction(r) << "\n";
        std::cout << "time: " << r.wall_ms << " ms\n";
    } else if (format == "csv") {
        std::cout << "n,kind,seed,mode,value,bound,ratio,completed,nodes_visited,nodes_pruned,"
                     "time_ms\n";
        std::cout << ins.n << ',' << gccf::to_token(ins.kind()) << ',' << ins.seed << ',' << mode
                  << ',' << r.best_value << ',' << r.upper_bound << ',' << fmt_ratio(r) << ','
                  << (r.completed ? 1 : 0) << ',' << r.nodes_visited << ',' << r.nodes_pruned
                  << ',' << r.wall_ms << "\n";
    } else {
        json j{{"event", "result"},
               {"n", ins.n},
               {"kind", gccf::to_token(ins.kind())},
               {"seed", ins.seed},
               {"mode", mode},
               {"value", r.best_value},
               {"structure", structure_json(r.best)},
               {"bound", r.upper_bound},
               {"ratio", r.ratio_degenerate ? json() : json(r.ratio)},
               {"ratio_degenerate", r.ratio_degenerate},
               {"completed", r.completed},
               {"nodes_visited", r.nodes_visited},
               {"nodes_pruned", r.nodes_pruned},
               {"pruned_fraction", pruned_fraction(r)},
               {"time_ms", r.wall_ms}};
        std::cout << j.dump() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------- bench

std::vector<unsigned> parse_uint_list(const std::string& csv, const char* flag) {
    std::vector<unsigned> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            const unsigned long v = std::stoul(tok);
            out.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
            throw usage_error(std::string("bad value '") + tok + "' in " + flag);
        }
    }
    if (out.empty()) throw usage_error(std::string(flag) + " must list at least one value");
    return out;
}

std::vector<gccf::function_kind> parse_function_list(const std::string& csv) {
    std::vector<gccf::function_kind> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(gccf::kind_from_token(tok));
        } catch (const std::exception& e) {
            throw usage_error(e.what());
        }
    }
    if (out.empty()) throw usage_error("--functions must list at least one function");
    return out;
}

int run_bench(const std::string& n_list, const std::string& m_list, const std::string& functions,
              unsigned seeds, const std::string& mode, std::optional<std::uint64_t> budget_ms,
              std::optional<std::uint64_t> timeout_ms, const std::string& bound_tok) {
    if (mode != "enumerate" && mode != "optimal" && mode != "anytime")
        throw usage_error("unknown --mode '" + mode + "' (enumerate, optimal or anytime)");
    if (mode == "anytime" && !budget_ms) throw usage_error("--mode anytime requires --budget-ms");
    if (mode != "anytime" && budget_ms) throw usage_error("--budget-ms applies to --mode anytime only");
    if (mode == "anytime" && timeout_ms)
        throw usage_error("--timeout-ms does not apply to --mode anytime (use --budget-ms)");
    if (seeds == 0) throw usage_error("--seeds must be positive");
    const gccf::bound_kind bk = parse_bound(bound_tok);

    const auto ns = parse_uint_list(n_list, "--n-list");
    const auto ms = parse_uint_list(m_list, "--ba-m-list");
    const auto fns = parse_function_list(functions);
    if (bk == gccf::bound_kind::edge_sum)
        for (auto fk : fns)
            if (fk != gccf::function_kind::edge_sum)
                throw usage_error("--bound edgesum requires --functions edgesum only");

    std::cout << std::setprecision(17);
    std::cout << "n,m,function,seed,mode,value,nodes,pruned_fraction,time_ms,completed"
              << std::endl;
    for (unsigned n : ns)
        for (unsigned m : ms)
            for (auto fk : fns)
                for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
                    const char* fk_tok = gccf::to_token(fk);
                    try {
                        auto ins = gccf::make_instance(fk, n, gccf::barabasi_albert(n, m, seed),
                                                       seed);
                        auto f = gccf::make_function(ins);
                        auto g = gccf::order_edges(gccf::to_contraction_graph(ins));
                        gccf::budget b;
                        if (budget_ms) b.time_limit = std::chrono::milliseconds(*budget_ms);
                        if (timeout_ms) b.time_limit = std::chrono::milliseconds(*timeout_ms);
                        gccf::solve_report r;
                        if (mode == "enumerate")
                            r = gccf::enumerate_structures(g, *f, b);
                        else if (mode == "optimal" && !b.any())
                            r = gccf::cfss(g, *f, bk);
                        else
                            r = gccf::cfss_anytime(g, *f, b, bk);
                        std::cout << n << ',' << m << ',' << fk_tok << ',' << seed << ',' << mode
                                  << ',' << r.best_value << ','
                                  << (r.nodes_visited + r.nodes_pruned) << ','
                                  << pruned_fraction(r) << ',' << r.wall_ms << ','
                                  << (r.completed ? 1 : 0) << std::endl;  // flush per row
                    } catch (const std::exception& e) {
                        std::cerr << "bench cell n=" << n << " m=" << m << " function=" << fk_tok
                                  << " seed=" << seed << " failed: " << e.what() << "\n";
                        return 3;  // abort the sweep
                    }
                }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-constrained coalition formation solver"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a random instance file");
    std::string gen_out, gen_subgraph, gen_function = "energy";
    unsigned gen_n = 0;
    std::optional<unsigned> gen_ba_m, gen_k;
    std::uint64_t gen_seed = 1;
    gen->add_option("--out", gen_out, "output instance file")->required();
    gen->add_option("--n", gen_n, "number of agents (with --ba-m)");
    gen->add_option("--ba-m", gen_ba_m, "preferential-attachment edges per new vertex");
    gen->add_option("--subgraph", gen_subgraph, "host graph file (edge-list format)");
    gen->add_option("--k", gen_k, "region size to extract from --subgraph");
    gen->add_option("--function", gen_function, "energy, edgesum or coalsize")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();

    // solve
    auto* sol = app.add_subcommand("solve", "solve an instance file");
    std::string sol_in, sol_mode = "optimal", sol_edge_order = "heuristic",
                sol_bound = "general", sol_format = "text";
    std::optional<std::uint64_t> sol_budget_ms;
    unsigned sol_workers = 1;
    std::uint64_t sol_progress_every = 0;
    sol->add_option("--in", sol_in, "instance file")->required();
    sol->add_option("--mode", sol_mode, "enumerate, optimal or anytime")->capture_default_str();
    sol->add_option("--budget-ms", sol_budget_ms, "time budget for --mode anytime");
    sol->add_option("--workers", sol_workers, "parallel workers (--mode optimal)")
        ->capture_default_str();
    sol->add_option("--edge-order", sol_edge_order, "heuristic or input")->capture_default_str();
    sol->add_option("--bound", sol_bound, "general or edgesum")->capture_default_str();
    sol->add_option("--format", sol_format, "text, csv or json")->capture_default_str();
    sol->add_option("--progress-every", sol_progress_every,
                    "report progress every N node expansions");

    // bench
    auto* ben = app.add_subcommand("bench", "sweep random instances, CSV to stdout");
    std::string ben_n_list, ben_m_list, ben_functions = "energy,edgesum,coalsize",
                ben_mode = "optimal", ben_bound = "general";
    unsigned ben_seeds = 1;
    std::optional<std::uint64_t> ben_budget_ms, ben_timeout_ms;
    ben->add_option("--n-list", ben_n_list, "comma-separated agent counts")->required();
    ben->add_option("--ba-m-list", ben_m_list, "comma-separated attachment densities")->required();
    ben->add_option("--functions", ben_functions, "comma-separated function kinds")
        ->capture_default_str();
    ben->add_option("--seeds", ben_seeds, "seeds per cell (1..N)")->capture_default_str();
    ben->add_option("--mode", ben_mode, "enumerate, optimal or anytime")->capture_default_str();
    ben->add_option("--budget-ms", ben_budget_ms, "per-run budget for --mode anytime");
    ben->add_option("--timeout-ms", ben_timeout_ms,
                    "per-run cap for enumerate/optimal; timed-out rows are incomplete");
    ben->add_option("--bound", ben_bound, "general or edgesum")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return run_generate(gen_out, gen_n, gen_ba_m, gen_subgraph, gen_k, gen_function,
                                gen_seed);
        if (sol->parsed())
            return run_solve(sol_in, sol_mode, sol_budget_ms, sol_workers, sol_edge_order,
                             sol_bound, sol_format, sol_progress_every);
        return run_bench(ben_n_list, ben_m_list, ben_functions, ben_seeds, ben_mode, ben_budget_ms,
                         ben_timeout_ms, ben_bound);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help exits cleanly, parse errors are usage errors
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
