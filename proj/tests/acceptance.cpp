// Acceptance suite: ten end-to-end criteria covering solver correctness,
// bound soundness, anytime guarantees, pruning effectiveness, parallel
// equivalence and generator reproducibility.  Prints one PASS/FAIL line per
// criterion; the exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gccf/bounds.hpp"
#include "gccf/instances.hpp"
#include "gccf/oracle.hpp"
#include "gccf/ordering.hpp"
#include "gccf/search.hpp"

using namespace gccf;

namespace {

// ---------------------------------------------------------------- utilities

bool near(double a, double b, double rel_tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= rel_tol * scale;
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t k = xs.size();
    return k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

edge_list complete_graph(unsigned n) {
    edge_list e;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return e;
}

edge_list path_graph(unsigned n) {
    edge_list e;
    for (unsigned i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

edge_list star_graph(unsigned n) {
    edge_list e;
    for (unsigned i = 1; i < n; ++i) e.emplace_back(0, i);
    return e;
}

coalition_size_function zero_distance_function(unsigned n, double alpha) {
    coalition_size_params p;
    p.agents = n;
    p.alpha = alpha;
    p.distances.assign(static_cast<std::size_t>(n) * n, 0.0);
    return coalition_size_function(p);
}

// connectivity for graphs beyond the agent-set capacity
bool plain_connected(const edge_list& edges, unsigned n) {
    std::vector<std::vector<unsigned>> adj(n);
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<bool> seen(n, false);
    std::vector<unsigned> queue{0};
    seen[0] = true;
    unsigned reached = 1;
    while (!queue.empty()) {
        const unsigned v = queue.back();
        queue.pop_back();
        for (unsigned w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
    }
    return reached == n;
}

constexpr function_kind all_kinds[] = {function_kind::energy, function_kind::edge_sum,
                                       function_kind::coalition_size};

struct criterion_result {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------- criteria

// 1: the solver's optimum matches an exhaustive, solver-independent oracle.
criterion_result criterion_oracle_equivalence() {
    constexpr double tol = 1e-9;
    unsigned total = 0, bad = 0;
    for (unsigned n : {6u, 8u, 10u, 12u})
        for (unsigned m : {1u, 2u, 3u})
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                const auto edges = barabasi_albert(n, m, seed);
                const auto feasible = enumerate_feasible_partitions(edges, n);
                for (auto kind : all_kinds) {
                    const auto ins = make_instance(kind, n, edges, seed);
                    const auto f = make_function(ins);
                    memoized_function mf(*f);
                    const auto ref = optimum_over(feasible, mf);
                    const auto r = cfss(order_edges(to_contraction_graph(ins)), *f);
                    ++total;
                    const bool ok = r.completed && near(r.best_value, ref.second, tol) &&
                                    is_feasible(r.best, edges, n) &&
                                    near(structure_value(r.best, *f), r.best_value, tol);
                    if (!ok) ++bad;
                }
            }
    std::ostringstream d;
    d << (total - bad) << "/" << total
      << " optima match exhaustive enumeration (n in {6,8,10,12}, m in {1,2,3}, 20 seeds, "
         "3 functions, rel tol 1e-9)";
    return {bad == 0, d.str()};
}

// 2: the contraction tree generates each feasible structure exactly once.
criterion_result criterion_structure_counts() {
    unsigned bad = 0;
    std::ostringstream d;

    auto expect_count = [&](const edge_list& edges, unsigned n, std::uint64_t want) {
        auto f = zero_distance_function(n, 2.2);
        auto r = enumerate_structures(contraction_graph::from_edge_list(edges, n), f);
        if (!(r.completed && r.nodes_pruned == 0 && r.nodes_visited == want)) ++bad;
        return r.nodes_visited;
    };

    expect_count(complete_graph(3), 3, 5);
    expect_count({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4, 12);
    expect_count(path_graph(3), 3, 4);
    const std::uint64_t bell[] = {5, 15, 52, 203, 877};
    for (unsigned n = 3; n <= 7; ++n) expect_count(complete_graph(n), n, bell[n - 3]);
    // random graphs: the tree count equals the independent partition count
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto edges = barabasi_albert(10, 2, seed);
        expect_count(edges, 10, count_feasible_partitions(edges, 10));
    }
    d << "traversal counts equal feasible-partition counts on triangle/cycle/path, "
         "K3..K7 (Bell numbers), and 3 random graphs"
      << (bad ? " with " + std::to_string(bad) + " mismatches" : "");
    return {bad == 0, d.str()};
}

// 3: every node's bound dominates everything in its subtree.
criterion_result criterion_bound_soundness() {
    constexpr double tol = 1e-9;
    unsigned violations = 0;
    std::uint64_t nodes = 0;

    std::function<double(const contraction_graph&, const characteristic_function&,
                         const edge_sum_function*)>
        walk = [&](const contraction_graph& node, const characteristic_function& f,
                   const edge_sum_function* es) -> double {
        ++nodes;
        const double own = structure_value(node.vertices(), f);
        double best = own;
        for (const auto& child : node.children()) best = std::max(best, walk(child, f, es));
        const double m = bound_m(node, f);
        const double scale = std::max({1.0, std::fabs(m), std::fabs(best)});
        if (m < best - tol * scale) ++violations;
        if (node.green_count() == 0 && std::fabs(m - own) > tol * scale) ++violations;
        if (es) {
            const double b = bound_edge_sum(node, *es);
            if (b < best - tol * scale) ++violations;  // sound
            if (b > m + tol * scale) ++violations;     // at least as tight as general
        }
        return best;
    };

    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto edges = barabasi_albert(9, 2, seed);
        for (auto kind : all_kinds) {
            const auto ins = make_instance(kind, 9, edges, seed);
            const auto f = make_function(ins);
            memoized_function mf(*f);
            walk(to_contraction_graph(ins), mf, as_edge_sum(mf));
        }
    }
    std::ostringstream d;
    d << "general bound dominates every subtree and is exact on leaves; edge-sum bound "
         "sound and at least as tight ("
      << nodes << " nodes walked, " << violations << " violations, rel tol 1e-9)";
    return {violations == 0, d.str()};
}

// 4: the anytime bound tightens monotonically and sandwiches the optimum.
criterion_result criterion_anytime_chain() {
    unsigned violations = 0, chains = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ins = make_instance(function_kind::energy, 10, barabasi_albert(10, 2, seed),
                                       seed);
        const auto f = make_function(ins);
        const auto root = order_edges(to_contraction_graph(ins));
        const auto exact = cfss(root, *f);
        if (!exact.completed) ++violations;

        // a zero budget must stop at the root with the root's own bound
        {
            budget b;
            b.node_limit = 0;
            const auto r = cfss_anytime(root, *f, b);
            if (r.completed || r.nodes_visited != 0 || r.nodes_pruned != 0) ++violations;
            if (!near(r.best_value, structure_value(root.partition(), *f), 1e-12)) ++violations;
            if (!near(r.upper_bound, std::max(r.best_value, bound_m(root, *f)), 1e-12))
                ++violations;
        }

        double prev_best = -std::numeric_limits<double>::infinity();
        double prev_upper = std::numeric_limits<double>::infinity();
        bool finished = false;
        for (std::uint64_t limit = 1; limit <= (1u << 20) && !finished; limit *= 2) {
            budget b;
            b.node_limit = limit;
            const auto r = cfss_anytime(root, *f, b);
            const double scale = std::max(1.0, std::fabs(exact.best_value));
            if (r.best_value > exact.best_value + 1e-9 * scale) ++violations;
            if (r.upper_bound < exact.best_value - 1e-9 * scale) ++violations;
            if (r.best_value < prev_best - 1e-12 * scale) ++violations;
            if (r.upper_bound > prev_upper + 1e-12 * scale) ++violations;
            if (r.ratio < 1.0) ++violations;
            if (r.completed) {
                if (!near(r.best_value, exact.best_value, 1e-12) || r.ratio != 1.0) ++violations;
                finished = true;
            }
            prev_best = r.best_value;
            prev_upper = r.upper_bound;
        }
        if (!finished) ++violations;
        ++chains;
    }
    std::ostringstream d;
    d << "interval [value, bound] shrinks monotonically to the optimum along doubling node "
         "budgets ("
      << chains << " chains, " << violations << " violations)";
    return {violations == 0, d.str()};
}

// 5: branch and bound visits a small fraction of the feasible space.
criterion_result criterion_pruning_effectiveness() {
    std::vector<double> frac_energy, frac_edgesum;
    bool all_completed = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto edges = barabasi_albert(20, 2, seed);
        const double denom = static_cast<double>(count_feasible_partitions(edges, 20));
        {
            const auto ins = make_instance(function_kind::energy, 20, edges, seed);
            const auto f = make_function(ins);
            const auto r = cfss(order_edges(to_contraction_graph(ins)), *f);
            all_completed = all_completed && r.completed;
            frac_energy.push_back(static_cast<double>(r.nodes_visited) / denom);
        }
        {
            const auto ins = make_instance(function_kind::edge_sum, 20, edges, seed);
            const auto f = make_function(ins);
            const auto r =
                cfss(order_edges(to_contraction_graph(ins)), *f, bound_kind::edge_sum);
            all_completed = all_completed && r.completed;
            frac_edgesum.push_back(static_cast<double>(r.nodes_visited) / denom);
        }
    }
    const double med_e = median(frac_energy);
    const double med_s = median(frac_edgesum);
    std::ostringstream d;
    d << "n=20, 20 seeds: median visited fraction " << med_e << " (energy, need < 0.10) and "
      << med_s << " (edge-sum bound, need < 0.01)";
    return {all_completed && med_e < 0.10 && med_s < 0.01, d.str()};
}

// 6: the cut-based edge order explores no more than the input order, on average.
criterion_result criterion_ordering_direction() {
    std::ostringstream d;
    bool pass = true;
    d << "n=15, 20 seeds, mean nodes visited heuristic-vs-input order:";
    for (auto kind : {function_kind::energy, function_kind::coalition_size}) {
        double sum_h = 0, sum_i = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto ins = make_instance(kind, 15, barabasi_albert(15, 2, seed), seed);
            const auto f = make_function(ins);
            const auto g = to_contraction_graph(ins);
            sum_h += static_cast<double>(cfss(order_edges(g), *f).nodes_visited);
            sum_i += static_cast<double>(cfss(g, *f).nodes_visited);
        }
        pass = pass && sum_h <= sum_i;
        d << ' ' << to_token(kind) << ' ' << sum_h / 20.0 << " vs " << sum_i / 20.0 << ';';
    }
    return {pass, d.str()};
}

// 7: with zero budget the quality guarantee equals the analytic worst case
// N^(alpha-1) for the distance-free coalition-size function.
criterion_result criterion_root_ratio() {
    constexpr double alpha = 2.2;
    unsigned bad = 0;
    std::ostringstream d;
    d << "zero-budget guarantee equals N^(alpha-1):";
    for (unsigned n : {10u, 100u}) {
        auto f = zero_distance_function(n, alpha);
        const auto root = contraction_graph::from_edge_list(star_graph(n), n);
        budget b;
        b.node_limit = 0;
        const auto r = cfss_anytime(root, f, b);
        const double expected = std::pow(double(n), alpha - 1.0);
        const bool ok = !r.completed && r.nodes_visited == 0 &&
                        std::fabs(r.ratio - expected) <= 1e-6 * expected &&
                        near(r.best_value, double(n), 1e-12) &&
                        near(r.upper_bound, std::pow(double(n), alpha), 1e-12);
        if (!ok) ++bad;
        d << " N=" << n << " ratio " << r.ratio << " (want " << expected << ")";
    }
    return {bad == 0, d.str()};
}

// 8: every characteristic function splits into a superadditive plus a
// subadditive part that sum back to the value.
criterion_result criterion_decomposition() {
    constexpr unsigned n = 16;
    constexpr double tol = 1e-9;
    const auto edges = barabasi_albert(n, 2, 1);
    unsigned checked = 0, bad = 0;
    for (auto kind : all_kinds) {
        const auto ins = make_instance(kind, n, edges, 1);
        const auto f = make_function(ins);
        rng r(4242);
        unsigned pairs = 0;
        while (pairs < 1000) {
            agent_set a, b;
            for (unsigned i = 0; i < n; ++i) {
                switch (r.below(3)) {
                    case 0: a.insert(i); break;
                    case 1: b.insert(i); break;
                    default: break;
                }
            }
            if (a.empty() || b.empty()) continue;
            ++pairs;
            const auto ab = a | b;
            const double pa = f->value_plus(a), pb = f->value_plus(b),
                         pab = f->value_plus(ab);
            const double ma = f->value_minus(a), mb = f->value_minus(b),
                         mab = f->value_minus(ab);
            const double scale =
                std::max({1.0, std::fabs(pa) + std::fabs(pb), std::fabs(pab),
                          std::fabs(ma) + std::fabs(mb), std::fabs(mab)});
            ++checked;
            if (!near(f->value(ab), pab + mab, tol)) ++bad;          // v = v+ + v-
            if (pab < pa + pb - tol * scale) ++bad;                  // v+ superadditive
            if (mab > ma + mb + tol * scale) ++bad;                  // v- subadditive
        }
    }
    std::ostringstream d;
    d << checked << " disjoint-pair checks at n=16 (1000 pairs per function): value "
         "identity and split inequalities, rel tol 1e-9, with "
      << bad << " violations";
    return {bad == 0, d.str()};
}

// 9: parallel search returns the serial optimum, and four workers beat one
// on wall time for most instances.
criterion_result criterion_parallel() {
    unsigned value_bad = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ins =
            make_instance(function_kind::edge_sum, 18, barabasi_albert(18, 2, seed), seed);
        const auto f = make_function(ins);
        const auto root = order_edges(to_contraction_graph(ins));
        const auto serial = cfss(root, *f, bound_kind::edge_sum);
        for (unsigned workers : {1u, 2u, 4u, 8u}) {
            const auto par = cfss_parallel(root, *f, workers, bound_kind::edge_sum);
            if (!(par.completed && par.ratio == 1.0 &&
                  near(par.best_value, serial.best_value, 1e-12)))
                ++value_bad;
        }
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto ins =
            make_instance(function_kind::energy, 16, barabasi_albert(16, 2, seed), seed);
        const auto f = make_function(ins);
        const auto root = order_edges(to_contraction_graph(ins));
        const auto serial = cfss(root, *f);
        for (unsigned workers : {2u, 4u}) {
            const auto par = cfss_parallel(root, *f, workers);
            if (!(par.completed && near(par.best_value, serial.best_value, 1e-12)))
                ++value_bad;
        }
    }

    unsigned wins = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ins =
            make_instance(function_kind::edge_sum, 20, barabasi_albert(20, 2, seed), seed);
        const auto f = make_function(ins);
        const auto root = order_edges(to_contraction_graph(ins));
        const double t1 = cfss_parallel(root, *f, 1, bound_kind::edge_sum).wall_ms;
        const double t4 = cfss_parallel(root, *f, 4, bound_kind::edge_sum).wall_ms;
        if (t4 <= t1) ++wins;
    }
    std::ostringstream d;
    d << "46 worker runs match the serial optimum (" << value_bad
      << " mismatches); 4 workers at least as fast as 1 on " << wins
      << "/10 instances at n=20 (need >= 7)";
    return {value_bad == 0 && wins >= 7, d.str()};
}

// 10: instance generation is structurally sound and bit-reproducible.
criterion_result criterion_generators() {
    unsigned bad = 0;
    for (unsigned m : {1u, 2u, 3u})
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto edges = barabasi_albert(200, m, seed);
            const std::size_t want =
                std::size_t(m) * (m + 1) / 2 + std::size_t(200 - m - 1) * m;
            if (edges.size() != want) ++bad;
            const double mean_degree = 2.0 * double(edges.size()) / 200.0;
            if (mean_degree < 2.0 * m - 0.5 || mean_degree > 2.0 * m + 0.5) ++bad;
            if (!plain_connected(edges, 200)) ++bad;
            std::set<edge> dedup;
            for (auto [i, j] : edges)
                if (i == j || i >= 200 || j >= 200 || !dedup.insert(canonical_edge(i, j)).second)
                    ++bad;
            if (edges != barabasi_albert(200, m, seed)) ++bad;
        }

    auto render = [](const instance& ins) {
        std::ostringstream ss;
        write_instance(ss, ins);
        return ss.str();
    };
    for (auto kind : all_kinds) {
        const auto e1 = barabasi_albert(50, 2, 7);
        const auto text = render(make_instance(kind, 50, e1, 7));
        if (text != render(make_instance(kind, 50, barabasi_albert(50, 2, 7), 7))) ++bad;
        std::istringstream in(text);
        if (render(read_instance(in)) != text) ++bad;
    }
    std::ostringstream d;
    d << "attachment graphs at n=200 (3 densities, 20 seeds): exact size, mean degree within "
         "2m +/- 0.5, connected, simple, reproducible; instance files regenerate "
         "byte-identically ("
      << bad << " violations)";
    return {bad == 0, d.str()};
}

}  // namespace

int main() {
    struct entry {
        const char* name;
        criterion_result (*run)();
    };
    const entry entries[] = {
        {"oracle equivalence", criterion_oracle_equivalence},
        {"unique structure generation", criterion_structure_counts},
        {"bound soundness", criterion_bound_soundness},
        {"anytime convergence", criterion_anytime_chain},
        {"pruning effectiveness", criterion_pruning_effectiveness},
        {"edge-ordering benefit", criterion_ordering_direction},
        {"zero-budget guarantee", criterion_root_ratio},
        {"value decomposition", criterion_decomposition},
        {"parallel search", criterion_parallel},
        {"instance generation", criterion_generators},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(entries); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = entries[i].run();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!res.pass) ++failures;
        std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1,
                    res.pass ? "PASS" : "FAIL", entries[i].name, res.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
