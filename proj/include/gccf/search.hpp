#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "characteristic.hpp"
#include "coalition.hpp"
#include "contraction_graph.hpp"

namespace gccf {

/// Which subtree bound the branch-and-bound guard uses.
enum class bound_kind {
    general,   // subadditive mass of the blocks + superadditive mass of the residual
    edge_sum,  // sharper: positive weight still reachable on green edges
};

/// Limits for the anytime solver.  Node expansions are stack pops.
struct budget {
    std::optional<std::chrono::milliseconds> time_limit;
    std::optional<std::uint64_t> node_limit;
    bool any() const { return time_limit.has_value() || node_limit.has_value(); }
};

struct progress_event {
    std::uint64_t nodes_visited = 0;
    std::uint64_t nodes_pruned = 0;
    double best_value = 0.0;
    double elapsed_ms = 0.0;
};

struct progress_options {
    std::function<void(const progress_event&)> callback;
    std::uint64_t every = 0;  // invoke every N pops; 0 disables
};

/// Result of a solve.  When `completed` is false the run stopped on a
/// budget: `upper_bound` still soundly caps the optimum and `ratio` is the
/// guaranteed worst-case quality factor of `best_value` (1 means proven
/// optimal).  For functions whose structure values cross zero the ratio is
/// computed in shifted form against the function's global lower bound; if
/// the incumbent sits exactly on that lower bound the guarantee degenerates
/// and `ratio_degenerate` is set with an infinite ratio.
struct solve_report {
    coalition_structure best;
    double best_value = -std::numeric_limits<double>::infinity();
    double upper_bound = std::numeric_limits<double>::infinity();
    double ratio = 1.0;
    bool ratio_degenerate = false;
    std::uint64_t nodes_visited = 0;
    std::uint64_t nodes_pruned = 0;
    bool completed = false;
    double wall_ms = 0.0;
};

namespace detail {

using search_clock = std::chrono::steady_clock;

/// Monotone shared incumbent: value only ever strictly improves.
struct incumbent {
    std::atomic<double> value{-std::numeric_limits<double>::infinity()};
    std::mutex mu;
    coalition_structure structure;

    void improve(double v, const std::vector<agent_set>& cs) {
        if (!(v > value.load(std::memory_order_relaxed))) return;
        std::scoped_lock lk(mu);
        if (!(v > value.load(std::memory_order_relaxed))) return;
        structure = cs;
        value.store(v, std::memory_order_release);
    }

    coalition_structure snapshot() {
        std::scoped_lock lk(mu);
        return structure;
    }
};

struct drive_limits {
    std::optional<search_clock::time_point> deadline;
    std::optional<std::uint64_t> node_limit;  // max pops across this drive
};

struct drive_stats {
    std::uint64_t visited = 0;
    std::uint64_t pruned = 0;
    bool stopped = false;  // budget hit with work left on the stack
};

inline double eval_bound(const contraction_graph& g, const characteristic_function& f,
                         bound_kind kind, const edge_sum_function* es) {
    return kind == bound_kind::edge_sum ? bound_edge_sum(g, *es) : bound_m(g, f);
}

/// Depth-first walk over the contraction tree.  `stack` seeds the walk and
/// holds the unprocessed frontier when a limit stops it.  With
/// `use_bound`, a popped node expands only when its bound exceeds the
/// incumbent; `root_pop` treats the first pop as the tree root, which is
/// never counted as pruned.  Returns per-drive counters.
inline drive_stats drive(std::vector<contraction_graph>& stack, const characteristic_function& f,
                         incumbent& inc, bool use_bound, bound_kind kind,
                         const edge_sum_function* es, bool root_pop, const drive_limits& lim,
                         const progress_options& progress, search_clock::time_point t0) {
    drive_stats st;
    std::uint64_t pops = 0;
    bool first = root_pop;
    auto tick = [&] {
        if (progress.callback && progress.every && pops % progress.every == 0)
            progress.callback(progress_event{
                st.visited, st.pruned, inc.value.load(std::memory_order_relaxed),
                std::chrono::duration<double, std::milli>(search_clock::now() - t0).count()});
    };
    while (!stack.empty()) {
        if (lim.node_limit && pops >= *lim.node_limit) {
            st.stopped = true;
            break;
        }
        // the clock is coarse anyway; spare the syscall on most pops
        if (lim.deadline && (pops & 255u) == 0 && search_clock::now() >= *lim.deadline) {
            st.stopped = true;
            break;
        }
        contraction_graph node = std::move(stack.back());
        stack.pop_back();
        ++pops;

        bool expand = true;
        if (use_bound) {
            const double m = eval_bound(node, f, kind, es);
            if (!(m > inc.value.load(std::memory_order_acquire))) {
                if (!first) {  // the root pop never counts as pruned
                    ++st.pruned;
                    tick();
                    continue;
                }
                expand = false;  // closed root: still visited below, no expansion
            }
        }
        first = false;

        ++st.visited;
        inc.improve(structure_value(node.vertices(), f), node.vertices());

        if (expand) {
            auto kids = node.children();
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                stack.push_back(std::move(*it));  // reversed: pops ascend by rank
        }
        tick();
    }
    return st;
}

/// Largest subtree bound over a frontier (for the anytime quality bound).
inline double frontier_bound(const std::vector<contraction_graph>& stack,
                             const characteristic_function& f, bool use_bound, bound_kind kind,
                             const edge_sum_function* es) {
    double b = -std::numeric_limits<double>::infinity();
    if (!use_bound) return std::numeric_limits<double>::infinity();
    for (const auto& g : stack) {
        const double m = eval_bound(g, f, kind, es);
        if (m > b) b = m;
    }
    return b;
}

inline void finish_report(solve_report& r, const characteristic_function& f, bool bounded) {
    if (r.completed) {
        r.upper_bound = r.best_value;
        r.ratio = 1.0;
        r.ratio_degenerate = false;
        return;
    }
    if (!bounded) {  // enumeration cut short: nothing certified
        r.upper_bound = std::numeric_limits<double>::infinity();
        r.ratio = std::numeric_limits<double>::infinity();
        return;
    }
    if (r.upper_bound <= r.best_value) {
        // the frontier cannot beat the incumbent: optimal after all
        r.upper_bound = r.best_value;
        r.ratio = 1.0;
        return;
    }
    if (auto lb = f.value_lower_bound()) {
        const double denom = r.best_value - *lb;
        const double num = r.upper_bound - *lb;
        if (denom <= 0.0) {
            r.ratio = std::numeric_limits<double>::infinity();
            r.ratio_degenerate = true;
        } else {
            r.ratio = num / denom;
        }
        return;
    }
    const double a = r.best_value, b = r.upper_bound;
    if (a == 0.0 || (a > 0) != (b > 0)) {
        // sign change without a declared lower bound: no finite guarantee
        r.ratio = std::numeric_limits<double>::infinity();
        r.ratio_degenerate = true;
        return;
    }
    r.ratio = std::max(b / a, a / b);
}

inline const edge_sum_function* resolve_edge_sum(const characteristic_function& f,
                                                 bound_kind kind) {
    if (kind != bound_kind::edge_sum) return nullptr;
    const edge_sum_function* es = as_edge_sum(f);
    if (!es) throw std::invalid_argument("edge-sum bound requires the edgesum function");
    return es;
}

inline solve_report run_serial(const contraction_graph& root, const characteristic_function& f,
                               bool use_bound, bound_kind kind, const budget& lim,
                               const progress_options& progress) {
    const edge_sum_function* es = resolve_edge_sum(f, kind);
    const auto t0 = search_clock::now();
    memoized_function mf(f);

    incumbent inc;
    inc.improve(structure_value(root.vertices(), mf), root.vertices());

    std::vector<contraction_graph> stack;
    stack.push_back(root);

    drive_limits dl;
    if (lim.time_limit) dl.deadline = t0 + *lim.time_limit;
    dl.node_limit = lim.node_limit;

    drive_stats st = drive(stack, mf, inc, use_bound, kind, es, /*root_pop=*/true, dl, progress, t0);

    solve_report r;
    r.best_value = inc.value.load(std::memory_order_relaxed);
    r.best = canonical(inc.snapshot());
    r.nodes_visited = st.visited;
    r.nodes_pruned = st.pruned;
    r.completed = !st.stopped;
    if (st.stopped)
        r.upper_bound = std::max(r.best_value, frontier_bound(stack, mf, use_bound, kind, es));
    finish_report(r, f, use_bound);
    r.wall_ms = std::chrono::duration<double, std::milli>(search_clock::now() - t0).count();
    return r;
}

}  // namespace detail

/// Exhaustive traversal of the contraction tree: every feasible structure
/// is evaluated.  A budget (used by benchmarking) may stop it early, in
/// which case no quality guarantee is produced.
inline solve_report enumerate_structures(const contraction_graph& root,
                                         const characteristic_function& f, const budget& lim = {},
                                         const progress_options& progress = {}) {
    return detail::run_serial(root, f, /*use_bound=*/false, bound_kind::general, lim, progress);
}

/// Branch-and-bound over the contraction tree: a popped node expands only
/// when its subtree bound exceeds the incumbent.  Exact.
inline solve_report cfss(const contraction_graph& root, const characteristic_function& f,
                         bound_kind kind = bound_kind::general,
                         const progress_options& progress = {}) {
    return detail::run_serial(root, f, /*use_bound=*/true, kind, budget{}, progress);
}

/// Budgeted branch-and-bound.  Stops at the time or node limit and reports
/// the best structure found plus a sound upper bound taken over the
/// remaining frontier.  At least one limit must be set.
inline solve_report cfss_anytime(const contraction_graph& root, const characteristic_function& f,
                                 const budget& lim, bound_kind kind = bound_kind::general,
                                 const progress_options& progress = {}) {
    if (!lim.any())
        throw std::invalid_argument("cfss_anytime requires a time or node limit");
    return detail::run_serial(root, f, /*use_bound=*/true, kind, lim, progress);
}

/// Parallel branch-and-bound: the first generation of subtrees is split
/// into a statically assigned half (round-robin) and a dynamically claimed
/// half; workers share the incumbent.  The returned best value always
/// matches the serial solver; the structure may be any optimum.
inline solve_report cfss_parallel(const contraction_graph& root, const characteristic_function& f,
                                  unsigned workers, bound_kind kind = bound_kind::general,
                                  const budget& lim = {}) {
    if (workers == 0) throw std::invalid_argument("cfss_parallel requires at least one worker");
    if (workers == 1) return detail::run_serial(root, f, /*use_bound=*/true, kind, lim, {});

    const edge_sum_function* es = detail::resolve_edge_sum(f, kind);
    const auto t0 = detail::search_clock::now();

    detail::drive_limits dl;
    if (lim.time_limit) dl.deadline = t0 + *lim.time_limit;
    // node limits are not meaningful across racing workers; time only here
    if (lim.node_limit)
        throw std::invalid_argument("cfss_parallel supports time limits only");

    detail::incumbent inc;
    inc.improve(structure_value(root.vertices(), f), root.vertices());

    auto kids = root.children();
    const std::size_t k = kids.size();
    const std::size_t static_count = (k + 1) / 2;
    std::atomic<std::size_t> next{static_count};

    std::vector<detail::drive_stats> stats(workers);
    std::vector<double> leftover(workers, -std::numeric_limits<double>::infinity());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            memoized_function mf(f);
            std::vector<contraction_graph> stack;
            auto run_one = [&](std::size_t idx) {
                stack.clear();
                stack.push_back(kids[idx]);
                detail::drive_stats st =
                    detail::drive(stack, mf, inc, /*use_bound=*/true, kind, es,
                                  /*root_pop=*/false, dl, {}, t0);
                stats[w].visited += st.visited;
                stats[w].pruned += st.pruned;
                if (st.stopped) {
                    stats[w].stopped = true;
                    leftover[w] = std::max(
                        leftover[w], detail::frontier_bound(stack, mf, true, kind, es));
                }
                return !st.stopped;
            };
            for (std::size_t idx = w; idx < static_count; idx += workers) {
                if (!run_one(idx)) {
                    // deadline: account for the statically assigned rest
                    for (std::size_t rest = idx + workers; rest < static_count; rest += workers)
                        leftover[w] = std::max(leftover[w],
                                               detail::eval_bound(kids[rest], mf, kind, es));
                    return;
                }
            }
            for (;;) {
                const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
                if (idx >= k) break;
                if (!run_one(idx)) return;
            }
        });
    }
    for (auto& t : pool) t.join();

    bool stopped = false;
    solve_report r;
    r.nodes_visited = 1;  // the root itself
    for (const auto& st : stats) {
        r.nodes_visited += st.visited;
        r.nodes_pruned += st.pruned;
        stopped = stopped || st.stopped;
    }
    r.completed = !stopped;
    r.best_value = inc.value.load(std::memory_order_relaxed);
    r.best = canonical(inc.snapshot());
    if (stopped) {
        double b = r.best_value;
        for (double lv : leftover) b = std::max(b, lv);
        // dynamic subtrees nobody claimed
        for (std::size_t idx = next.load(); idx < k; ++idx)
            b = std::max(b, detail::eval_bound(kids[idx], f, kind, es));
        r.upper_bound = b;
    }
    detail::finish_report(r, f, /*bounded=*/true);
    r.wall_ms =
        std::chrono::duration<double, std::milli>(detail::search_clock::now() - t0).count();
    return r;
}

}  // namespace gccf
