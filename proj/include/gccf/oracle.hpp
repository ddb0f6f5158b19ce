#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agent_set.hpp"
#include "characteristic.hpp"
#include "coalition.hpp"
#include "instance_graph.hpp"

// Reference answers by exhaustive means, deliberately independent of the
// contraction machinery: partitions come from restricted-growth strings,
// feasibility from a plain connectivity check.  Small n only.

namespace gccf {

namespace oracle_detail {

template <class Visit>
void rgs_walk(unsigned n, Visit&& visit) {
    std::vector<unsigned> label(n, 0);
    // depth-first over restricted-growth strings: label[i] <= 1 + max(prefix)
    auto rec = [&](auto&& self, unsigned i, unsigned used) -> void {
        if (i == n) {
            visit(label, used);
            return;
        }
        for (unsigned l = 0; l <= used; ++l) {
            label[i] = l;
            self(self, i + 1, l == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
}

inline void check_small(unsigned n, const char* who) {
    if (n == 0) throw std::invalid_argument(std::string(who) + ": empty instance");
    if (n > 13)
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(n) +
                                    " agents is too large for exhaustive enumeration (max 13)");
}

}  // namespace oracle_detail

/// Every feasible partition (each block connected), canonical block order.
inline std::vector<coalition_structure> enumerate_feasible_partitions(const edge_list& edges,
                                                                      unsigned n) {
    oracle_detail::check_small(n, "enumerate_feasible_partitions");
    const auto adj = adjacency_masks(edges, n);
    std::vector<coalition_structure> out;
    oracle_detail::rgs_walk(n, [&](const std::vector<unsigned>& label, unsigned used) {
        coalition_structure cs(used);
        for (unsigned i = 0; i < n; ++i) cs[label[i]].insert(i);
        for (const auto& c : cs)
            if (!block_connected(c, adj)) return;
        out.push_back(std::move(cs));  // RGS blocks are already lowest-first
    });
    return out;
}

/// Best structure in an explicit list (first maximum wins).
inline std::pair<coalition_structure, double> optimum_over(
    const std::vector<coalition_structure>& feasible, const characteristic_function& f) {
    if (feasible.empty()) throw std::invalid_argument("optimum_over: no feasible structures");
    const coalition_structure* best = nullptr;
    double best_v = 0.0;
    for (const auto& cs : feasible) {
        const double v = structure_value(cs, f);
        if (!best || v > best_v) {
            best = &cs;
            best_v = v;
        }
    }
    return {*best, best_v};
}

/// Exhaustive optimum over all feasible partitions.
inline std::pair<coalition_structure, double> brute_force_optimum(
    const edge_list& edges, unsigned n, const characteristic_function& f) {
    oracle_detail::check_small(n, "brute_force_optimum");
    const auto adj = adjacency_masks(edges, n);
    coalition_structure best;
    double best_v = 0.0;
    bool have = false;
    oracle_detail::rgs_walk(n, [&](const std::vector<unsigned>& label, unsigned used) {
        coalition_structure cs(used);
        for (unsigned i = 0; i < n; ++i) cs[label[i]].insert(i);
        for (const auto& c : cs)
            if (!block_connected(c, adj)) return;
        const double v = structure_value(cs, f);
        if (!have || v > best_v) {
            best = cs;
            best_v = v;
            have = true;
        }
    });
    if (!have) throw std::logic_error("no feasible partition found");  // cannot happen: singletons
    return {best, best_v};
}

/// Number of feasible partitions, counted without enumerating them: over
/// subsets S, f(S) = sum over connected subsets C of S containing min(S) of
/// f(S minus C).  Handles sizes far beyond the enumeration oracle.
inline std::uint64_t count_feasible_partitions(const edge_list& edges, unsigned n) {
    if (n == 0) throw std::invalid_argument("count_feasible_partitions: empty instance");
    if (n > 24)
        throw std::invalid_argument("count_feasible_partitions: " + std::to_string(n) +
                                    " agents is too large (max 24)");
    validate_edges(edges, n);
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [i, j] : edges) {
        adj[i] |= std::uint32_t{1} << j;
        adj[j] |= std::uint32_t{1} << i;
    }
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;  // n <= 24, shift is safe
    std::unordered_map<std::uint32_t, std::uint64_t> memo;

    auto count = [&](auto&& self, std::uint32_t s) -> std::uint64_t {
        if (s == 0) return 1;
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        const unsigned v = static_cast<unsigned>(std::countr_zero(s));
        std::uint64_t total = 0;
        // enumerate each connected subset C of s containing v exactly once:
        // ext holds the open frontier, visited everything already claimed or
        // declined on this path.
        auto grow = [&](auto&& gself, std::uint32_t c, std::uint32_t ext,
                        std::uint32_t visited) -> void {
            total += self(self, s & ~c);
            while (ext) {
                const std::uint32_t u = ext & (0 - ext);
                ext &= ~u;
                const unsigned ui = static_cast<unsigned>(std::countr_zero(u));
                const std::uint32_t adds = adj[ui] & s & ~visited;
                gself(gself, c | u, ext | adds, visited | adds);
            }
        };
        const std::uint32_t c0 = std::uint32_t{1} << v;
        const std::uint32_t ext0 = adj[v] & s & ~c0;
        grow(grow, c0, ext0, c0 | ext0);
        memo.emplace(s, total);
        return total;
    };
    return count(count, full);
}

}  // namespace gccf
