#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "agent_set.hpp"
#include "instance_graph.hpp"

namespace gccf {

/// A coalition structure: disjoint, non-empty agent sets covering the
/// instance's agents.  Canonical form sorts blocks by smallest member.
using coalition_structure = std::vector<agent_set>;

inline coalition_structure canonical(coalition_structure cs) {
    std::sort(cs.begin(), cs.end(),
              [](const agent_set& a, const agent_set& b) { return a.lowest() < b.lowest(); });
    return cs;
}

/// Checks disjointness, non-emptiness and exact cover of {0..n-1}.
inline bool is_partition(const coalition_structure& cs, unsigned n) {
    agent_set seen;
    unsigned total = 0;
    for (const auto& c : cs) {
        if (c.empty()) return false;
        if (seen.intersects(c)) return false;
        seen |= c;
        total += c.size();
    }
    return total == n && seen == agent_set::first_n(n);
}

/// Feasible: a partition whose every block induces a connected subgraph.
inline bool is_feasible(const coalition_structure& cs, const std::vector<agent_set>& adj,
                        unsigned n) {
    if (!is_partition(cs, n)) return false;
    for (const auto& c : cs)
        if (!block_connected(c, adj)) return false;
    return true;
}

inline bool is_feasible(const coalition_structure& cs, const edge_list& edges, unsigned n) {
    return is_feasible(cs, adjacency_masks(edges, n), n);
}

/// "{0 1 3} {2 4}" in canonical order.
inline std::string to_string(const coalition_structure& cs) {
    auto sorted = canonical(cs);
    std::string s;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k) s += ' ';
        s += sorted[k].to_string();
    }
    return s;
}

}  // namespace gccf
