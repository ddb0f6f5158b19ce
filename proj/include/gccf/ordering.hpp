#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "agent_set.hpp"
#include "contraction_graph.hpp"
#include "instance_graph.hpp"

namespace gccf {

/// One bisection step: a near-balanced split of a vertex set and the edges
/// crossing it.
struct cut_result {
    std::vector<unsigned> part_a, part_b;  // ascending; part_a holds the lowest id
    edge_list cut_set;                     // canonical pairs, ascending
};

/// Split `verts` (ascending ids) into two near-equal halves with few
/// crossing edges: grow a region by BFS from the lowest id, then improve
/// with greedy gain-ordered vertex swaps.  A disconnected subgraph splits
/// into the lowest component versus the rest with an empty cut set.
/// Deterministic: every tie breaks on the lower id.
inline cut_result cut(const std::vector<unsigned>& verts, const edge_list& edges) {
    const std::size_t k = verts.size();
    if (k < 2) throw std::invalid_argument("cut requires at least two vertices");

    // local index map
    std::unordered_map<unsigned, unsigned> local;
    local.reserve(k);
    for (unsigned i = 0; i < k; ++i) local.emplace(verts[i], i);
    std::vector<agent_set> adj(k);
    for (const auto& [gi, gj] : edges) {
        auto a = local.find(gi), b = local.find(gj);
        if (a == local.end() || b == local.end())
            throw std::invalid_argument("cut: edge endpoint outside vertex set");
        adj[a->second].insert(b->second);
        adj[b->second].insert(a->second);
    }
    const agent_set all = agent_set::first_n(static_cast<unsigned>(k));

    // BFS from local 0, neighbours in ascending order
    std::vector<unsigned> order;
    order.reserve(k);
    agent_set seen = agent_set::singleton(0);
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        (adj[order[head]] - seen).for_each([&](unsigned x) {
            seen.insert(x);
            order.push_back(x);
        });
    }

    cut_result r;
    if (seen != all) {  // disconnected: lowest component vs the rest
        for (unsigned i = 0; i < k; ++i)
            (seen.contains(i) ? r.part_a : r.part_b).push_back(verts[i]);
        return r;
    }

    const std::size_t target = (k + 1) / 2;
    agent_set in_a;
    for (std::size_t i = 0; i < target; ++i) in_a.insert(order[i]);

    // greedy swap refinement: move the best (a, b) pair across while the
    // cut strictly shrinks
    auto degree_into = [&](unsigned v, const agent_set& side) {
        return static_cast<int>((adj[v] & side).size());
    };
    for (std::size_t pass = 0; pass < k; ++pass) {
        int best_gain = 0;
        unsigned best_a = 0, best_b = 0;
        bool found = false;
        in_a.for_each([&](unsigned a) {
            const agent_set in_b = all - in_a;
            const int da = degree_into(a, in_b) - degree_into(a, in_a);
            in_b.for_each([&](unsigned b) {
                const int db = degree_into(b, in_a) - degree_into(b, in_b);
                const int gain = da + db - 2 * (adj[a].contains(b) ? 1 : 0);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                    found = true;
                }
            });
        });
        if (!found) break;
        in_a.erase(best_a);
        in_a.insert(best_b);
    }

    for (unsigned i = 0; i < k; ++i) (in_a.contains(i) ? r.part_a : r.part_b).push_back(verts[i]);
    if (!r.part_b.empty() && (r.part_a.empty() || r.part_b[0] < r.part_a[0]))
        std::swap(r.part_a, r.part_b);  // part_a owns the lowest id
    for (const auto& [gi, gj] : edges) {
        auto a = local.find(gi)->second, b = local.find(gj)->second;
        if (in_a.contains(a) != in_a.contains(b)) r.cut_set.push_back(canonical_edge(gi, gj));
    }
    std::sort(r.cut_set.begin(), r.cut_set.end());
    return r;
}

/// Reassign contraction ranks so that the edges of each recursive bisection
/// cut come first, breadth-first over subgraphs: the cheapest structures to
/// rule out (those split along sparse frontiers) surface early, which is
/// what makes the bound bite.  Expects the uncontracted instance graph.
inline contraction_graph order_edges(const contraction_graph& g) {
    const unsigned n = g.agent_count();
    if (g.vertex_count() != n)
        throw std::invalid_argument("order_edges expects the uncontracted instance graph");

    struct sub {
        std::vector<unsigned> verts;
        edge_list edges;
    };
    std::deque<sub> queue;
    {
        sub root;
        root.verts.reserve(n);
        for (unsigned i = 0; i < n; ++i) root.verts.push_back(i);
        for (const auto& e : g.edges()) root.edges.emplace_back(e.u, e.v);
        queue.push_back(std::move(root));
    }

    std::unordered_map<std::uint64_t, std::uint32_t> rank_of;
    auto key = [](unsigned i, unsigned j) {
        auto [a, b] = canonical_edge(i, j);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::uint32_t next_rank = 0;

    while (!queue.empty()) {
        sub s = std::move(queue.front());
        queue.pop_front();
        if (s.verts.size() < 2 || s.edges.empty()) continue;

        cut_result c = cut(s.verts, s.edges);
        for (const auto& [i, j] : c.cut_set) rank_of.emplace(key(i, j), next_rank++);

        agent_set side_a;
        for (unsigned v : c.part_a) side_a.insert(v);
        sub a, b;
        a.verts = std::move(c.part_a);
        b.verts = std::move(c.part_b);
        for (const auto& [i, j] : s.edges) {
            if (side_a.contains(i) && side_a.contains(j))
                a.edges.emplace_back(i, j);
            else if (!side_a.contains(i) && !side_a.contains(j))
                b.edges.emplace_back(i, j);
        }
        if (a.verts.size() >= 2 && !a.edges.empty()) queue.push_back(std::move(a));
        if (b.verts.size() >= 2 && !b.edges.empty()) queue.push_back(std::move(b));
    }

    if (rank_of.size() != g.edges().size())
        throw std::logic_error("edge ordering did not rank every edge");
    std::vector<std::uint32_t> new_ranks;
    new_ranks.reserve(g.edges().size());
    for (const auto& e : g.edges()) new_ranks.push_back(rank_of.at(key(e.u, e.v)));
    return g.with_ranks(new_ranks);
}

}  // namespace gccf
