#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agent_set.hpp"

namespace gccf {

/// Undirected edge as an (i, j) pair of agent ids.  Canonical form is i < j.
using edge = std::pair<unsigned, unsigned>;
using edge_list = std::vector<edge>;

inline edge canonical_edge(unsigned i, unsigned j) {
    return i < j ? edge{i, j} : edge{j, i};
}

/// Throws if any endpoint is out of range or an edge is a self-loop.
inline void validate_edges(const edge_list& edges, unsigned n) {
    for (const auto& [i, j] : edges) {
        if (i >= n || j >= n)
            throw std::out_of_range("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") references an agent outside 0.." + std::to_string(n - 1));
        if (i == j)
            throw std::invalid_argument("self-loop at agent " + std::to_string(i));
    }
}

/// Per-agent neighbour masks.
inline std::vector<agent_set> adjacency_masks(const edge_list& edges, unsigned n) {
    if (n > agent_set::capacity())
        throw std::out_of_range("instance has " + std::to_string(n) +
                                " agents, compiled capacity is " + std::to_string(agent_set::capacity()) +
                                " (rebuild with a larger GCCF_AGENT_SET_WORDS)");
    validate_edges(edges, n);
    std::vector<agent_set> adj(n);
    for (const auto& [i, j] : edges) {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    return adj;
}

/// True when `block` induces a connected subgraph under `adj`.
/// The empty block is vacuously disconnected; singletons are connected.
inline bool block_connected(const agent_set& block, const std::vector<agent_set>& adj) {
    if (block.empty()) return false;
    agent_set reach = agent_set::singleton(block.lowest());
    for (;;) {
        agent_set next = reach;
        reach.for_each([&](unsigned i) { next |= adj[i] & block; });
        if (next == reach) break;
        reach = next;
    }
    return reach == block;
}

/// Text format: first line "n m", then m lines "i j" (0-based).
inline void write_edge_list(std::ostream& os, unsigned n, const edge_list& edges) {
    os << n << ' ' << edges.size() << '\n';
    for (const auto& [i, j] : edges) os << i << ' ' << j << '\n';
}

struct parsed_graph {
    unsigned n = 0;
    edge_list edges;
};

inline parsed_graph read_edge_list(std::istream& is) {
    parsed_graph g;
    std::size_t m = 0;
    if (!(is >> g.n >> m)) throw std::runtime_error("edge list: cannot parse header line 'n m'");
    g.edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        unsigned i, j;
        if (!(is >> i >> j))
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, failed at edge " + std::to_string(k));
        g.edges.emplace_back(i, j);
    }
    validate_edges(g.edges, g.n);
    return g;
}

inline parsed_graph read_edge_list_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file: " + path);
    try {
        return read_edge_list(f);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace gccf
