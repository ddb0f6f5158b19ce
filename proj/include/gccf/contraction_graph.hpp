#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agent_set.hpp"
#include "instance_graph.hpp"

namespace gccf {

enum class edge_colour : std::uint8_t { green, red };

/// Edge between two blocks of the current partition.  Carries the order
/// rank that drives child generation and the signed weight mass of every
/// instance edge it has absorbed (used by the edge-sum bound).
struct block_edge {
    std::uint32_t u = 0, v = 0;  // vertex indices, u < v
    std::uint32_t rank = 0;      // unique; children contract in ascending rank
    edge_colour colour = edge_colour::green;
    double weight_pos = 0.0;  // sum of positive instance-edge weights absorbed
    double weight_neg = 0.0;  // sum of negative instance-edge weights absorbed
};

/// A 2-coloured graph over blocks of agents.  Vertices are disjoint agent
/// sets (a partition of the instance's agents); contracting a green edge
/// merges two blocks, marking red forbids the merge in the whole subtree.
/// Immutable in use: contraction/marking return new graphs.
class contraction_graph {
public:
    contraction_graph() = default;

    /// All-singleton graph from an instance edge list.  Duplicate edges are
    /// merged; ranks follow first appearance in the input.
    static contraction_graph from_edge_list(const edge_list& edges, unsigned n) {
        return from_edge_list(edges, n, {});
    }

    /// Weighted variant: weights[k] belongs to edges[k].  Positive and
    /// negative parts are accumulated separately.
    static contraction_graph from_edge_list(const edge_list& edges, unsigned n,
                                            const std::vector<double>& weights) {
        if (!weights.empty() && weights.size() != edges.size())
            throw std::invalid_argument("weights size does not match edge count");
        validate_edges(edges, n);
        if (n > agent_set::capacity())
            throw std::out_of_range("instance has " + std::to_string(n) +
                                    " agents, compiled capacity is " +
                                    std::to_string(agent_set::capacity()) +
                                    " (rebuild with a larger GCCF_AGENT_SET_WORDS)");
        contraction_graph g;
        g.n_agents_ = n;
        g.vertices_.reserve(n);
        for (unsigned i = 0; i < n; ++i) g.vertices_.push_back(agent_set::singleton(i));
        g.edges_.reserve(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            auto [i, j] = canonical_edge(edges[k].first, edges[k].second);
            double w = weights.empty() ? 0.0 : weights[k];
            bool merged = false;
            for (auto& e : g.edges_) {
                if (e.u == i && e.v == j) {
                    e.weight_pos += w > 0 ? w : 0.0;
                    e.weight_neg += w < 0 ? w : 0.0;
                    merged = true;
                    break;
                }
            }
            if (merged) continue;
            block_edge e;
            e.u = i;
            e.v = j;
            e.rank = static_cast<std::uint32_t>(g.edges_.size());
            e.colour = edge_colour::green;
            e.weight_pos = w > 0 ? w : 0.0;
            e.weight_neg = w < 0 ? w : 0.0;
            g.edges_.push_back(e);
        }
        return g;
    }

    unsigned agent_count() const { return n_agents_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<agent_set>& vertices() const { return vertices_; }

    /// Index of the block currently holding `agent`.
    std::size_t vertex_index_of(unsigned agent) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].contains(agent)) return i;
        throw std::out_of_range("agent " + std::to_string(agent) + " not in any block");
    }

    /// Edges in ascending rank order.
    const std::vector<block_edge>& edges() const { return edges_; }

    std::size_t green_count() const {
        std::size_t c = 0;
        for (const auto& e : edges_)
            if (e.colour == edge_colour::green) ++c;
        return c;
    }

    std::optional<std::size_t> find_edge(unsigned u, unsigned v) const {
        auto [a, b] = canonical_edge(u, v);
        for (std::size_t k = 0; k < edges_.size(); ++k)
            if (edges_[k].u == a && edges_[k].v == b) return k;
        return std::nullopt;
    }

    /// Contract the green edge between vertices u and v.
    contraction_graph contracted(unsigned u, unsigned v) const {
        auto pos = find_edge(u, v);
        if (!pos)
            throw std::invalid_argument("no edge between vertices " + std::to_string(u) + " and " +
                                        std::to_string(v));
        return contracted_at(*pos);
    }

    /// Contract the edge at position `pos` of edges().  Parallel edges that
    /// arise are merged: red wins, rank is the minimum, weights accumulate.
    contraction_graph contracted_at(std::size_t pos) const {
        if (pos >= edges_.size()) throw std::out_of_range("edge position out of range");
        const block_edge& ce = edges_[pos];
        if (ce.colour == edge_colour::red)
            throw std::invalid_argument("cannot contract a red edge (vertices " +
                                        std::to_string(ce.u) + "," + std::to_string(ce.v) + ")");
        const unsigned u = ce.u, v = ce.v;  // u < v
        contraction_graph out;
        out.n_agents_ = n_agents_;
        out.vertices_ = vertices_;
        out.vertices_[u] |= vertices_[v];
        out.vertices_.erase(out.vertices_.begin() + static_cast<std::ptrdiff_t>(v));
        out.edges_.reserve(edges_.size() - 1);

        // Only edges incident to the merged vertex can become parallel; track
        // their slots by opposite endpoint.
        constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
        std::vector<std::uint32_t> slot(out.vertices_.size(), none);
        auto remap = [u, v](std::uint32_t x) { return x == v ? u : (x > v ? x - 1 : x); };
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            if (k == pos) continue;
            const block_edge& e = edges_[k];
            std::uint32_t a = remap(e.u), b = remap(e.v);
            if (a > b) std::swap(a, b);
            if (a == u || b == u) {  // incident to the merged vertex
                std::uint32_t& s = slot[a == u ? b : a];
                if (s != none) {
                    block_edge& me = out.edges_[s];
                    if (e.colour == edge_colour::red) me.colour = edge_colour::red;
                    // ranks ascend with k, so the existing rank is already the minimum
                    me.weight_pos += e.weight_pos;
                    me.weight_neg += e.weight_neg;
                    continue;
                }
                s = static_cast<std::uint32_t>(out.edges_.size());
            }
            block_edge ne = e;
            ne.u = a;
            ne.v = b;
            out.edges_.push_back(ne);
        }
        return out;
    }

    /// Copy with the edge between u and v marked red.
    contraction_graph marked_red(unsigned u, unsigned v) const {
        auto pos = find_edge(u, v);
        if (!pos)
            throw std::invalid_argument("no edge between vertices " + std::to_string(u) + " and " +
                                        std::to_string(v));
        contraction_graph out = *this;
        out.edges_[*pos].colour = edge_colour::red;
        return out;
    }

    /// Children in the contraction search tree, ascending by rank of the
    /// contracted edge.  Child i contracts the i-th green edge and inherits
    /// all lower-ranked edges as red, so no structure is generated twice.
    std::vector<contraction_graph> children() const {
        std::vector<contraction_graph> out;
        out.reserve(green_count());
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            if (edges_[k].colour != edge_colour::green) continue;
            contraction_graph child = contracted_at(k);
            const std::uint32_t r = edges_[k].rank;
            for (auto& e : child.edges_)
                if (e.rank < r) e.colour = edge_colour::red;
            out.push_back(std::move(child));
        }
        return out;
    }

    /// The coalition structure this node stands for: one block per vertex.
    std::vector<agent_set> partition() const { return vertices_; }

    /// Blocks obtained by contracting every green edge at once (drop red
    /// edges, merge green-connected vertices).  Ordered by lowest agent.
    std::vector<agent_set> residual_components() const {
        const std::size_t nv = vertices_.size();
        std::vector<std::uint32_t> parent(nv);
        for (std::size_t i = 0; i < nv; ++i) parent[i] = static_cast<std::uint32_t>(i);
        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto& e : edges_) {
            if (e.colour != edge_colour::green) continue;
            std::uint32_t a = find(e.u), b = find(e.v);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            parent[b] = a;  // root is the smallest vertex index
        }
        std::vector<agent_set> by_root(nv);
        std::vector<bool> used(nv, false);
        for (std::size_t i = 0; i < nv; ++i) {
            std::uint32_t r = find(static_cast<std::uint32_t>(i));
            by_root[r] |= vertices_[i];
            used[r] = true;
        }
        std::vector<agent_set> out;
        for (std::size_t i = 0; i < nv; ++i)
            if (used[i]) out.push_back(by_root[i]);
        std::sort(out.begin(), out.end(),
                  [](const agent_set& a, const agent_set& b) { return a.lowest() < b.lowest(); });
        return out;
    }

    /// Copy with ranks reassigned: new_ranks[k] is the rank for edges()[k].
    /// Must be a permutation of 0..E-1.  Edges are re-sorted by rank.
    contraction_graph with_ranks(const std::vector<std::uint32_t>& new_ranks) const {
        if (new_ranks.size() != edges_.size())
            throw std::invalid_argument("rank vector size does not match edge count");
        std::vector<bool> seen(edges_.size(), false);
        for (auto r : new_ranks) {
            if (r >= edges_.size() || seen[r])
                throw std::invalid_argument("ranks are not a permutation of 0..E-1");
            seen[r] = true;
        }
        contraction_graph out = *this;
        for (std::size_t k = 0; k < edges_.size(); ++k) out.edges_[k].rank = new_ranks[k];
        std::sort(out.edges_.begin(), out.edges_.end(),
                  [](const block_edge& a, const block_edge& b) { return a.rank < b.rank; });
        return out;
    }

private:
    unsigned n_agents_ = 0;
    std::vector<agent_set> vertices_;
    std::vector<block_edge> edges_;  // invariant: sorted by rank, all ranks distinct
};

}  // namespace gccf
