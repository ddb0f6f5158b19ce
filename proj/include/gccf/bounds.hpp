#pragma once

#include <stdexcept>

#include "characteristic.hpp"
#include "contraction_graph.hpp"

namespace gccf {

/// Upper bound on the value of every structure in the subtree rooted at
/// `g`: the subadditive mass of the current blocks plus the superadditive
/// mass of the blocks obtained by contracting all remaining green edges.
/// Sound for any function split into superadditive + subadditive parts.
inline double bound_m(const contraction_graph& g, const characteristic_function& f) {
    double vminus = 0.0;
    for (const auto& c : g.vertices()) vminus += f.value_minus(c);
    double vplus = 0.0;
    for (const auto& c : g.residual_components()) vplus += f.value_plus(c);
    return vminus + vplus;
}

/// Unwrap memo layers and check the function really is edge-sum shaped.
inline const edge_sum_function* as_edge_sum(const characteristic_function& f) {
    if (auto* p = dynamic_cast<const edge_sum_function*>(&f)) return p;
    if (auto* m = dynamic_cast<const memoized_function*>(&f)) return as_edge_sum(m->inner());
    return nullptr;
}

/// Sharper bound for the edge-sum function: the subadditive mass of the
/// current blocks, the positive weight already locked inside them, and the
/// positive weight still reachable (on green edges).  Dominates (is never
/// above) bound_m, which additionally counts positive weight on red edges.
inline double bound_edge_sum(const contraction_graph& g, const edge_sum_function& f) {
    // Inside-block weight is whatever no longer sits on a surviving
    // (cross-block) edge, so it falls out of the graph's accumulators.
    double cross_neg = 0.0, cross_pos = 0.0, green_pos = 0.0;
    for (const auto& e : g.edges()) {
        cross_neg += e.weight_neg;
        cross_pos += e.weight_pos;
        if (e.colour == edge_colour::green) green_pos += e.weight_pos;
    }
    double vminus = f.total_negative_weight() - cross_neg;
    for (const auto& c : g.vertices()) vminus += f.size_penalty(c.size());
    double locked_pos = f.total_positive_weight() - cross_pos;
    return vminus + locked_pos + green_pos;
}

inline double bound_edge_sum(const contraction_graph& g, const characteristic_function& f) {
    const edge_sum_function* es = as_edge_sum(f);
    if (!es) throw std::invalid_argument("edge-sum bound requires the edgesum function");
    return bound_edge_sum(g, *es);
}

}  // namespace gccf
