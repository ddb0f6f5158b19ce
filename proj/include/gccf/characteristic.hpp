#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "agent_set.hpp"
#include "instance_graph.hpp"

namespace gccf {

/// Coalition cost penalty, -|C|^gamma.  Superlinear (gamma > 1) so that
/// blocks never merge for free.
inline double kappa(unsigned size, double gamma) {
    return -std::pow(static_cast<double>(size), gamma);
}

/// Characteristic function split into a superadditive part (value_plus) and
/// a subadditive part (value_minus); value = value_plus + value_minus.
/// Implementations are immutable after construction and safe to share
/// across threads.
class characteristic_function {
public:
    virtual ~characteristic_function() = default;

    /// Superadditive component.  Throws std::invalid_argument on the empty set.
    virtual double value_plus(const agent_set& c) const = 0;

    /// Subadditive component.  Throws std::invalid_argument on the empty set.
    virtual double value_minus(const agent_set& c) const = 0;

    virtual double value(const agent_set& c) const { return value_plus(c) + value_minus(c); }

    /// A lower bound on the value of any coalition structure, when one is
    /// cheaply available.  Present iff structure values can cross zero; the
    /// solver then reports the shifted performance ratio.
    virtual std::optional<double> value_lower_bound() const { return std::nullopt; }

protected:
    static void require_nonempty(const agent_set& c) {
        if (c.empty()) throw std::invalid_argument("characteristic function on empty coalition");
    }
};

/// Sum of coalition values over the blocks of a structure.
inline double structure_value(std::span<const agent_set> cs, const characteristic_function& f) {
    double v = 0.0;
    for (const auto& c : cs) v += f.value(c);
    return v;
}

// ---------------------------------------------------------------------------
// energy: consumers pooling electricity demand.  A coalition buys its joint
// baseload (the minimum of the aggregated profile) on the cheaper forward
// market and the residual on the spot market; both prices are negative
// (costs).  Pooling flattens the aggregate, so the forward share grows.

struct energy_params {
    unsigned agents = 0;
    unsigned slots = 0;            // time slots per horizon
    double spot_price = 0.0;       // < 0
    double forward_price = 0.0;    // < 0
    double gamma = 0.0;            // > 1, coalition cost exponent
    std::vector<double> profiles;  // agents x slots, row-major, >= 0
};

class energy_function final : public characteristic_function {
public:
    explicit energy_function(energy_params p) : p_(std::move(p)) {
        if (p_.agents == 0) throw std::invalid_argument("energy: no agents");
        if (p_.slots == 0) throw std::invalid_argument("energy: no time slots");
        if (!(p_.spot_price < 0) || !(p_.forward_price < 0))
            throw std::invalid_argument("energy: prices must be negative");
        if (!(p_.gamma > 1)) throw std::invalid_argument("energy: gamma must exceed 1");
        if (p_.profiles.size() != static_cast<std::size_t>(p_.agents) * p_.slots)
            throw std::invalid_argument("energy: profiles must be agents x slots");
        for (double q : p_.profiles)
            if (!(q >= 0)) throw std::invalid_argument("energy: profiles must be non-negative");
        pow_.resize(p_.agents + 1, 0.0);
        for (unsigned s = 1; s <= p_.agents; ++s) pow_[s] = std::pow(double(s), p_.gamma);
    }

    double value_plus(const agent_set& c) const override {
        require_nonempty(c);
        const unsigned T = p_.slots;
        // per-thread scratch: instances are shared across search workers
        static thread_local std::vector<double> agg;
        agg.assign(T, 0.0);
        c.for_each([&](unsigned i) {
            const double* row = &p_.profiles[static_cast<std::size_t>(i) * T];
            for (unsigned t = 0; t < T; ++t) agg[t] += row[t];
        });
        double base = agg[0];
        for (unsigned t = 1; t < T; ++t)
            if (agg[t] < base) base = agg[t];
        double spot_sum = 0.0;
        for (unsigned t = 0; t < T; ++t) spot_sum += agg[t] - base;
        return p_.forward_price * base * T + p_.spot_price * spot_sum;
    }

    double value_minus(const agent_set& c) const override {
        require_nonempty(c);
        return -pow_[c.size()];
    }

    const energy_params& params() const { return p_; }

private:
    energy_params p_;
    std::vector<double> pow_;  // s^gamma
};

// ---------------------------------------------------------------------------
// edgesum: a signed weight on every instance edge; a coalition collects the
// weights of the edges it encloses plus the size penalty.

struct edge_sum_params {
    unsigned agents = 0;
    double gamma = 0.0;  // > 1
    edge_list edges;
    std::vector<double> weights;  // aligned with edges
};

class edge_sum_function final : public characteristic_function {
public:
    explicit edge_sum_function(edge_sum_params p) : p_(std::move(p)) {
        if (p_.agents == 0) throw std::invalid_argument("edgesum: no agents");
        if (!(p_.gamma > 1)) throw std::invalid_argument("edgesum: gamma must exceed 1");
        if (p_.weights.size() != p_.edges.size())
            throw std::invalid_argument("edgesum: one weight per edge required");
        validate_edges(p_.edges, p_.agents);
        pow_.resize(p_.agents + 1, 0.0);
        for (unsigned s = 1; s <= p_.agents; ++s) pow_[s] = std::pow(double(s), p_.gamma);
        total_neg_ = 0.0;
        total_pos_ = 0.0;
        for (double w : p_.weights)
            (w < 0 ? total_neg_ : total_pos_) += w;
    }

    double value_plus(const agent_set& c) const override {
        require_nonempty(c);
        double v = 0.0;
        for (std::size_t k = 0; k < p_.edges.size(); ++k) {
            double w = p_.weights[k];
            if (w > 0 && c.contains(p_.edges[k].first) && c.contains(p_.edges[k].second)) v += w;
        }
        return v;
    }

    double value_minus(const agent_set& c) const override {
        require_nonempty(c);
        double v = -pow_[c.size()];
        for (std::size_t k = 0; k < p_.edges.size(); ++k) {
            double w = p_.weights[k];
            if (w < 0 && c.contains(p_.edges[k].first) && c.contains(p_.edges[k].second)) v += w;
        }
        return v;
    }

    /// V of a structure crosses zero, so the shifted ratio is needed; the
    /// subadditive mass of the grand coalition bounds every structure below.
    std::optional<double> value_lower_bound() const override {
        return total_neg_ - pow_[p_.agents];
    }

    /// Sums of all negative / positive edge weights (used by the edge-sum bound).
    double total_negative_weight() const { return total_neg_; }
    double total_positive_weight() const { return total_pos_; }
    double size_penalty(unsigned s) const { return -pow_[s]; }
    const edge_sum_params& params() const { return p_; }

private:
    edge_sum_params p_;
    std::vector<double> pow_;
    double total_neg_ = 0.0;
    double total_pos_ = 0.0;
};

// ---------------------------------------------------------------------------
// coalsize: gain grows superlinearly with coalition size, coordination cost
// is the sum of pairwise distances inside the coalition (ordered pairs).

struct coalition_size_params {
    unsigned agents = 0;
    double alpha = 0.0;             // >= 1
    std::vector<double> distances;  // agents x agents, row-major, d(i,i) = 0
};

class coalition_size_function final : public characteristic_function {
public:
    explicit coalition_size_function(coalition_size_params p) : p_(std::move(p)) {
        if (p_.agents == 0) throw std::invalid_argument("coalsize: no agents");
        if (!(p_.alpha >= 1)) throw std::invalid_argument("coalsize: alpha must be >= 1");
        if (p_.distances.size() != static_cast<std::size_t>(p_.agents) * p_.agents)
            throw std::invalid_argument("coalsize: distances must be agents x agents");
        for (unsigned i = 0; i < p_.agents; ++i) {
            if (p_.distances[static_cast<std::size_t>(i) * p_.agents + i] != 0.0)
                throw std::invalid_argument("coalsize: d(i,i) must be 0");
        }
        for (double d : p_.distances)
            if (!(d >= 0)) throw std::invalid_argument("coalsize: distances must be non-negative");
        pow_.resize(p_.agents + 1, 0.0);
        for (unsigned s = 1; s <= p_.agents; ++s) pow_[s] = std::pow(double(s), p_.alpha);
    }

    double value_plus(const agent_set& c) const override {
        require_nonempty(c);
        return pow_[c.size()];
    }

    double value_minus(const agent_set& c) const override {
        require_nonempty(c);
        double d = 0.0;
        c.for_each([&](unsigned i) {
            const double* row = &p_.distances[static_cast<std::size_t>(i) * p_.agents];
            c.for_each([&](unsigned j) { d += row[j]; });
        });
        return -d;
    }

    const coalition_size_params& params() const { return p_; }

private:
    coalition_size_params p_;
    std::vector<double> pow_;
};

// ---------------------------------------------------------------------------

/// Memo on value_plus keyed by coalition.  value_minus stays pass-through:
/// in every built-in function it is cheap, while value_plus can aggregate
/// whole demand profiles.  Behaviourally identical to the wrapped function;
/// not thread safe, use one per worker.
class memoized_function final : public characteristic_function {
public:
    explicit memoized_function(const characteristic_function& f) : f_(f) {}

    double value_plus(const agent_set& c) const override {
        auto it = plus_.find(c);
        if (it != plus_.end()) return it->second;
        double v = f_.value_plus(c);
        plus_.emplace(c, v);
        return v;
    }

    double value_minus(const agent_set& c) const override { return f_.value_minus(c); }

    double value(const agent_set& c) const override { return value_plus(c) + f_.value_minus(c); }

    std::optional<double> value_lower_bound() const override { return f_.value_lower_bound(); }

    const characteristic_function& inner() const { return f_; }
    std::size_t memo_size() const { return plus_.size(); }

private:
    const characteristic_function& f_;
    mutable std::unordered_map<agent_set, double> plus_;
};

}  // namespace gccf
