#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "characteristic.hpp"
#include "contraction_graph.hpp"
#include "instance_graph.hpp"
#include "rng.hpp"

namespace gccf {

enum class function_kind { energy, edge_sum, coalition_size };

inline const char* to_token(function_kind k) {
    switch (k) {
        case function_kind::energy: return "energy";
        case function_kind::edge_sum: return "edgesum";
        case function_kind::coalition_size: return "coalsize";
    }
    throw std::logic_error("unknown function kind");
}

inline function_kind kind_from_token(const std::string& t) {
    if (t == "energy") return function_kind::energy;
    if (t == "edgesum") return function_kind::edge_sum;
    if (t == "coalsize") return function_kind::coalition_size;
    throw std::runtime_error("unknown function kind '" + t +
                             "' (expected energy, edgesum or coalsize)");
}

/// A solvable problem: graph, characteristic-function parameters, and the
/// seed that generated them.  The params variant's alternative determines
/// the function kind.
struct instance {
    unsigned n = 0;
    edge_list edges;
    std::uint64_t seed = 0;
    std::variant<energy_params, edge_sum_params, coalition_size_params> params;

    function_kind kind() const { return static_cast<function_kind>(params.index()); }
};

// ---------------------------------------------------------------------------
// generators

/// Preferential-attachment graph: seed clique on m+1 vertices, then each new
/// vertex attaches to m distinct targets drawn from a pool in which every
/// vertex appears once per incident edge.  Uses substream 0 of `seed`.
inline edge_list barabasi_albert(unsigned n, unsigned m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("barabasi_albert: m must be at least 1");
    if (m >= n)
        throw std::invalid_argument("barabasi_albert: m (" + std::to_string(m) +
                                    ") must be smaller than n (" + std::to_string(n) + ")");
    rng r(stream_seed(seed, 0));
    edge_list edges;
    std::vector<unsigned> pool;
    for (unsigned i = 0; i <= m; ++i)
        for (unsigned j = i + 1; j <= m; ++j) {
            edges.emplace_back(i, j);
            pool.push_back(i);
            pool.push_back(j);
        }
    for (unsigned v = m + 1; v < n; ++v) {
        std::set<unsigned> targets;
        while (targets.size() < m) targets.insert(pool[r.below(pool.size())]);
        for (unsigned t : targets) {  // ascending: deterministic edge order
            edges.emplace_back(t, v);
            pool.push_back(t);
            pool.push_back(v);
        }
    }
    return edges;
}

/// Connected k-vertex region of a host graph: breadth-first from a random
/// start (ascending neighbours), relabelled 0..k-1 by discovery order, with
/// all induced edges.  Retries a bounded number of starts before giving up.
inline parsed_graph bfs_subgraph(const parsed_graph& src, unsigned k, std::uint64_t seed) {
    if (k < 1 || k > src.n)
        throw std::invalid_argument("bfs_subgraph: k must be in 1.." + std::to_string(src.n));
    std::vector<std::vector<unsigned>> adj(src.n);
    for (const auto& [i, j] : src.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    rng r(stream_seed(seed, 0));
    constexpr unsigned max_attempts = 64;
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        const unsigned start = r.below_u(src.n);
        std::vector<unsigned> order{start};
        std::vector<bool> seen(src.n, false);
        seen[start] = true;
        for (std::size_t head = 0; head < order.size() && order.size() < k; ++head) {
            for (unsigned nb : adj[order[head]]) {
                if (seen[nb]) continue;
                seen[nb] = true;
                order.push_back(nb);
                if (order.size() == k) break;
            }
        }
        if (order.size() < k) continue;  // component too small, try elsewhere
        // `seen` marks exactly the selected region: marks stop once k found
        std::vector<unsigned> local(src.n, 0);
        for (unsigned i = 0; i < k; ++i) local[order[i]] = i;
        parsed_graph out;
        out.n = k;
        for (const auto& [i, j] : src.edges)
            if (seen[i] && seen[j]) out.edges.push_back(canonical_edge(local[i], local[j]));
        std::sort(out.edges.begin(), out.edges.end());
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
        return out;
    }
    throw std::runtime_error("bfs_subgraph: no connected region of " + std::to_string(k) +
                             " vertices found in " + std::to_string(max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// parameter randomization (substream 1 of the instance seed)

/// Synthetic demand profiles: per agent a base level plus two sinusoidal
/// bumps with random amplitude and phase, truncated at zero.  Draw order
/// per agent: base, amp1, phase1, amp2, phase2.
inline energy_params random_energy_params(unsigned n, std::uint64_t seed) {
    energy_params p;
    p.agents = n;
    p.slots = 48;
    p.spot_price = -80.0;
    p.forward_price = -70.0;
    p.gamma = 1.3;
    p.profiles.resize(static_cast<std::size_t>(n) * p.slots);
    rng r(stream_seed(seed, 1));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (unsigned i = 0; i < n; ++i) {
        const double base = r.uniform(0.1, 1.0);
        const double a1 = r.uniform(0.0, 0.5);
        const double f1 = r.uniform(0.0, two_pi);
        const double a2 = r.uniform(0.0, 0.3);
        const double f2 = r.uniform(0.0, two_pi);
        for (unsigned t = 0; t < p.slots; ++t) {
            const double x = two_pi * t / p.slots;
            const double q = base + a1 * std::sin(x + f1) + a2 * std::sin(2 * x + f2);
            p.profiles[static_cast<std::size_t>(i) * p.slots + t] = q > 0 ? q : 0.0;
        }
    }
    return p;
}

/// One uniform weight in [-10, 10] per edge, drawn in edge-list order.
inline edge_sum_params random_edge_sum_params(const edge_list& edges, unsigned n,
                                              std::uint64_t seed) {
    edge_sum_params p;
    p.agents = n;
    p.gamma = 1.3;
    p.edges = edges;
    p.weights.reserve(edges.size());
    rng r(stream_seed(seed, 1));
    for (std::size_t k = 0; k < edges.size(); ++k) p.weights.push_back(r.uniform(-10.0, 10.0));
    return p;
}

/// Symmetric distances uniform in [0, 100], drawn per unordered pair in
/// lexicographic order; zero diagonal.
inline coalition_size_params random_coalition_size_params(unsigned n, std::uint64_t seed) {
    coalition_size_params p;
    p.agents = n;
    p.alpha = 2.2;
    p.distances.assign(static_cast<std::size_t>(n) * n, 0.0);
    rng r(stream_seed(seed, 1));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            const double d = r.uniform(0.0, 100.0);
            p.distances[static_cast<std::size_t>(i) * n + j] = d;
            p.distances[static_cast<std::size_t>(j) * n + i] = d;
        }
    return p;
}

/// Bundle a graph with randomized parameters for `kind`.
inline instance make_instance(function_kind kind, unsigned n, edge_list edges,
                              std::uint64_t seed) {
    validate_edges(edges, n);
    instance ins;
    ins.n = n;
    ins.edges = std::move(edges);
    ins.seed = seed;
    switch (kind) {
        case function_kind::energy: ins.params = random_energy_params(n, seed); break;
        case function_kind::edge_sum:
            ins.params = random_edge_sum_params(ins.edges, n, seed);
            break;
        case function_kind::coalition_size:
            ins.params = random_coalition_size_params(n, seed);
            break;
    }
    return ins;
}

inline std::unique_ptr<characteristic_function> make_function(const instance& ins) {
    if (auto* e = std::get_if<energy_params>(&ins.params))
        return std::make_unique<energy_function>(*e);
    if (auto* s = std::get_if<edge_sum_params>(&ins.params))
        return std::make_unique<edge_sum_function>(*s);
    return std::make_unique<coalition_size_function>(std::get<coalition_size_params>(ins.params));
}

/// The search root for an instance; edge-sum instances carry their weights
/// onto the graph so the sharper bound can read them.
inline contraction_graph to_contraction_graph(const instance& ins) {
    if (auto* s = std::get_if<edge_sum_params>(&ins.params))
        return contraction_graph::from_edge_list(ins.edges, ins.n, s->weights);
    return contraction_graph::from_edge_list(ins.edges, ins.n);
}

// ---------------------------------------------------------------------------
// instance file format
//
//   gccf v1
//   <n> <edge-count> <kind> <seed>
//   i j                                (edge-count lines)
//   params energy <slots> <spot> <forward> <gamma>   + n profile rows (CSV)
//   params edgesum <gamma>                           + edge rows "i,j,w"
//   params coalsize <alpha>                          + n distance rows (CSV)
//
// Doubles are written with enough digits to round-trip exactly, so writing
// the same instance twice produces identical bytes.

namespace instance_io {

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_double(const std::string& tok, const char* where) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("instance file: bad number '") + tok + "' in " +
                                 where);
    }
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace instance_io

inline void write_instance(std::ostream& os, const instance& ins) {
    using instance_io::fmt;
    os << "gccf v1\n";
    os << ins.n << ' ' << ins.edges.size() << ' ' << to_token(ins.kind()) << ' ' << ins.seed
       << '\n';
    for (const auto& [i, j] : ins.edges) os << i << ' ' << j << '\n';
    if (auto* e = std::get_if<energy_params>(&ins.params)) {
        os << "params energy " << e->slots << ' ' << fmt(e->spot_price) << ' '
           << fmt(e->forward_price) << ' ' << fmt(e->gamma) << '\n';
        for (unsigned i = 0; i < e->agents; ++i) {
            for (unsigned t = 0; t < e->slots; ++t) {
                if (t) os << ',';
                os << fmt(e->profiles[static_cast<std::size_t>(i) * e->slots + t]);
            }
            os << '\n';
        }
    } else if (auto* s = std::get_if<edge_sum_params>(&ins.params)) {
        os << "params edgesum " << fmt(s->gamma) << '\n';
        for (std::size_t k = 0; k < s->edges.size(); ++k)
            os << s->edges[k].first << ',' << s->edges[k].second << ',' << fmt(s->weights[k])
               << '\n';
    } else {
        const auto& c = std::get<coalition_size_params>(ins.params);
        os << "params coalsize " << fmt(c.alpha) << '\n';
        for (unsigned i = 0; i < c.agents; ++i) {
            for (unsigned j = 0; j < c.agents; ++j) {
                if (j) os << ',';
                os << fmt(c.distances[static_cast<std::size_t>(i) * c.agents + j]);
            }
            os << '\n';
        }
    }
}

inline void write_instance_file(const std::string& path, const instance& ins) {
    std::ofstream f(path, std::ios::binary);  // LF everywhere
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_instance(f, ins);
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline instance read_instance(std::istream& is) {
    using instance_io::parse_double;
    using instance_io::split_csv;
    std::string line;
    if (!std::getline(is, line) || line != "gccf v1")
        throw std::runtime_error("instance file: missing 'gccf v1' header");

    instance ins;
    std::size_t edge_count = 0;
    std::string kind_tok;
    {
        if (!std::getline(is, line))
            throw std::runtime_error("instance file: missing summary line");
        std::istringstream ss(line);
        if (!(ss >> ins.n >> edge_count >> kind_tok >> ins.seed))
            throw std::runtime_error("instance file: bad summary line '" + line + "'");
    }
    const function_kind kind = kind_from_token(kind_tok);
    ins.edges.reserve(edge_count);
    for (std::size_t k = 0; k < edge_count; ++k) {
        if (!std::getline(is, line))
            throw std::runtime_error("instance file: expected " + std::to_string(edge_count) +
                                     " edges, got " + std::to_string(k));
        std::istringstream ss(line);
        unsigned i, j;
        if (!(ss >> i >> j))
            throw std::runtime_error("instance file: bad edge line '" + line + "'");
        ins.edges.emplace_back(i, j);
    }
    try {
        validate_edges(ins.edges, ins.n);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("instance file: ") + e.what());
    }

    if (!std::getline(is, line)) throw std::runtime_error("instance file: missing params line");
    std::istringstream ps(line);
    std::string word, ptok;
    if (!(ps >> word >> ptok) || word != "params" || ptok != to_token(kind))
        throw std::runtime_error("instance file: expected 'params " +
                                 std::string(to_token(kind)) + "', got '" + line + "'");

    if (kind == function_kind::energy) {
        energy_params e;
        e.agents = ins.n;
        std::string spot, fwd, gamma;
        if (!(ps >> e.slots >> spot >> fwd >> gamma))
            throw std::runtime_error("instance file: bad energy params '" + line + "'");
        e.spot_price = parse_double(spot, "energy params");
        e.forward_price = parse_double(fwd, "energy params");
        e.gamma = parse_double(gamma, "energy params");
        e.profiles.reserve(static_cast<std::size_t>(ins.n) * e.slots);
        for (unsigned i = 0; i < ins.n; ++i) {
            if (!std::getline(is, line))
                throw std::runtime_error("instance file: missing profile row " +
                                         std::to_string(i));
            auto cells = split_csv(line);
            if (cells.size() != e.slots)
                throw std::runtime_error("instance file: profile row " + std::to_string(i) +
                                         " has " + std::to_string(cells.size()) + " cells, want " +
                                         std::to_string(e.slots));
            for (const auto& c : cells) e.profiles.push_back(parse_double(c, "profile row"));
        }
        ins.params = std::move(e);
    } else if (kind == function_kind::edge_sum) {
        edge_sum_params s;
        s.agents = ins.n;
        s.edges = ins.edges;
        std::string gamma;
        if (!(ps >> gamma))
            throw std::runtime_error("instance file: bad edgesum params '" + line + "'");
        s.gamma = parse_double(gamma, "edgesum params");
        s.weights.reserve(edge_count);
        for (std::size_t k = 0; k < edge_count; ++k) {
            if (!std::getline(is, line))
                throw std::runtime_error("instance file: missing weight row " + std::to_string(k));
            auto cells = split_csv(line);
            if (cells.size() != 3)
                throw std::runtime_error("instance file: bad weight row '" + line + "'");
            const unsigned i = static_cast<unsigned>(
                parse_double(cells[0], "weight row"));
            const unsigned j = static_cast<unsigned>(parse_double(cells[1], "weight row"));
            if (canonical_edge(i, j) != canonical_edge(ins.edges[k].first, ins.edges[k].second))
                throw std::runtime_error("instance file: weight row " + std::to_string(k) +
                                         " does not match edge list order");
            s.weights.push_back(parse_double(cells[2], "weight row"));
        }
        ins.params = std::move(s);
    } else {
        coalition_size_params c;
        c.agents = ins.n;
        std::string alpha;
        if (!(ps >> alpha))
            throw std::runtime_error("instance file: bad coalsize params '" + line + "'");
        c.alpha = parse_double(alpha, "coalsize params");
        c.distances.reserve(static_cast<std::size_t>(ins.n) * ins.n);
        for (unsigned i = 0; i < ins.n; ++i) {
            if (!std::getline(is, line))
                throw std::runtime_error("instance file: missing distance row " +
                                         std::to_string(i));
            auto cells = split_csv(line);
            if (cells.size() != ins.n)
                throw std::runtime_error("instance file: distance row " + std::to_string(i) +
                                         " has " + std::to_string(cells.size()) +
                                         " cells, want " + std::to_string(ins.n));
            for (const auto& cell : cells) c.distances.push_back(parse_double(cell, "distance row"));
        }
        ins.params = std::move(c);
    }
    return ins;
}

inline instance read_instance_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open instance file: " + path);
    try {
        return read_instance(f);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace gccf
