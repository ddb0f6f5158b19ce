#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "gccf/instances.hpp"
#include "gccf/ordering.hpp"

using namespace gccf;

namespace {

edge_list complete_graph(unsigned n) {
    edge_list e;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return e;
}

std::uint32_t rank_of(const contraction_graph& g, unsigned i, unsigned j) {
    auto pos = g.find_edge(i, j);
    REQUIRE(pos.has_value());
    return g.edges()[*pos].rank;
}

}  // namespace

TEST_CASE("cut splits a path at the middle") {
    auto c = cut({0, 1, 2}, {{0, 1}, {1, 2}});
    REQUIRE(c.part_a == std::vector<unsigned>{0, 1});
    REQUIRE(c.part_b == std::vector<unsigned>{2});
    REQUIRE(c.cut_set == edge_list{{1, 2}});
}

TEST_CASE("cut of a single edge") {
    auto c = cut({0, 1}, {{0, 1}});
    REQUIRE(c.part_a == std::vector<unsigned>{0});
    REQUIRE(c.part_b == std::vector<unsigned>{1});
    REQUIRE(c.cut_set == edge_list{{0, 1}});
}

TEST_CASE("cut of the 4-cycle is balanced with two crossing edges") {
    auto c = cut({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    REQUIRE(c.part_a.size() == 2);
    REQUIRE(c.part_b.size() == 2);
    REQUIRE(c.cut_set.size() == 2);
}

TEST_CASE("cut separates a disconnected graph for free") {
    auto c = cut({0, 1, 2, 3}, {{0, 1}, {2, 3}});
    REQUIRE(c.cut_set.empty());
    REQUIRE(c.part_a == std::vector<unsigned>{0, 1});
    REQUIRE(c.part_b == std::vector<unsigned>{2, 3});
}

TEST_CASE("cut rejects degenerate input") {
    REQUIRE_THROWS_AS(cut({0}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(cut({0, 1}, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("order_edges ranks the path's middle edge first") {
    auto g = contraction_graph::from_edge_list({{0, 1}, {1, 2}}, 3);
    auto h = order_edges(g);
    REQUIRE(rank_of(h, 1, 2) == 0);
    REQUIRE(rank_of(h, 0, 1) == 1);
}

TEST_CASE("order_edges on the 4-cycle: crossing pair first, sides after") {
    auto g = contraction_graph::from_edge_list({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
    auto h = order_edges(g);
    // first cut {0,1} vs {2,3}: crossing edges (0,3) and (1,2) take ranks 0,1
    REQUIRE(rank_of(h, 0, 3) == 0);
    REQUIRE(rank_of(h, 1, 2) == 1);
    REQUIRE(rank_of(h, 0, 1) == 2);
    REQUIRE(rank_of(h, 2, 3) == 3);
}

TEST_CASE("order_edges on K4: the 4-edge bisection leads") {
    auto g = contraction_graph::from_edge_list(complete_graph(4), 4);
    auto h = order_edges(g);
    // the two within-side edges come last
    REQUIRE(rank_of(h, 0, 1) == 4);
    REQUIRE(rank_of(h, 2, 3) == 5);
    for (auto [i, j] : edge_list{{0, 2}, {0, 3}, {1, 2}, {1, 3}})
        REQUIRE(rank_of(h, i, j) < 4);
}

TEST_CASE("order_edges assigns every rank exactly once and is deterministic") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto edges = barabasi_albert(24, 2, seed);
        auto g = contraction_graph::from_edge_list(edges, 24);
        auto h1 = order_edges(g);
        auto h2 = order_edges(g);
        std::vector<std::uint32_t> ranks;
        for (std::size_t k = 0; k < h1.edges().size(); ++k) {
            REQUIRE(h1.edges()[k].rank == h2.edges()[k].rank);
            REQUIRE(h1.edges()[k].u == h2.edges()[k].u);
            REQUIRE(h1.edges()[k].v == h2.edges()[k].v);
            ranks.push_back(h1.edges()[k].rank);
        }
        std::sort(ranks.begin(), ranks.end());
        for (std::uint32_t k = 0; k < ranks.size(); ++k) REQUIRE(ranks[k] == k);
    }
}

TEST_CASE("order_edges handles disconnected graphs") {
    auto g = contraction_graph::from_edge_list({{0, 1}, {1, 2}, {3, 4}}, 5);
    auto h = order_edges(g);
    std::vector<std::uint32_t> ranks;
    for (const auto& e : h.edges()) ranks.push_back(e.rank);
    std::sort(ranks.begin(), ranks.end());
    REQUIRE(ranks == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("order_edges rejects contracted graphs") {
    auto g = contraction_graph::from_edge_list({{0, 1}, {1, 2}}, 3).contracted(0, 1);
    REQUIRE_THROWS_AS(order_edges(g), std::invalid_argument);
}
