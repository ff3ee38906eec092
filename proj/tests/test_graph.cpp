#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twl/bitmatrix.hpp"
#include "twl/errors.hpp"
#include "twl/graph.hpp"

#include <random>

using namespace twl;

TEST_CASE("graph parse and serialize round trip") {
    std::string text = "4 3\n0 1\n1 2\n2 3\n";
    Graph g = parse_graph(text);
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK(parse_graph(serialize_graph(g)) == g);
}

TEST_CASE("graph parse rejects malformed input") {
    CHECK_THROWS_AS(parse_graph(""), input_error);
    CHECK_THROWS_AS(parse_graph("2 1\n0 0\n"), input_error);     // self-loop
    CHECK_THROWS_AS(parse_graph("2 2\n0 1\n1 0\n"), input_error); // duplicate
    CHECK_THROWS_AS(parse_graph("2 1\n0 5\n"), input_error);     // id out of range
    CHECK_THROWS_AS(parse_graph("3 2\n0 1\n"), input_error);     // edge count mismatch
}

TEST_CASE("vertex order validates bijections") {
    VertexOrder ord({2, 0, 1});
    CHECK(ord.vertex_at(0) == 2);
    CHECK(ord.position(2) == 0);
    CHECK(ord.position(1) == 2);
    CHECK_THROWS_AS(VertexOrder({0, 0, 1}), input_error);
    CHECK_THROWS_AS(VertexOrder({0, 3, 1}), input_error);
    CHECK(parse_order(serialize_order(ord), 3) == ord);
    CHECK_THROWS_AS(parse_order("0 1", 3), input_error);
}

TEST_CASE("adjacency matrix follows the order") {
    Graph g = path_graph(3); // 0-1-2
    VertexOrder ord({2, 0, 1});
    BitMatrix m = adjacency_matrix(g, ord);
    CHECK(m.num_rows() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(m.get(i, j) == g.has_edge(ord.vertex_at(i), ord.vertex_at(j)));
}

TEST_CASE("matching generator structure") {
    auto [g, A] = gen_matching(5);
    CHECK(g.num_vertices() == 10);
    CHECK(g.num_edges() == 5);
    CHECK(A.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(A[i] == 2 * i + 1);
        CHECK(g.has_edge(2 * i, 2 * i + 1));
    }
}

TEST_CASE("builders") {
    CHECK(path_graph(5).num_edges() == 4);
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(complete_graph(6).num_edges() == 15);
    CHECK(complete_graph(1).num_edges() == 0);
}

TEST_CASE("matrix parse and serialize round trip") {
    std::string text = "2 3\n010\n110\n";
    BitMatrix m = parse_matrix(text);
    CHECK(m.num_rows() == 2);
    CHECK(m.num_cols() == 3);
    CHECK(m.get(0, 1));
    CHECK(!m.get(0, 0));
    CHECK(parse_matrix(serialize_matrix(m)) == m);
    CHECK_THROWS_AS(parse_matrix("2 3\n010\n11\n"), input_error);
    CHECK_THROWS_AS(parse_matrix("1 1\n2\n"), input_error);
}

TEST_CASE("transpose and row/col removal") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
        BitMatrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() & 1) a.set(i, j, true);
        BitMatrix t = a.transposed();
        REQUIRE(t.num_rows() == n);
        REQUIRE(t.num_cols() == m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(a.get(i, j) == t.get(j, i));
        CHECK(t.transposed() == a);
        CHECK(a.count_ones() == t.count_ones());
        if (m > 1) CHECK(a.without_row(0).num_rows() == m - 1);
        if (n > 1) CHECK(a.without_col(n - 1).num_cols() == n - 1);
    }
}
