#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twl/cells.hpp"
#include "twl/errors.hpp"
#include "twl/generator.hpp"
#include "twl/patterns.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace twl;

namespace {

std::vector<std::size_t> random_subset(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v)
        if (rng() & 1) out.push_back(v);
    if (out.empty()) out.push_back(rng() % n);
    return out;
}

// Cell-level soundness against the exact neighborhood classes.
void check_partition(const Graph& g, const std::vector<std::size_t>& A,
                     const CellPartition& part) {
    Bitset aMask(g.num_vertices());
    for (std::size_t a : A) aMask.set(a);
    std::set<std::size_t> covered;
    for (const auto& cell : part.cells) {
        REQUIRE(!cell.members.empty());
        Bitset ref = g.neighbors(cell.members.front()) & aMask;
        for (std::size_t v : cell.members) {
            CHECK((g.neighbors(v) & aMask) == ref);
            CHECK(covered.insert(v).second); // disjoint
        }
    }
    CHECK(covered.size() == g.num_vertices()); // tiles V
    // The cells refine the oracle classes, so there are at least as many.
    CHECK(part.cells.size() >= oracle_partition(g, A).size());
}

} // namespace

TEST_CASE("reduced matrix follows both orders") {
    auto inst = gen_certified(1, 15, 3);
    std::vector<std::size_t> A{2, 7, 11};
    ReducedMatrix m = reduced_matrix(inst.graph, inst.order, A);
    REQUIRE(m.bits.num_rows() == 3);
    REQUIRE(m.bits.num_cols() == 15);
    // Rows sorted by order position.
    for (std::size_t i = 0; i + 1 < m.rowVertices.size(); ++i)
        CHECK(inst.order.position(m.rowVertices[i]) < inst.order.position(m.rowVertices[i + 1]));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 15; ++j)
            CHECK(m.bits.get(i, j) ==
                  inst.graph.has_edge(m.rowVertices[i], inst.order.vertex_at(j)));
    CHECK_THROWS_AS(reduced_matrix(inst.graph, inst.order, {2, 2}), input_error);
    CHECK_THROWS_AS(reduced_matrix(inst.graph, inst.order, {99}), input_error);
}

TEST_CASE("corner profile matches the corner matrix column") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + rng() % 20;
        auto inst = gen_certified(trial % 3, n, 100 + trial);
        auto A = random_subset(n, rng);
        ReducedMatrix m = reduced_matrix(inst.graph, inst.order, A);
        if (m.bits.num_rows() < 2) continue;
        BitMatrix c = corner_matrix(m.bits);
        for (std::size_t j = 0; j < n; ++j) {
            CornerProfile prof = corner_profile(m, j);
            std::vector<std::size_t> expect;
            if (j + 1 < n)
                for (std::size_t i = 0; i + 1 < m.bits.num_rows(); ++i)
                    if (c.get(i, j)) expect.push_back(i);
            CHECK(prof.rows == expect);
        }
        CHECK(corner_profile(m, n - 1).rows.empty()); // last column convention
    }
}

TEST_CASE("sweep blocks tile the order with minimal extents") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 5 + rng() % 40;
        auto inst = gen_certified(trial % 3, n, 200 + trial);
        auto A = random_subset(n, rng);
        std::size_t theta = 1 + rng() % 6;
        auto blocks = sweep_blocks(inst.graph, inst.order, A, theta);
        REQUIRE(!blocks.empty());
        std::size_t next = 0;
        ReducedMatrix m = reduced_matrix(inst.graph, inst.order, A);
        auto prof_count = [&](std::size_t lo, std::size_t hi) {
            std::set<std::size_t> rows;
            for (std::size_t c = lo; c <= hi; ++c)
                for (std::size_t r : corner_profile(m, c).rows) rows.insert(r);
            return rows.size();
        };
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            CHECK(blocks[b].start == next);
            std::size_t end = blocks[b].start + blocks[b].extent;
            REQUIRE(end < n);
            CHECK(blocks[b].profileSize == prof_count(blocks[b].start, end));
            if (b + 1 < blocks.size()) {
                CHECK(blocks[b].profileSize >= theta);
                if (blocks[b].extent > 0) // minimality of the closing column
                    CHECK(prof_count(blocks[b].start, end - 1) < theta);
            }
            next = end + 1;
        }
        CHECK(next == n); // blocks tile every position
    }
}

TEST_CASE("cell partitions are pure, tile V, and respect the oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 4 + rng() % 60;
        auto inst = gen_certified(trial % 3, n, 300 + trial);
        auto A = random_subset(n, rng);
        std::size_t theta = 1 + rng() % 8;
        CellPartition part = cell_partition(inst.graph, inst.order, A, theta);
        check_partition(inst.graph, A, part);
        CHECK(part.blockCount >= 1);
    }
}

TEST_CASE("singleton set A refines the two possible neighborhood classes") {
    auto inst = gen_certified(1, 30, 7);
    CellPartition part = cell_partition(inst.graph, inst.order, {4}, 2);
    check_partition(inst.graph, {4}, part);
    CHECK(oracle_partition(inst.graph, {4}).size() <= 2);
}

TEST_CASE("every descriptor decodes back to its own cell") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + rng() % 80;
        auto inst = gen_certified(trial % 3, n, 400 + trial);
        auto A = random_subset(n, rng);
        std::size_t theta = 2 + rng() % 7;
        CellPartition part = cell_partition(inst.graph, inst.order, A, theta);
        for (const auto& cell : part.cells) {
            auto decoded = decode_cell(inst.graph, inst.order, A, cell.descriptor);
            CHECK(decoded == cell.members);
        }
    }
}

TEST_CASE("defined vertices land inside their window and carry sound descriptors") {
    std::mt19937_64 rng(19);
    int defined = 0;
    for (int trial = 0; trial < 60 && defined < 10; ++trial) {
        std::size_t n = 20 + rng() % 60;
        auto inst = gen_certified(2, n, 500 + trial);
        auto A = random_subset(n, rng);
        std::size_t v = inst.order.vertex_at(rng() % (n / 2));
        std::size_t l = n / 2;
        std::size_t t = 1 + rng() % 2;
        auto dv = define_vertex(inst.graph, inst.order, A, v, l, t);
        if (!dv) continue;
        ++defined;
        std::size_t pv = inst.order.position(v), pd = inst.order.position(dv->vertex);
        CHECK(pd >= pv);
        CHECK(pd <= pv + l);
        CHECK(dv->descriptor.kind == CellKind::boundary_by_profile);
        CHECK(dv->descriptor.anchors.size() == 2 * t);
        CHECK(dv->supersetColumns <= n);
        auto decoded = decode_cell(inst.graph, inst.order, A, dv->descriptor);
        REQUIRE(decoded.size() == 1);
        CHECK(decoded.front() == dv->vertex);
    }
    CHECK(defined >= 10); // the generator produces enough rich profiles
}

TEST_CASE("tampered descriptors are rejected") {
    auto inst = gen_certified(2, 40, 21);
    std::vector<std::size_t> A;
    for (std::size_t v = 0; v < 40; v += 2) A.push_back(v);
    CellPartition part = cell_partition(inst.graph, inst.order, A, 4);
    bool sawAnchored = false;
    for (const auto& cell : part.cells) {
        if (cell.descriptor.anchors.empty()) continue;
        sawAnchored = true;
        CellDescriptor bad = cell.descriptor;
        bad.anchors[0] = 1; // odd ids are outside A
        CHECK_THROWS_AS(decode_cell(inst.graph, inst.order, A, bad), descriptor_error);
        if (cell.descriptor.kind == CellKind::interior) {
            CellDescriptor shortPattern = cell.descriptor;
            shortPattern.pattern += "0";
            CHECK_THROWS_AS(decode_cell(inst.graph, inst.order, A, shortPattern),
                            descriptor_error);
        }
    }
    CHECK(sawAnchored);
}

TEST_CASE("oracle partition groups exactly by trace") {
    auto inst = gen_certified(1, 25, 23);
    std::vector<std::size_t> A{1, 5, 9};
    auto classes = oracle_partition(inst.graph, A);
    Bitset aMask(25);
    for (std::size_t a : A) aMask.set(a);
    std::set<Bitset> traces;
    std::size_t total = 0;
    for (const auto& cls : classes) {
        REQUIRE(!cls.empty());
        Bitset ref = inst.graph.neighbors(cls.front()) & aMask;
        CHECK(traces.insert(ref).second);
        for (std::size_t v : cls) CHECK((inst.graph.neighbors(v) & aMask) == ref);
        total += cls.size();
    }
    CHECK(total == 25);
}

TEST_CASE("partition JSON round trip") {
    auto inst = gen_certified(2, 35, 29);
    std::vector<std::size_t> A;
    for (std::size_t v = 0; v < 35; v += 3) A.push_back(v);
    CellPartition part = cell_partition(inst.graph, inst.order, A, 4);
    CellPartition back = partition_from_json(to_json(part));
    CHECK(back.theta == part.theta);
    REQUIRE(back.cells.size() == part.cells.size());
    for (std::size_t i = 0; i < part.cells.size(); ++i) {
        CHECK(back.cells[i].members == part.cells[i].members);
        CHECK(back.cells[i].descriptor.kind == part.cells[i].descriptor.kind);
        CHECK(back.cells[i].descriptor.anchors == part.cells[i].descriptor.anchors);
        CHECK(back.cells[i].descriptor.blockRef == part.cells[i].descriptor.blockRef);
        CHECK(back.cells[i].descriptor.pattern == part.cells[i].descriptor.pattern);
    }
    CHECK_THROWS_AS(partition_from_json("{"), input_error);
    CHECK_THROWS_AS(partition_from_json("{\"theta\":1}"), input_error);
}
