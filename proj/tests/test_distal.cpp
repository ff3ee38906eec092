#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twl/distal.hpp"
#include "twl/errors.hpp"
#include "twl/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace twl;

namespace {

// Naive double-loop crossing counter, the reference for verify_cutting.
std::vector<std::size_t> naive_crossings(const Graph& g, const std::vector<std::size_t>& A,
                                         const std::vector<std::vector<std::size_t>>& parts) {
    std::vector<std::size_t> counts;
    for (const auto& part : parts) {
        std::size_t c = 0;
        for (std::size_t a : A) {
            bool nb = false, non = false;
            for (std::size_t v : part) {
                if (v == a) continue;
                if (g.has_edge(a, v)) nb = true;
                else non = true;
            }
            if (nb && non) ++c;
        }
        counts.push_back(c);
    }
    return counts;
}

// Naive all-pairs homogeneity and defect, the reference for
// verify_regularity. Ordered pairs, diagonal included.
std::uint64_t naive_defect(const Graph& g, const std::vector<std::vector<std::size_t>>& parts) {
    std::uint64_t defect = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
            bool edge = false, non = false;
            for (std::size_t u : parts[i])
                for (std::size_t v : parts[j]) {
                    if (u == v) continue;
                    if (g.has_edge(u, v)) edge = true;
                    else non = true;
                }
            bool sharesVertex = false;
            for (std::size_t u : parts[i])
                for (std::size_t v : parts[j])
                    if (u == v && (i != j || parts[i].size() > 1)) sharesVertex = true;
            if (i == j) sharesVertex = parts[i].size() > 1;
            bool homogeneous = sharesVertex ? !edge : !(edge && non);
            if (i == j && !parts[i].empty() && !sharesVertex) homogeneous = !edge;
            if (!homogeneous)
                defect += static_cast<std::uint64_t>(parts[i].size()) * parts[j].size();
        }
    }
    return defect;
}

std::vector<std::vector<std::size_t>> random_partition(std::size_t n, std::size_t k,
                                                       std::mt19937_64& rng) {
    std::vector<std::vector<std::size_t>> parts(k);
    for (std::size_t v = 0; v < n; ++v) parts[rng() % k].push_back(v);
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const auto& p) { return p.empty(); }),
                parts.end());
    return parts;
}

} // namespace

TEST_CASE("verify_cutting agrees with the double-loop oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 5 + rng() % 40;
        auto inst = gen_certified(trial % 3, n, 100 + trial);
        std::vector<std::size_t> A;
        for (std::size_t v = 0; v < n; ++v)
            if (rng() % 3) A.push_back(v);
        if (A.empty()) A.push_back(0);
        auto parts = random_partition(n, 1 + rng() % 6, rng);
        double r = 1.0 + static_cast<double>(rng() % 5);
        auto chk = verify_cutting(inst.graph, A, parts, r);
        auto chkSerial = verify_cutting_serial(inst.graph, A, parts, r);
        auto oracle = naive_crossings(inst.graph, A, parts);
        CHECK(chk.counts == oracle);
        CHECK(chkSerial.counts == oracle);
        bool okOracle = true;
        for (std::size_t c : oracle)
            if (static_cast<double>(c) > static_cast<double>(A.size()) / r) okOracle = false;
        CHECK(chk.ok == okOracle);
        CHECK(chkSerial.ok == okOracle);
    }
}

TEST_CASE("cutting terminates verified across the r range") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t n = 10 + rng() % 50;
        auto inst = gen_certified(trial % 3, n, 200 + trial);
        std::vector<std::size_t> A;
        for (std::size_t v = 0; v < n; ++v)
            if (rng() & 1) A.push_back(v);
        if (A.size() < 2) A = {0, 1};
        for (double r : {1.0, std::ceil(std::sqrt(static_cast<double>(A.size()))),
                         static_cast<double>(A.size())}) {
            auto cut = cutting(inst.graph, inst.order, A, r, 50 + trial);
            auto chk = verify_cutting(inst.graph, A, cut.parts, r);
            REQUIRE(chk.ok);
            CHECK(cut.crossingCounts == chk.counts);
            // Parts partition V.
            std::set<std::size_t> seen;
            for (const auto& p : cut.parts)
                for (std::size_t v : p) CHECK(seen.insert(v).second);
            CHECK(seen.size() == n);
            if (r >= static_cast<double>(A.size())) {
                for (std::size_t c : cut.crossingCounts) CHECK(c == 0);
            }
        }
    }
}

TEST_CASE("cutting input validation") {
    auto inst = gen_certified(1, 10, 1);
    CHECK_THROWS_AS(cutting(inst.graph, inst.order, {}, 2.0, 1), input_error);
    CHECK_THROWS_AS(cutting(inst.graph, inst.order, {1, 1}, 2.0, 1), input_error);
    CHECK_THROWS_AS(cutting(inst.graph, inst.order, {1}, 0.5, 1), input_error);
}

TEST_CASE("verify_regularity agrees with the all-pairs oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + rng() % 25;
        auto inst = gen_certified(trial % 3, n, 300 + trial);
        auto parts = random_partition(n, 1 + rng() % 5, rng);
        double eps = 0.05 + 0.3 * (trial % 4) / 3.0;
        auto chk = verify_regularity(inst.graph, parts, eps);
        auto chkSerial = verify_regularity_serial(inst.graph, parts, eps);
        std::uint64_t oracle = naive_defect(inst.graph, parts);
        CHECK(chk.defect == oracle);
        CHECK(chkSerial.defect == oracle);
        CHECK(chk.ok == (static_cast<double>(oracle) <=
                         eps * static_cast<double>(n) * static_cast<double>(n)));
        CHECK(chk.ok == chkSerial.ok);
        CHECK(chk.goodPairs == chkSerial.goodPairs);
    }
}

TEST_CASE("regularity terminates verified for the epsilon grid") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 9; ++trial) {
        std::size_t n = 15 + rng() % 45;
        auto inst = gen_certified(trial % 3, n, 400 + trial);
        for (double eps : {0.2, 0.1, 0.05}) {
            auto reg = regularity(inst.graph, eps, 60 + trial);
            auto chk = verify_regularity(inst.graph, reg.parts, eps);
            REQUIRE(chk.ok);
            CHECK(reg.defect == chk.defect);
            std::set<std::size_t> seen;
            for (const auto& p : reg.parts)
                for (std::size_t v : p) CHECK(seen.insert(v).second);
            CHECK(seen.size() == n);
        }
    }
}

TEST_CASE("complete graph reference partition meets the bound exactly") {
    // n divisible by K = ceil(1/eps): equal parts give defect = n^2 / K,
    // which equals eps n^2 when 1/eps is an integer.
    for (auto [n, eps] : std::vector<std::pair<std::size_t, double>>{{20, 0.2}, {30, 0.1}}) {
        Graph g = complete_graph(n);
        auto K = static_cast<std::size_t>(std::ceil(1.0 / eps));
        std::vector<std::vector<std::size_t>> parts(K);
        for (std::size_t v = 0; v < n; ++v) parts[v % K].push_back(v);
        auto chk = verify_regularity(g, parts, eps);
        CHECK(chk.ok);
        CHECK(chk.defect == static_cast<std::uint64_t>(n) * n / K);
        CHECK(static_cast<double>(chk.defect) ==
              doctest::Approx(eps * static_cast<double>(n) * static_cast<double>(n)));
        // One fewer part breaks the bound: defect n^2/(K-1) > eps n^2.
        std::vector<std::vector<std::size_t>> coarse(K - 1);
        for (std::size_t v = 0; v < n; ++v) coarse[v % (K - 1)].push_back(v);
        CHECK(!verify_regularity(g, coarse, eps).ok);
    }
}

TEST_CASE("regularity input validation") {
    CHECK_THROWS_AS(regularity(Graph(0), 0.1, 1), input_error);
    CHECK_THROWS_AS(regularity(path_graph(3), 0.0, 1), input_error);
    CHECK_THROWS_AS(verify_regularity(path_graph(3), {}, -1.0), input_error);
}
