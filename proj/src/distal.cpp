#include "twl/distal.hpp"

#include "twl/cells.hpp"
#include "twl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twl {

namespace {

std::vector<std::size_t> sample_without_replacement(const std::vector<std::size_t>& pool,
                                                    std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> bag(pool);
    std::shuffle(bag.begin(), bag.end(), rng);
    bag.resize(std::min(k, bag.size()));
    std::sort(bag.begin(), bag.end());
    return bag;
}

std::vector<std::size_t> crossing_counts(const Graph& g, const std::vector<std::size_t>& A,
                                         const std::vector<std::vector<std::size_t>>& parts,
                                         bool parallel) {
    std::vector<std::size_t> counts(parts.size(), 0);
    auto body = [&](std::size_t p) {
        std::size_t c = 0;
        for (std::size_t a : A) {
            bool hasNb = false, hasNon = false;
            for (std::size_t v : parts[p]) {
                if (v == a) continue; // a vertex never crosses on its own account
                (g.has_edge(a, v) ? hasNb : hasNon) = true;
                if (hasNb && hasNon) break;
            }
            if (hasNb && hasNon) ++c;
        }
        counts[p] = c;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long p = 0; p < static_cast<long long>(parts.size()); ++p)
            body(static_cast<std::size_t>(p));
    } else {
        for (std::size_t p = 0; p < parts.size(); ++p) body(p);
    }
    return counts;
}

CuttingCheck check_from_counts(std::vector<std::size_t> counts, std::size_t aSize, double r) {
    CuttingCheck chk;
    double budget = static_cast<double>(aSize) / r;
    chk.ok = true;
    for (std::size_t c : counts)
        if (static_cast<double>(c) > budget) chk.ok = false;
    chk.counts = std::move(counts);
    return chk;
}

struct HomogeneityResult {
    std::uint64_t defect = 0;
    std::vector<std::pair<std::size_t, std::size_t>> goodPairs;
};

// Pair (i, j) is homogeneous when the bipartite (or internal, on the
// diagonal) adjacency between the parts is constant; two intersecting
// parts and a part against itself must be edge-free.
HomogeneityResult homogeneity(const Graph& g, const std::vector<std::vector<std::size_t>>& parts,
                              bool parallel) {
    std::size_t k = parts.size();
    std::vector<char> good(k * k, 0);
    auto pairGood = [&](std::size_t i, std::size_t j) {
        bool sawEdge = false, sawNonEdge = false;
        bool overlap = false;
        if (i == j) {
            overlap = parts[i].size() > 1;
        } else {
            for (std::size_t u : parts[i])
                if (std::binary_search(parts[j].begin(), parts[j].end(), u)) {
                    overlap = true;
                    break;
                }
        }
        for (std::size_t u : parts[i]) {
            for (std::size_t v : parts[j]) {
                if (u == v) continue;
                (g.has_edge(u, v) ? sawEdge : sawNonEdge) = true;
                if (sawEdge && (sawNonEdge || overlap)) return false;
            }
        }
        if (overlap || (i == j && !parts[i].empty())) return !sawEdge;
        return !(sawEdge && sawNonEdge);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic) collapse(2)
        for (long long i = 0; i < static_cast<long long>(k); ++i)
            for (long long j = 0; j < static_cast<long long>(k); ++j)
                if (j >= i) good[i * k + j] = pairGood(i, j) ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) good[i * k + j] = pairGood(i, j) ? 1 : 0;
    }
    HomogeneityResult res;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            if (good[i * k + j]) {
                res.goodPairs.emplace_back(i, j);
            } else {
                std::uint64_t cross = static_cast<std::uint64_t>(parts[i].size()) * parts[j].size();
                res.defect += (i == j) ? cross : 2 * cross; // ordered pairs
            }
        }
    }
    return res;
}

} // namespace

CuttingCheck verify_cutting(const Graph& g, const std::vector<std::size_t>& A,
                            const std::vector<std::vector<std::size_t>>& parts, double r) {
    if (r < 1.0) throw input_error("cutting parameter r must be at least 1");
    return check_from_counts(crossing_counts(g, A, parts, true), A.size(), r);
}

CuttingCheck verify_cutting_serial(const Graph& g, const std::vector<std::size_t>& A,
                                   const std::vector<std::vector<std::size_t>>& parts, double r) {
    if (r < 1.0) throw input_error("cutting parameter r must be at least 1");
    return check_from_counts(crossing_counts(g, A, parts, false), A.size(), r);
}

CuttingPartition cutting(const Graph& g, const VertexOrder& ord,
                         const std::vector<std::size_t>& A, double r, std::uint64_t seed,
                         double c0) {
    if (A.empty()) throw input_error("cutting needs a non-empty set A");
    if (r < 1.0) throw input_error("cutting parameter r must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(A);
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
        throw input_error("set A has duplicate members");

    auto want = static_cast<std::size_t>(std::ceil(c0 * r * std::log(r + 2.0)));
    std::size_t k = std::min(pool.size(), std::max<std::size_t>(want, 1));

    CuttingPartition best;
    best.r = r;
    for (std::size_t retries = 0;; ++retries) {
        std::vector<std::size_t> S = sample_without_replacement(pool, k, rng);
        CellPartition cp = cell_partition(g, ord, S, /*theta=*/8);
        std::vector<std::vector<std::size_t>> parts;
        parts.reserve(cp.cells.size());
        for (auto& cell : cp.cells) {
            auto m = cell.members;
            std::sort(m.begin(), m.end());
            parts.push_back(std::move(m));
        }
        CuttingCheck chk = verify_cutting(g, A, parts, r);
        if (chk.ok) {
            best.parts = std::move(parts);
            best.crossingCounts = std::move(chk.counts);
            best.sampleSize = S.size();
            best.retries = retries;
            return best;
        }
        if (k >= pool.size())
            throw invariant_violation_error("cutting failed with S = A, which cannot happen");
        k = std::min(pool.size(), 2 * k);
    }
}

RegularityCheck verify_regularity(const Graph& g,
                                  const std::vector<std::vector<std::size_t>>& parts,
                                  double epsilon) {
    if (epsilon <= 0.0) throw input_error("epsilon must be positive");
    auto res = homogeneity(g, parts, true);
    RegularityCheck chk;
    chk.defect = res.defect;
    chk.goodPairs = std::move(res.goodPairs);
    double n = static_cast<double>(g.num_vertices());
    chk.ok = static_cast<double>(chk.defect) <= epsilon * n * n;
    return chk;
}

RegularityCheck verify_regularity_serial(const Graph& g,
                                         const std::vector<std::vector<std::size_t>>& parts,
                                         double epsilon) {
    if (epsilon <= 0.0) throw input_error("epsilon must be positive");
    auto res = homogeneity(g, parts, false);
    RegularityCheck chk;
    chk.defect = res.defect;
    chk.goodPairs = std::move(res.goodPairs);
    double n = static_cast<double>(g.num_vertices());
    chk.ok = static_cast<double>(chk.defect) <= epsilon * n * n;
    return chk;
}

RegularityPartition regularity(const Graph& g, double epsilon, std::uint64_t seed, double c0) {
    if (epsilon <= 0.0) throw input_error("epsilon must be positive");
    std::size_t n = g.num_vertices();
    if (n == 0) throw input_error("empty graph");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t v = 0; v < n; ++v) pool[v] = v;

    double invEps = 1.0 / epsilon;
    auto want = static_cast<std::size_t>(std::ceil(c0 * invEps * std::log(invEps + 2.0)));
    std::size_t k = std::min(n, std::max<std::size_t>(want, 1));

    RegularityPartition best;
    best.epsilon = epsilon;
    for (std::size_t retries = 0;; ++retries) {
        std::vector<std::size_t> S = sample_without_replacement(pool, k, rng);
        Bitset sMask(n);
        for (std::size_t s : S) sMask.set(s);
        std::map<Bitset, std::vector<std::size_t>> classes;
        for (std::size_t v = 0; v < n; ++v) classes[g.neighbors(v) & sMask].push_back(v);
        std::vector<std::vector<std::size_t>> parts;
        parts.reserve(classes.size());
        for (auto& [trace, members] : classes) parts.push_back(std::move(members));
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        RegularityCheck chk = verify_regularity(g, parts, epsilon);
        if (chk.ok) {
            best.parts = std::move(parts);
            best.goodPairs = std::move(chk.goodPairs);
            best.defect = chk.defect;
            best.sampleSize = S.size();
            best.retries = retries;
            return best;
        }
        if (k >= n)
            throw invariant_violation_error("regularity failed with S = V, which cannot happen");
        k = std::min(n, 2 * k);
    }
}

} // namespace twl
