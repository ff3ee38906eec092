#include "twl/neighborhoods.hpp"

#include "twl/errors.hpp"

#include <algorithm>
#include <set>

namespace twl {

namespace {

Bitset mask_of(const std::vector<std::size_t>& A, std::size_t n) {
    Bitset m(n);
    for (std::size_t a : A) {
        if (a >= n) throw input_error("set member out of range");
        m.set(a);
    }
    return m;
}

} // namespace

NeighborhoodFamily neighborhoods_in(const Graph& g, const std::vector<std::size_t>& A) {
    if (A.empty()) throw input_error("neighborhood family needs a non-empty set A");
    std::size_t n = g.num_vertices();
    Bitset aMask = mask_of(A, n);
    std::set<Bitset> traces;
    bool hasEmpty = false;
    for (std::size_t v = 0; v < n; ++v) {
        Bitset trace = g.neighbors(v) & aMask;
        if (trace.none()) hasEmpty = true;
        traces.insert(std::move(trace));
    }
    NeighborhoodFamily fam;
    fam.A.assign(A.begin(), A.end());
    std::sort(fam.A.begin(), fam.A.end());
    fam.traces.assign(traces.begin(), traces.end());
    fam.hasEmpty = hasEmpty;
    return fam;
}

std::size_t distinct_neighborhoods(const Graph& g, const std::vector<std::size_t>& A) {
    return neighborhoods_in(g, A).size();
}

std::vector<std::size_t> representative_set(const Graph& g, const std::vector<std::size_t>& A) {
    if (A.empty()) throw input_error("representative set needs a non-empty set A");
    std::size_t n = g.num_vertices();
    Bitset aMask = mask_of(A, n);
    std::set<Bitset> seen;
    std::vector<std::size_t> reps;
    for (std::size_t v = 0; v < n; ++v) { // ascending v gives min-id tie-break
        Bitset trace = g.neighbors(v) & aMask;
        if (trace.none()) continue;
        if (seen.insert(std::move(trace)).second) reps.push_back(v);
    }
    return reps;
}

namespace {

std::size_t distinct_traces_mask(const Graph& g, std::uint32_t aMask) {
    std::set<std::uint32_t> traces;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        std::uint32_t t = 0;
        for (std::size_t u = 0; u < g.num_vertices(); ++u)
            if ((aMask >> u & 1u) && g.has_edge(v, u)) t |= 1u << u;
        traces.insert(t);
    }
    return traces.size();
}

} // namespace

std::size_t shatter_function(const Graph& g, std::size_t k, std::size_t cap) {
    std::size_t n = g.num_vertices();
    if (n > cap)
        throw resource_limit_error("shatter function capped at " + std::to_string(cap) +
                                   " vertices");
    std::size_t best = 1; // A = {} contributes the single empty trace
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
        best = std::max(best, distinct_traces_mask(g, mask));
    }
    return best;
}

std::size_t vc_dimension(const Graph& g, std::size_t cap) {
    std::size_t n = g.num_vertices();
    if (n > cap)
        throw resource_limit_error("vc dimension capped at " + std::to_string(cap) + " vertices");
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size <= best) continue;
        // Shattered iff every subset of the mask occurs as a trace.
        std::set<std::uint32_t> traces;
        for (std::size_t v = 0; v < n; ++v) {
            std::uint32_t t = 0;
            for (std::size_t u = 0; u < n; ++u)
                if ((mask >> u & 1u) && g.has_edge(v, u)) t |= 1u << u;
            traces.insert(t);
        }
        if (traces.size() == (1u << size)) best = size;
    }
    return best;
}

} // namespace twl
