#ifndef TWL_NEIGHBORHOODS_HPP
#define TWL_NEIGHBORHOODS_HPP

#include "twl/graph.hpp"

#include <cstddef>
#include <vector>

namespace twl {

/// Distinct traces N_A(v) over all vertices v, each trace a subset of A.
/// `traces` includes the empty trace when it occurs; `hasEmpty` flags it.
struct NeighborhoodFamily {
    std::vector<std::size_t> A;   // sorted
    std::vector<Bitset> traces;   // distinct, as masks over vertex ids, sorted
    bool hasEmpty = false;

    std::size_t size() const { return traces.size(); }
};

NeighborhoodFamily neighborhoods_in(const Graph& g, const std::vector<std::size_t>& A);

/// |N_G(A)|, empty trace included.
std::size_t distinct_neighborhoods(const Graph& g, const std::vector<std::size_t>& A);

/// One vertex per non-empty trace, smallest id per trace, sorted.
std::vector<std::size_t> representative_set(const Graph& g, const std::vector<std::size_t>& A);

/// pi_G(k) = max over |A| <= k of |N_G(A)|; exhaustive, capped at 16 vertices.
std::size_t shatter_function(const Graph& g, std::size_t k, std::size_t cap = 16);

/// Largest shattered subset size; exhaustive, capped at 16 vertices.
std::size_t vc_dimension(const Graph& g, std::size_t cap = 16);

} // namespace twl

#endif
