#ifndef TWL_GENERATOR_HPP
#define TWL_GENERATOR_HPP

#include "twl/graph.hpp"
#include "twl/trigraph.hpp"

#include <cstdint>
#include <string>

namespace twl {

/// Graph together with a verified t-sequence and the leaf order it induces.
struct CertifiedInstance {
    Graph graph;
    ContractionSequence sequence;
    VertexOrder order;
    std::size_t t = 0;
};

/// Builds an instance by reversed contraction: grow from one vertex by
/// splitting, keeping red degree <= t throughout, and retrying until the
/// final trigraph is red-free. The reversed splits form the certificate.
CertifiedInstance gen_certified(std::size_t t, std::size_t n, std::uint64_t seed,
                                std::size_t retryBudget = 64);

std::string to_json(const CertifiedInstance& inst);
CertifiedInstance certified_from_json(const std::string& text);

} // namespace twl

#endif
