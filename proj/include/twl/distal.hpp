#ifndef TWL_DISTAL_HPP
#define TWL_DISTAL_HPP

#include "twl/graph.hpp"

#include <cstdint>
#include <cstddef>
#include <vector>

namespace twl {

struct CuttingPartition {
    std::vector<std::vector<std::size_t>> parts;
    double r = 1.0;
    std::vector<std::size_t> crossingCounts; // per part, crossing elements of A
    std::size_t sampleSize = 0;              // final |S|
    std::size_t retries = 0;
};

struct CuttingCheck {
    bool ok = false;
    std::vector<std::size_t> counts;
};

/// Las Vegas cutting: sample S from A, partition by cells over S, verify,
/// double the sample on failure. S = A makes every crossing count zero,
/// so the loop always terminates with a verified partition.
CuttingPartition cutting(const Graph& g, const VertexOrder& ord,
                         const std::vector<std::size_t>& A, double r, std::uint64_t seed,
                         double c0 = 8.0);

/// Exact crossing counts: a in A crosses a part iff the part holds both a
/// neighbor and a non-neighbor of a. ok iff every count <= |A| / r.
CuttingCheck verify_cutting(const Graph& g, const std::vector<std::size_t>& A,
                            const std::vector<std::vector<std::size_t>>& parts, double r);
CuttingCheck verify_cutting_serial(const Graph& g, const std::vector<std::size_t>& A,
                                   const std::vector<std::vector<std::size_t>>& parts, double r);

struct RegularityPartition {
    std::vector<std::vector<std::size_t>> parts;
    double epsilon = 1.0;
    std::vector<std::pair<std::size_t, std::size_t>> goodPairs; // homogeneous (i, j), i <= j
    std::uint64_t defect = 0; // sum of |P_i||P_j| over non-homogeneous ordered pairs
    std::size_t sampleSize = 0;
    std::size_t retries = 0;
};

struct RegularityCheck {
    bool ok = false;
    std::uint64_t defect = 0;
    std::vector<std::pair<std::size_t, std::size_t>> goodPairs;
};

/// Las Vegas 0-1 regularity: sample S from V, partition by exact N_S
/// classes, verify the defect, double the sample on failure. S = V gives
/// defect zero (equal-neighborhood classes are edge-free and pairwise
/// homogeneous), so the loop always terminates.
RegularityPartition regularity(const Graph& g, double epsilon, std::uint64_t seed,
                               double c0 = 8.0);

/// Homogeneity per ordered pair, diagonal included: a part is homogeneous
/// with itself only when it is edge-free. ok iff defect <= epsilon |V|^2.
RegularityCheck verify_regularity(const Graph& g,
                                  const std::vector<std::vector<std::size_t>>& parts,
                                  double epsilon);
RegularityCheck verify_regularity_serial(const Graph& g,
                                         const std::vector<std::vector<std::size_t>>& parts,
                                         double epsilon);

} // namespace twl

#endif
