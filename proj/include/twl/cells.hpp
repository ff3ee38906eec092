#ifndef TWL_CELLS_HPP
#define TWL_CELLS_HPP

#include "twl/bitmatrix.hpp"
#include "twl/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace twl {

/// Adjacency matrix restricted to rows in A. Rows follow the order
/// restricted to A, columns follow the order over all vertices.
struct ReducedMatrix {
    std::vector<std::size_t> rowVertices; // A, by order position
    std::vector<std::size_t> colVertices; // all vertices, by order position
    BitMatrix bits;                       // |A| x n
};

ReducedMatrix reduced_matrix(const Graph& g, const VertexOrder& ord,
                             const std::vector<std::size_t>& A);

/// Row indices i with a corner in rows (i, i+1), columns (j, j+1).
/// The last column has an empty profile by convention.
struct CornerProfile {
    std::size_t column; // column position j
    std::vector<std::size_t> rows;
};

CornerProfile corner_profile(const ReducedMatrix& m, std::size_t j);

/// Consecutive column block of the sweep: positions [start, start + extent].
struct SweepBlock {
    std::size_t start;       // order position of the block's first vertex
    std::size_t extent;      // r_j; block holds extent + 1 columns
    std::size_t profileSize; // |prof(block columns)|
};

/// Greedy minimal blocks: extent grows until the block's profile reaches
/// theta; the last block absorbs the tail when theta is unreachable.
std::vector<SweepBlock> sweep_blocks(const Graph& g, const VertexOrder& ord,
                                     const std::vector<std::size_t>& A, std::size_t theta);

enum class CellKind { boundary_by_profile, boundary_extremal, interior };

/// Self-contained decodable description of one cell. Decoding needs only
/// the order, adjacency to the anchors, and the stored pattern.
///
/// boundary_by_profile: anchors = t pairs (row vertex, its A-successor);
///   blockRef = {segment index p, successor shift}. Decodes to one vertex
///   by replaying the profile-containment sweep from the order minimum.
/// boundary_extremal: the order-maximum vertex; no anchors.
/// interior: anchors = left boundary anchors ++ right boundary anchors ++
///   one anchor per pattern row; blockRef carries the boundary layout;
///   pattern holds the members' adjacency bits at the pattern rows.
struct CellDescriptor {
    CellKind kind = CellKind::interior;
    std::vector<std::size_t> anchors;
    std::vector<long long> blockRef;
    std::string pattern;
};

struct Cell {
    std::vector<std::size_t> members; // sorted by order position
    CellDescriptor descriptor;
};

struct CellPartition {
    std::size_t theta = 0;
    std::size_t tdef = 0;       // profile-pick parameter; blocks with
                                // |prof| >= 2*tdef get a defined vertex
    std::vector<Cell> cells;
    std::size_t blockCount = 0;
    std::size_t maxAnchors = 0;
};

/// Partition of V(G) into N_A-pure cells, each carried by a descriptor.
/// tdef = 0 picks the default max(1, theta / 2).
/// Purity is checked on construction; a failure throws
/// invariant_violation_error with a counterexample pair.
CellPartition cell_partition(const Graph& g, const VertexOrder& ord,
                             const std::vector<std::size_t>& A, std::size_t theta,
                             std::size_t tdef = 0);

/// Members of the cell d describes, recomputed from scratch.
std::vector<std::size_t> decode_cell(const Graph& g, const VertexOrder& ord,
                                     const std::vector<std::size_t>& A,
                                     const CellDescriptor& d);

struct DefinedVertex {
    std::size_t vertex;
    CellDescriptor descriptor;
    std::size_t supersetColumns; // |{u : P subset of prof(u)}|, for the < 2t check
};

/// Singles out one vertex of S^l(v) when |prof(S^l(v))| >= 2t.
std::optional<DefinedVertex> define_vertex(const Graph& g, const VertexOrder& ord,
                                           const std::vector<std::size_t>& A,
                                           std::size_t v, std::size_t l, std::size_t t);

/// Exact partition of V by N_A equality; classes ordered by smallest member.
std::vector<std::vector<std::size_t>> oracle_partition(const Graph& g,
                                                       const std::vector<std::size_t>& A);

std::string to_json(const CellPartition& p);
CellPartition partition_from_json(const std::string& text);

} // namespace twl

#endif
