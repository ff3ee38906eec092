#ifndef TWL_GRAPH_HPP
#define TWL_GRAPH_HPP

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twl {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Simple undirected graph over dense vertex ids 0..n-1.
/// Adjacency is stored as one bitset row per vertex; rows stay symmetric
/// and the diagonal stays zero.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const;

    bool has_edge(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
    void add_edge(std::size_t u, std::size_t v);
    const Bitset& neighbors(std::size_t v) const { return adj_[v]; }

    std::vector<std::pair<std::size_t, std::size_t>> edge_list() const;

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::vector<Bitset> adj_;
};

/// Total vertex order: perm[i] is the i-th vertex, position(v) its index.
class VertexOrder {
public:
    VertexOrder() = default;
    explicit VertexOrder(std::vector<std::size_t> perm);

    static VertexOrder identity(std::size_t n);

    std::size_t size() const { return perm_.size(); }
    std::size_t vertex_at(std::size_t i) const { return perm_[i]; }
    std::size_t position(std::size_t v) const { return pos_[v]; }
    const std::vector<std::size_t>& perm() const { return perm_; }

    bool operator==(const VertexOrder& other) const { return perm_ == other.perm_; }

private:
    std::vector<std::size_t> perm_;
    std::vector<std::size_t> pos_;
};

// Graph file format: first line "n m", then m lines "u v" (0-indexed).
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Order file format: one line of n space-separated vertex ids.
VertexOrder parse_order(const std::string& text, std::size_t n);
std::string serialize_order(const VertexOrder& ord);

class BitMatrix; // bitmatrix.hpp

/// M[i][j] = 1 iff the i-th and j-th vertices of ord are adjacent.
BitMatrix adjacency_matrix(const Graph& g, const VertexOrder& ord);

/// k disjoint edges (2i, 2i+1); A = the odd-indexed endpoints.
std::pair<Graph, std::vector<std::size_t>> gen_matching(std::size_t k);

// Convenience builders used all over the tests.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

} // namespace twl

#endif
