#include "twl/graph.hpp"

#include "twl/bitmatrix.hpp"
#include "twl/errors.hpp"

#include <sstream>

namespace twl {

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& row : adj_) twice += row.count();
    return twice / 2;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
    if (u >= adj_.size() || v >= adj_.size())
        throw input_error("vertex id out of range");
    adj_[u].set(v);
    adj_[v].set(u);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edge_list() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u)
        for (std::size_t v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v))
            out.emplace_back(u, v);
    return out;
}

VertexOrder::VertexOrder(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    pos_.assign(perm_.size(), perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        if (perm_[i] >= perm_.size() || pos_[perm_[i]] != perm_.size())
            throw input_error("order is not a permutation of 0..n-1");
        pos_[perm_[i]] = i;
    }
}

VertexOrder VertexOrder::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return VertexOrder(std::move(p));
}

namespace {

std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

Graph parse_graph(const std::string& text) {
    auto lines = nonempty_lines(text);
    if (lines.empty()) throw input_error("graph file: missing header line");
    std::istringstream head(lines[0]);
    std::size_t n = 0, m = 0;
    if (!(head >> n >> m)) throw input_error("graph file line 1: expected \"n m\"");
    Graph g(n);
    std::size_t seen = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::istringstream row(lines[li]);
        std::size_t u, v;
        if (!(row >> u)) continue; // blank line
        if (!(row >> v))
            throw input_error("graph file line " + std::to_string(li + 1) + ": expected \"u v\"");
        if (u >= n || v >= n)
            throw input_error("graph file line " + std::to_string(li + 1) + ": vertex id >= n");
        if (u == v)
            throw input_error("graph file line " + std::to_string(li + 1) + ": self-loop");
        if (g.has_edge(u, v))
            throw input_error("graph file line " + std::to_string(li + 1) + ": duplicate edge");
        g.add_edge(u, v);
        ++seen;
    }
    if (seen != m)
        throw input_error("graph file: header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(seen));
    return g;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    auto edges = g.edge_list();
    out << g.num_vertices() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

VertexOrder parse_order(const std::string& text, std::size_t n) {
    std::istringstream in(text);
    std::vector<std::size_t> perm;
    std::size_t v;
    while (in >> v) perm.push_back(v);
    if (perm.size() != n)
        throw input_error("order file: expected " + std::to_string(n) + " ids, found " +
                          std::to_string(perm.size()));
    return VertexOrder(std::move(perm));
}

std::string serialize_order(const VertexOrder& ord) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ord.size(); ++i) {
        if (i) out << ' ';
        out << ord.vertex_at(i);
    }
    out << '\n';
    return out.str();
}

BitMatrix adjacency_matrix(const Graph& g, const VertexOrder& ord) {
    if (ord.size() != g.num_vertices())
        throw input_error("order and graph sizes differ");
    std::size_t n = g.num_vertices();
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.has_edge(ord.vertex_at(i), ord.vertex_at(j))) m.set(i, j, true);
    return m;
}

std::pair<Graph, std::vector<std::size_t>> gen_matching(std::size_t k) {
    Graph g(2 * k);
    std::vector<std::size_t> A(k);
    for (std::size_t i = 0; i < k; ++i) {
        g.add_edge(2 * i, 2 * i + 1);
        A[i] = 2 * i + 1;
    }
    return {std::move(g), std::move(A)};
}

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(std::size_t n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

} // namespace twl
