#include "twl/trigraph.hpp"

#include "twl/errors.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace twl {

Trigraph Trigraph::from_graph(const Graph& g) {
    Trigraph tg(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) tg.black_[v] = g.neighbors(v);
    return tg;
}

void Trigraph::add_black(std::size_t u, std::size_t v) {
    if (u == v) throw input_error("self-loop in trigraph");
    if (red_[u].test(v)) throw invariant_violation_error("edge both black and red");
    black_[u].set(v);
    black_[v].set(u);
}

void Trigraph::add_red(std::size_t u, std::size_t v) {
    if (u == v) throw input_error("self-loop in trigraph");
    if (black_[u].test(v)) throw invariant_violation_error("edge both black and red");
    red_[u].set(v);
    red_[v].set(u);
}

std::size_t Trigraph::max_red_degree() const {
    std::size_t best = 0;
    for (std::size_t v = live_.find_first(); v != Bitset::npos; v = live_.find_next(v))
        best = std::max(best, red_[v].count());
    return best;
}

std::size_t Trigraph::contract(std::size_t u, std::size_t v) {
    if (u == v) throw input_error("contracting a vertex with itself");
    if (!live_.test(u) || !live_.test(v)) throw input_error("contracting a dead vertex");
    std::size_t w = std::min(u, v);
    std::size_t dead = std::max(u, v);

    // Black survives where both agreed; everything else touched becomes red.
    Bitset bothBlack = black_[u] & black_[v];
    Bitset touched = (black_[u] | black_[v] | red_[u] | red_[v]) & live_;
    touched.reset(u);
    touched.reset(v);
    Bitset newBlack = bothBlack & live_;
    newBlack.reset(u);
    newBlack.reset(v);
    Bitset newRed = touched - newBlack;

    for (std::size_t x = black_[dead].find_first(); x != Bitset::npos; x = black_[dead].find_next(x))
        black_[x].reset(dead);
    for (std::size_t x = red_[dead].find_first(); x != Bitset::npos; x = red_[dead].find_next(x))
        red_[x].reset(dead);
    for (std::size_t x = black_[w].find_first(); x != Bitset::npos; x = black_[w].find_next(x))
        black_[x].reset(w);
    for (std::size_t x = red_[w].find_first(); x != Bitset::npos; x = red_[w].find_next(x))
        red_[x].reset(w);
    black_[dead].reset();
    red_[dead].reset();
    black_[w] = newBlack;
    red_[w] = newRed;
    for (std::size_t x = newBlack.find_first(); x != Bitset::npos; x = newBlack.find_next(x))
        black_[x].set(w);
    for (std::size_t x = newRed.find_first(); x != Bitset::npos; x = newRed.find_next(x))
        red_[x].set(w);
    live_.reset(dead);
    return w;
}

std::string Trigraph::canonical_key() const {
    std::ostringstream out;
    for (std::size_t v = live_.find_first(); v != Bitset::npos; v = live_.find_next(v)) {
        out << v << ':';
        for (std::size_t u = live_.find_first(); u != Bitset::npos; u = live_.find_next(u))
            out << (black_[v].test(u) ? 'b' : red_[v].test(u) ? 'r' : '.');
        out << ';';
    }
    return out.str();
}

SequenceReport verify_sequence(const Graph& g, const ContractionSequence& seq, std::size_t d) {
    SequenceReport rep;
    Trigraph tg = Trigraph::from_graph(g);
    rep.maxRedSeen = tg.max_red_degree(); // zero for a plain graph
    std::size_t n = g.num_vertices();
    for (std::size_t i = 0; i < seq.merges.size(); ++i) {
        auto [u, v] = seq.merges[i];
        if (u >= n || v >= n || u == v || !tg.is_live(u) || !tg.is_live(v)) {
            rep.structuralError = "step " + std::to_string(i) + ": merge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ") references an invalid vertex";
            return rep;
        }
        tg.contract(u, v);
        std::size_t mr = tg.max_red_degree();
        rep.maxRedSeen = std::max(rep.maxRedSeen, mr);
        rep.trace.push_back({i, u, v, mr});
    }
    if (tg.live_count() != 1) {
        rep.structuralError = "sequence leaves " + std::to_string(tg.live_count()) +
                              " vertices instead of one";
        rep.trace.clear();
        return rep;
    }
    rep.valid = true;
    rep.withinBound = rep.maxRedSeen <= d;
    return rep;
}

namespace {

bool collapse_dfs(const Trigraph& tg, std::size_t d,
                  std::unordered_set<std::string>& dead_ends,
                  std::vector<std::pair<std::size_t, std::size_t>>& merges) {
    if (tg.live_count() == 1) return true;
    std::string key = tg.canonical_key();
    if (dead_ends.count(key)) return false;
    std::vector<std::size_t> live;
    for (std::size_t v = tg.live_mask().find_first(); v != Bitset::npos;
         v = tg.live_mask().find_next(v))
        live.push_back(v);
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            Trigraph child = tg;
            child.contract(live[i], live[j]);
            if (child.max_red_degree() > d) continue;
            merges.emplace_back(live[i], live[j]);
            if (collapse_dfs(child, d, dead_ends, merges)) return true;
            merges.pop_back();
        }
    }
    dead_ends.insert(std::move(key));
    return false;
}

} // namespace

TwinWidthResult exact_twinwidth(const Graph& g, std::size_t limit) {
    std::size_t n = g.num_vertices();
    if (n > limit)
        throw resource_limit_error("exact twin-width capped at " + std::to_string(limit) +
                                   " vertices, got " + std::to_string(n));
    if (n == 0) throw input_error("empty graph");
    Trigraph start = Trigraph::from_graph(g);
    for (std::size_t d = 0;; ++d) {
        std::unordered_set<std::string> dead_ends;
        std::vector<std::pair<std::size_t, std::size_t>> merges;
        if (collapse_dfs(start, d, dead_ends, merges))
            return {d, ContractionSequence{std::move(merges)}};
    }
}

VertexOrder order_from_sequence(const Graph& g, const ContractionSequence& seq) {
    std::size_t n = g.num_vertices();
    std::vector<std::vector<std::size_t>> leaves(n);
    Bitset live(n);
    live.set();
    for (std::size_t v = 0; v < n; ++v) leaves[v] = {v};
    for (std::size_t i = 0; i < seq.merges.size(); ++i) {
        auto [u, v] = seq.merges[i];
        if (u >= n || v >= n || u == v || !live.test(u) || !live.test(v))
            throw input_error("sequence step " + std::to_string(i) + " is structurally invalid");
        std::size_t w = std::min(u, v);
        std::size_t dead = std::max(u, v);
        std::vector<std::size_t> merged = std::move(leaves[u]);
        merged.insert(merged.end(), leaves[v].begin(), leaves[v].end());
        leaves[w] = std::move(merged);
        leaves[dead].clear();
        live.reset(dead);
    }
    if (live.count() != 1)
        throw input_error("sequence does not contract the graph to a single vertex");
    return VertexOrder(leaves[live.find_first()]);
}

} // namespace twl
