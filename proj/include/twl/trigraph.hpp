#ifndef TWL_TRIGRAPH_HPP
#define TWL_TRIGRAPH_HPP

#include "twl/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace twl {

/// Graph with disjoint black (usual) and red (error) edge sets.
/// Vertices can be dead after contractions; ids are never reused.
class Trigraph {
public:
    Trigraph() = default;
    explicit Trigraph(std::size_t n)
        : live_(n), black_(n, Bitset(n)), red_(n, Bitset(n)) {
        live_.set();
    }
    static Trigraph from_graph(const Graph& g);

    std::size_t capacity() const { return live_.size(); }
    std::size_t live_count() const { return live_.count(); }
    bool is_live(std::size_t v) const { return live_.test(v); }
    const Bitset& live_mask() const { return live_; }

    bool black(std::size_t u, std::size_t v) const { return black_[u].test(v); }
    bool red(std::size_t u, std::size_t v) const { return red_[u].test(v); }
    const Bitset& black_row(std::size_t v) const { return black_[v]; }
    const Bitset& red_row(std::size_t v) const { return red_[v]; }

    void add_black(std::size_t u, std::size_t v);
    void add_red(std::size_t u, std::size_t v);

    std::size_t red_degree(std::size_t v) const { return red_[v].count(); }
    std::size_t max_red_degree() const;

    /// Identify u and v into min(u, v); the larger id dies.
    /// Black survives where both agreed, absence where both were absent,
    /// red otherwise. Returns the surviving id.
    std::size_t contract(std::size_t u, std::size_t v);

    /// Stable key of the live part, for memoization.
    std::string canonical_key() const;

private:
    Bitset live_;
    std::vector<Bitset> black_;
    std::vector<Bitset> red_;
};

/// Ordered merges (u, v); each merge identifies the pair into min(u, v).
struct ContractionSequence {
    std::vector<std::pair<std::size_t, std::size_t>> merges;
};

struct SequenceStep {
    std::size_t step;
    std::size_t u, v;
    std::size_t maxRed;
};

struct SequenceReport {
    bool valid = false;              // structurally sound (live vertices, ends at one)
    bool withinBound = false;        // every intermediate red degree <= d
    std::size_t maxRedSeen = 0;
    std::string structuralError;     // empty when valid
    std::vector<SequenceStep> trace;
};

/// Replays seq on g and checks it is a d-sequence.
SequenceReport verify_sequence(const Graph& g, const ContractionSequence& seq, std::size_t d);

struct TwinWidthResult {
    std::size_t width;
    ContractionSequence witness;
};

/// Exact twin-width by iterative deepening over contraction orders.
/// Throws resource_limit_error when the graph exceeds the vertex cap.
TwinWidthResult exact_twinwidth(const Graph& g, std::size_t limit = 10);

/// Left-to-right leaf order of the contraction forest of seq:
/// each merge (u, v) makes u's subtree immediately precede v's.
VertexOrder order_from_sequence(const Graph& g, const ContractionSequence& seq);

} // namespace twl

#endif
