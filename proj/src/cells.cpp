#include "twl/cells.hpp"

#include "twl/errors.hpp"
#include "twl/patterns.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace twl {

namespace {

std::vector<std::size_t> sorted_by_position(const VertexOrder& ord,
                                            const std::vector<std::size_t>& A) {
    std::vector<std::size_t> out(A.begin(), A.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw input_error("set A has duplicate members");
    for (std::size_t a : out)
        if (a >= ord.size()) throw input_error("set member out of range");
    std::sort(out.begin(), out.end(),
              [&](std::size_t x, std::size_t y) { return ord.position(x) < ord.position(y); });
    return out;
}

struct Ctx {
    const Graph* g = nullptr;
    const VertexOrder* ord = nullptr;
    std::vector<std::size_t> rows; // A by order position
    ReducedMatrix M;
    std::vector<Bitset> profByCol; // per column position, corner rows of (c, c+1)
};

Ctx make_ctx(const Graph& g, const VertexOrder& ord, const std::vector<std::size_t>& A) {
    if (A.empty()) throw input_error("cell machinery needs a non-empty set A");
    Ctx ctx;
    ctx.g = &g;
    ctx.ord = &ord;
    ctx.rows = sorted_by_position(ord, A);
    ctx.M = reduced_matrix(g, ord, A);
    std::size_t n = ord.size();
    std::size_t profRows = ctx.rows.size() >= 2 ? ctx.rows.size() - 1 : 0;
    ctx.profByCol.assign(n, Bitset(profRows));
    if (profRows > 0 && n >= 2) {
        BitMatrix corners = corner_matrix(ctx.M.bits);
        for (std::size_t i = 0; i < corners.num_rows(); ++i)
            for (std::size_t c = corners.row(i).find_first(); c != Bitset::npos;
                 c = corners.row(i).find_next(c))
                ctx.profByCol[c].set(i);
    }
    return ctx;
}

// The four adjacency bits of rows (aLow, aHigh) at column positions
// (colPos, colPos + 1) form a corner iff the rows differ and the columns
// differ. This is the only matrix access decoding is allowed.
bool corner_at(const Graph& g, const VertexOrder& ord, std::size_t aLow, std::size_t aHigh,
               std::size_t colPos) {
    if (colPos + 1 >= ord.size()) return false;
    std::size_t c0 = ord.vertex_at(colPos), c1 = ord.vertex_at(colPos + 1);
    bool b00 = g.has_edge(aLow, c0), b01 = g.has_edge(aLow, c1);
    bool b10 = g.has_edge(aHigh, c0), b11 = g.has_edge(aHigh, c1);
    return (b00 != b10 || b01 != b11) && (b00 != b01 || b10 != b11);
}

struct AnchorPair {
    std::size_t low, high;
};

// Tiles a prefix of the order into segments [start, end]: end is minimal
// such that every pair has a corner at some column window inside the
// segment. Stops when the tail cannot satisfy all pairs.
std::vector<std::pair<std::size_t, std::size_t>> replay_segments(
    const Graph& g, const VertexOrder& ord, const std::vector<AnchorPair>& pairs) {
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    std::size_t n = ord.size();
    std::size_t start = 0;
    while (start < n) {
        std::vector<char> satisfied(pairs.size(), 0);
        std::size_t missing = pairs.size();
        bool closed = false;
        for (std::size_t e = start; e < n && !closed; ++e) {
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (!satisfied[k] && corner_at(g, ord, pairs[k].low, pairs[k].high, e)) {
                    satisfied[k] = 1;
                    --missing;
                }
            }
            if (missing == 0) {
                segments.emplace_back(start, e);
                start = e + 1;
                closed = true;
            }
        }
        if (!closed) break;
    }
    return segments;
}

std::vector<AnchorPair> pairs_from_rows(const Ctx& ctx, const std::vector<std::size_t>& P) {
    std::vector<AnchorPair> pairs;
    pairs.reserve(P.size());
    for (std::size_t i : P) pairs.push_back({ctx.rows[i], ctx.rows[i + 1]});
    return pairs;
}

// Greedy pick of `want` pairwise non-adjacent row indices (gap >= 2).
std::vector<std::size_t> pick_spread_rows(const Bitset& prof, std::size_t want) {
    std::vector<std::size_t> P;
    std::size_t last = Bitset::npos;
    for (std::size_t i = prof.find_first(); i != Bitset::npos && P.size() < want;
         i = prof.find_next(i)) {
        if (last != Bitset::npos && i == last + 1) continue;
        P.push_back(i);
        last = i;
    }
    return P;
}

struct Defined {
    std::size_t pos; // order position of the defined vertex
    CellDescriptor descriptor;
    std::size_t supersetColumns = 0;
};

std::optional<Defined> define_in_ctx(const Ctx& ctx, std::size_t vPos, std::size_t l,
                                     std::size_t t) {
    std::size_t n = ctx.ord->size();
    if (vPos >= n) throw input_error("vertex position out of range");
    if (t == 0) return std::nullopt;
    Bitset prof(ctx.profByCol.empty() ? Bitset() : Bitset(ctx.profByCol[0].size()));
    std::size_t hi = std::min(vPos + l, n - 1);
    for (std::size_t c = vPos; c <= hi; ++c) prof |= ctx.profByCol[c];
    if (prof.count() < 2 * t) return std::nullopt;
    std::vector<std::size_t> P = pick_spread_rows(prof, t);
    if (P.size() < t) return std::nullopt; // profile too clustered for t spread rows
    auto pairs = pairs_from_rows(ctx, P);
    auto segments = replay_segments(*ctx.g, *ctx.ord, pairs);
    std::size_t p = segments.size();
    for (std::size_t k = 0; k < segments.size(); ++k)
        if (segments[k].first <= vPos && vPos <= segments[k].second) {
            p = k;
            break;
        }
    if (p == segments.size())
        throw invariant_violation_error("replay segments do not cover a definable vertex");
    Defined d;
    d.pos = segments[p].second;
    d.descriptor.kind = CellKind::boundary_by_profile;
    for (const auto& pr : pairs) {
        d.descriptor.anchors.push_back(pr.low);
        d.descriptor.anchors.push_back(pr.high);
    }
    d.descriptor.blockRef = {static_cast<long long>(p), 0};
    for (std::size_t c = 0; c < n; ++c) {
        bool all = true;
        for (std::size_t i : P)
            if (!ctx.profByCol[c].test(i)) {
                all = false;
                break;
            }
        if (all) ++d.supersetColumns;
    }
    return d;
}

std::vector<AnchorPair> decode_pairs(const Ctx& ctx, const std::vector<std::size_t>& anchors,
                                     std::size_t from, std::size_t count) {
    if (count % 2 != 0 || from + count > anchors.size())
        throw descriptor_error("anchor tuple has the wrong shape");
    std::map<std::size_t, std::size_t> rowOf;
    for (std::size_t i = 0; i < ctx.rows.size(); ++i) rowOf[ctx.rows[i]] = i;
    std::vector<AnchorPair> pairs;
    for (std::size_t k = from; k < from + count; k += 2) {
        auto itLow = rowOf.find(anchors[k]);
        auto itHigh = rowOf.find(anchors[k + 1]);
        if (itLow == rowOf.end() || itHigh == rowOf.end())
            throw descriptor_error("anchor is not a member of A");
        if (itHigh->second != itLow->second + 1)
            throw descriptor_error("anchor pair is not consecutive in A");
        pairs.push_back({anchors[k], anchors[k + 1]});
    }
    return pairs;
}

std::size_t decode_boundary_pos(const Ctx& ctx, const std::vector<std::size_t>& anchors,
                                std::size_t from, std::size_t count, long long index,
                                long long shift) {
    auto pairs = decode_pairs(ctx, anchors, from, count);
    auto segments = replay_segments(*ctx.g, *ctx.ord, pairs);
    if (index < 0 || static_cast<std::size_t>(index) >= segments.size())
        throw descriptor_error("segment index out of range");
    std::size_t pos = segments[static_cast<std::size_t>(index)].second;
    pos += static_cast<std::size_t>(shift);
    if (pos >= ctx.ord->size()) throw descriptor_error("successor shift leaves the order");
    return pos;
}

constexpr long long kBoundStart = 0;    // virtual boundary before the first vertex
constexpr long long kBoundProfile = 1;  // replayed from anchors + index
constexpr long long kBoundExtremal = 2; // the order maximum

} // namespace

ReducedMatrix reduced_matrix(const Graph& g, const VertexOrder& ord,
                             const std::vector<std::size_t>& A) {
    if (ord.size() != g.num_vertices()) throw input_error("order and graph sizes differ");
    ReducedMatrix m;
    m.rowVertices = sorted_by_position(ord, A);
    m.colVertices = ord.perm();
    m.bits = BitMatrix(m.rowVertices.size(), ord.size());
    for (std::size_t i = 0; i < m.rowVertices.size(); ++i)
        for (std::size_t j = 0; j < ord.size(); ++j)
            if (g.has_edge(m.rowVertices[i], ord.vertex_at(j))) m.bits.set(i, j, true);
    return m;
}

CornerProfile corner_profile(const ReducedMatrix& m, std::size_t j) {
    if (j >= m.bits.num_cols()) throw input_error("profile column out of range");
    CornerProfile out;
    out.column = j;
    if (j + 1 >= m.bits.num_cols() || m.bits.num_rows() < 2) return out; // empty by convention
    for (std::size_t i = 0; i + 1 < m.bits.num_rows(); ++i)
        if (classify_submatrix(m.bits, i, i + 1, j, j + 1).corner) out.rows.push_back(i);
    return out;
}

std::vector<SweepBlock> sweep_blocks(const Graph& g, const VertexOrder& ord,
                                     const std::vector<std::size_t>& A, std::size_t theta) {
    if (theta == 0) throw input_error("sweep threshold must be at least 1");
    Ctx ctx = make_ctx(g, ord, A);
    std::vector<SweepBlock> blocks;
    std::size_t n = ord.size();
    std::size_t profRows = ctx.rows.size() >= 2 ? ctx.rows.size() - 1 : 0;
    std::size_t start = 0;
    Bitset uni(profRows);
    for (std::size_t c = 0; c < n; ++c) {
        uni |= ctx.profByCol[c];
        if (uni.count() >= theta) {
            blocks.push_back({start, c - start, uni.count()});
            start = c + 1;
            uni.reset();
        }
    }
    if (start < n) blocks.push_back({start, n - 1 - start, uni.count()});
    return blocks;
}

std::optional<DefinedVertex> define_vertex(const Graph& g, const VertexOrder& ord,
                                           const std::vector<std::size_t>& A, std::size_t v,
                                           std::size_t l, std::size_t t) {
    Ctx ctx = make_ctx(g, ord, A);
    auto d = define_in_ctx(ctx, ord.position(v), l, t);
    if (!d) return std::nullopt;
    return DefinedVertex{ord.vertex_at(d->pos), std::move(d->descriptor), d->supersetColumns};
}

CellPartition cell_partition(const Graph& g, const VertexOrder& ord,
                             const std::vector<std::size_t>& A, std::size_t theta,
                             std::size_t tdef) {
    if (theta == 0) throw input_error("theta must be at least 1");
    if (tdef == 0) tdef = std::max<std::size_t>(1, theta / 2);
    Ctx ctx = make_ctx(g, ord, A);
    std::size_t n = ord.size();
    auto blocks = sweep_blocks(g, ord, A, theta);

    // Defined vertices: one per block with a rich enough profile, the last
    // column of a block (and its successor) when that column alone is rich,
    // and always the order maximum.
    std::vector<Defined> defined;
    for (const auto& b : blocks) {
        if (auto d = define_in_ctx(ctx, b.start, b.extent, tdef)) defined.push_back(std::move(*d));
        std::size_t lastCol = b.start + b.extent;
        if (ctx.profByCol[lastCol].count() >= 2 * tdef) {
            if (auto d = define_in_ctx(ctx, lastCol, 0, tdef)) {
                if (lastCol + 1 < n) {
                    Defined succ = *d;
                    succ.pos = lastCol + 1;
                    succ.descriptor.blockRef[1] = 1; // successor shift
                    defined.push_back(std::move(succ));
                }
                defined.push_back(std::move(*d));
            }
        }
    }
    {
        Defined maxV;
        maxV.pos = n - 1;
        maxV.descriptor.kind = CellKind::boundary_extremal;
        defined.push_back(std::move(maxV));
    }
    std::sort(defined.begin(), defined.end(),
              [](const Defined& a, const Defined& b) { return a.pos < b.pos; });
    defined.erase(std::unique(defined.begin(), defined.end(),
                              [](const Defined& a, const Defined& b) { return a.pos == b.pos; }),
                  defined.end());

    CellPartition part;
    part.theta = theta;
    part.tdef = tdef;
    part.blockCount = blocks.size();

    Bitset aMask(n ? g.num_vertices() : 0);
    for (std::size_t a : A) aMask.set(a);

    long long prevPos = -1;
    const Defined* prevDef = nullptr;
    for (const auto& def : defined) {
        long long lo = prevPos + 1;
        long long hi = static_cast<long long>(def.pos) - 1;
        if (lo <= hi) {
            // Pattern rows: all corner row pairs of the closed column range
            // [max(prevPos, 0), def.pos]; when there is none, the base row,
            // because a corner-free range is horizontal or vertical.
            std::size_t cLo = prevPos < 0 ? 0 : static_cast<std::size_t>(prevPos);
            std::size_t profRows = ctx.rows.size() >= 2 ? ctx.rows.size() - 1 : 0;
            Bitset uni(profRows);
            for (std::size_t c = cLo; c < def.pos; ++c) uni |= ctx.profByCol[c];
            std::vector<std::size_t> patternRows;
            if (uni.none()) {
                patternRows.push_back(0);
            } else {
                std::set<std::size_t> rows;
                for (std::size_t i = uni.find_first(); i != Bitset::npos; i = uni.find_next(i)) {
                    rows.insert(i);
                    rows.insert(i + 1);
                }
                patternRows.assign(rows.begin(), rows.end());
            }

            CellDescriptor base;
            base.kind = CellKind::interior;
            long long leftType = prevDef == nullptr ? kBoundStart
                                 : prevDef->descriptor.kind == CellKind::boundary_extremal
                                     ? kBoundExtremal
                                     : kBoundProfile;
            long long rightType =
                def.descriptor.kind == CellKind::boundary_extremal ? kBoundExtremal : kBoundProfile;
            auto boundRef = [](const Defined* d) -> std::pair<long long, long long> {
                if (!d || d->descriptor.blockRef.size() < 2) return {0, 0};
                return {d->descriptor.blockRef[0], d->descriptor.blockRef[1]};
            };
            auto [lIdx, lShift] = boundRef(prevDef);
            auto [rIdx, rShift] = boundRef(&def);
            std::vector<std::size_t> leftAnchors =
                prevDef ? prevDef->descriptor.anchors : std::vector<std::size_t>{};
            const std::vector<std::size_t>& rightAnchors = def.descriptor.anchors;
            base.blockRef = {leftType,
                             lIdx,
                             lShift,
                             static_cast<long long>(leftAnchors.size()),
                             rightType,
                             rIdx,
                             rShift,
                             static_cast<long long>(rightAnchors.size())};
            base.anchors = leftAnchors;
            base.anchors.insert(base.anchors.end(), rightAnchors.begin(), rightAnchors.end());
            for (std::size_t r : patternRows) base.anchors.push_back(ctx.rows[r]);

            // Group the interval by the bits at the pattern rows.
            std::map<std::string, Cell> groups;
            for (long long q = lo; q <= hi; ++q) {
                std::string bits;
                bits.reserve(patternRows.size());
                for (std::size_t r : patternRows)
                    bits.push_back(ctx.M.bits.get(r, static_cast<std::size_t>(q)) ? '1' : '0');
                auto [it, fresh] = groups.try_emplace(bits);
                if (fresh) {
                    it->second.descriptor = base;
                    it->second.descriptor.pattern = bits;
                }
                it->second.members.push_back(ord.vertex_at(static_cast<std::size_t>(q)));
            }
            for (auto& [bits, cell] : groups) part.cells.push_back(std::move(cell));
        }
        Cell single;
        single.members = {ord.vertex_at(def.pos)};
        single.descriptor = def.descriptor;
        part.cells.push_back(std::move(single));
        prevPos = static_cast<long long>(def.pos);
        prevDef = &def;
    }

    for (const auto& cell : part.cells)
        part.maxAnchors = std::max(part.maxAnchors, cell.descriptor.anchors.size());

    // Purity is a theorem here, not a hope: check it on construction.
    for (const auto& cell : part.cells) {
        for (std::size_t k = 1; k < cell.members.size(); ++k) {
            Bitset t0 = g.neighbors(cell.members[0]) & aMask;
            Bitset tk = g.neighbors(cell.members[k]) & aMask;
            if (t0 != tk)
                throw invariant_violation_error(
                    "impure cell: vertices " + std::to_string(cell.members[0]) + " and " +
                    std::to_string(cell.members[k]) + " differ on A");
        }
    }
    return part;
}

std::vector<std::size_t> decode_cell(const Graph& g, const VertexOrder& ord,
                                     const std::vector<std::size_t>& A,
                                     const CellDescriptor& d) {
    Ctx ctx = make_ctx(g, ord, A);
    std::size_t n = ord.size();
    switch (d.kind) {
    case CellKind::boundary_extremal:
        return {ord.vertex_at(n - 1)};
    case CellKind::boundary_by_profile: {
        if (d.blockRef.size() < 2) throw descriptor_error("boundary descriptor needs index data");
        std::size_t pos = decode_boundary_pos(ctx, d.anchors, 0, d.anchors.size(), d.blockRef[0],
                                              d.blockRef[1]);
        return {ord.vertex_at(pos)};
    }
    case CellKind::interior: {
        if (d.blockRef.size() != 8) throw descriptor_error("interior descriptor layout mismatch");
        long long leftType = d.blockRef[0], rightType = d.blockRef[4];
        auto leftCount = static_cast<std::size_t>(d.blockRef[3]);
        auto rightCount = static_cast<std::size_t>(d.blockRef[7]);
        long long lo, hi; // exclusive bounds as positions
        if (leftType == kBoundStart)
            lo = -1;
        else if (leftType == kBoundExtremal)
            lo = static_cast<long long>(n) - 1;
        else
            lo = static_cast<long long>(
                decode_boundary_pos(ctx, d.anchors, 0, leftCount, d.blockRef[1], d.blockRef[2]));
        if (rightType == kBoundExtremal)
            hi = static_cast<long long>(n) - 1;
        else
            hi = static_cast<long long>(decode_boundary_pos(ctx, d.anchors, leftCount, rightCount,
                                                            d.blockRef[5], d.blockRef[6]));
        std::size_t patternCount = d.anchors.size() - leftCount - rightCount;
        if (patternCount != d.pattern.size())
            throw descriptor_error("pattern length does not match its anchors");
        std::vector<std::size_t> patternAnchors(d.anchors.begin() + leftCount + rightCount,
                                                d.anchors.end());
        std::set<std::size_t> aSet(ctx.rows.begin(), ctx.rows.end());
        for (std::size_t a : patternAnchors)
            if (!aSet.count(a)) throw descriptor_error("pattern anchor is not a member of A");
        std::vector<std::size_t> members;
        for (long long q = lo + 1; q < hi; ++q) {
            bool match = true;
            std::size_t v = ord.vertex_at(static_cast<std::size_t>(q));
            for (std::size_t k = 0; k < patternAnchors.size() && match; ++k)
                match = g.has_edge(v, patternAnchors[k]) == (d.pattern[k] == '1');
            if (match) members.push_back(v);
        }
        return members;
    }
    }
    throw descriptor_error("unknown descriptor kind");
}

std::vector<std::vector<std::size_t>> oracle_partition(const Graph& g,
                                                       const std::vector<std::size_t>& A) {
    if (A.empty()) throw input_error("oracle partition needs a non-empty set A");
    Bitset aMask(g.num_vertices());
    for (std::size_t a : A) {
        if (a >= g.num_vertices()) throw input_error("set member out of range");
        aMask.set(a);
    }
    std::map<Bitset, std::vector<std::size_t>> classes;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        classes[g.neighbors(v) & aMask].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [trace, members] : classes) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

namespace {

std::string kind_name(CellKind k) {
    switch (k) {
    case CellKind::boundary_by_profile: return "boundary-by-profile";
    case CellKind::boundary_extremal: return "boundary-extremal";
    case CellKind::interior: return "interior";
    }
    return "?";
}

CellKind kind_from_name(const std::string& s) {
    if (s == "boundary-by-profile") return CellKind::boundary_by_profile;
    if (s == "boundary-extremal") return CellKind::boundary_extremal;
    if (s == "interior") return CellKind::interior;
    throw input_error("unknown cell kind: " + s);
}

} // namespace

std::string to_json(const CellPartition& p) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : p.cells) {
        nlohmann::json d;
        d["kind"] = kind_name(cell.descriptor.kind);
        d["anchors"] = cell.descriptor.anchors;
        d["blockRef"] = cell.descriptor.blockRef;
        d["pattern"] = cell.descriptor.pattern;
        cells.push_back({{"members", cell.members}, {"descriptor", d}});
    }
    nlohmann::json j;
    j["theta"] = p.theta;
    j["tdef"] = p.tdef;
    j["cells"] = std::move(cells);
    return j.dump();
}

CellPartition partition_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        CellPartition p;
        p.theta = j.at("theta").get<std::size_t>();
        p.tdef = j.value("tdef", std::size_t{0});
        for (const auto& c : j.at("cells")) {
            Cell cell;
            cell.members = c.at("members").get<std::vector<std::size_t>>();
            const auto& d = c.at("descriptor");
            cell.descriptor.kind = kind_from_name(d.at("kind").get<std::string>());
            cell.descriptor.anchors = d.at("anchors").get<std::vector<std::size_t>>();
            cell.descriptor.blockRef = d.at("blockRef").get<std::vector<long long>>();
            cell.descriptor.pattern = d.at("pattern").get<std::string>();
            p.cells.push_back(std::move(cell));
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("partition JSON: ") + e.what());
    }
}

} // namespace twl
