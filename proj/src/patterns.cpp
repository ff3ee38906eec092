#include "twl/patterns.hpp"

#include "twl/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <set>
#include <vector>

namespace twl {

namespace {

void check_window(const BitMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0,
                  std::size_t c1) {
    if (r1 >= m.num_rows() || c1 >= m.num_cols() || r0 > r1 || c0 > c1)
        throw input_error("submatrix window out of range");
}

} // namespace

SubmatrixClass classify_submatrix(const BitMatrix& m, std::size_t r0, std::size_t r1,
                                  std::size_t c0, std::size_t c1) {
    check_window(m, r0, r1, c0, c1);
    // Vertical: all rows equal. Horizontal: all columns equal, i.e. every
    // row is constant across the window.
    bool vertical = true;
    bool horizontal = true;
    for (std::size_t i = r0; i <= r1 && (vertical || horizontal); ++i) {
        bool first = m.get(i, c0);
        for (std::size_t j = c0; j <= c1; ++j) {
            if (m.get(i, j) != first) horizontal = false;
            if (m.get(i, j) != m.get(r0, j)) vertical = false;
        }
    }
    SubmatrixClass out;
    out.vertical = vertical;
    out.horizontal = horizontal;
    out.mixed = !vertical && !horizontal;
    out.corner = out.mixed && r1 == r0 + 1 && c1 == c0 + 1;
    return out;
}

BitMatrix corner_matrix_serial(const BitMatrix& m) {
    if (m.num_rows() < 2 || m.num_cols() < 2)
        throw input_error("corner matrix needs at least a 2x2 input");
    BitMatrix b(m.num_rows() - 1, m.num_cols() - 1);
    for (std::size_t i = 0; i + 1 < m.num_rows(); ++i)
        for (std::size_t j = 0; j + 1 < m.num_cols(); ++j)
            if (classify_submatrix(m, i, i + 1, j, j + 1).mixed) b.set(i, j, true);
    return b;
}

BitMatrix corner_matrix(const BitMatrix& m) {
    if (m.num_rows() < 2 || m.num_cols() < 2)
        throw input_error("corner matrix needs at least a 2x2 input");
    std::size_t rows = m.num_rows() - 1;
    std::size_t cols = m.num_cols() - 1;
    BitMatrix b(rows, cols);
    // Window (i, j) is a corner iff its two rows differ and its two columns
    // differ; both tests are single xor/shift passes per row pair.
#pragma omp parallel for schedule(static)
    for (long long li = 0; li < static_cast<long long>(rows); ++li) {
        auto i = static_cast<std::size_t>(li);
        const Bitset& a = m.row(i);
        const Bitset& c = m.row(i + 1);
        Bitset d = a ^ c;
        Bitset rowsDiffer = d | (d >> 1);
        Bitset colsDiffer = (a ^ (a >> 1)) | (c ^ (c >> 1));
        Bitset res = rowsDiffer & colsDiffer;
        res.resize(cols);
        b.row(i) = std::move(res);
    }
    return b;
}

namespace {

// Inclusive-rectangle popcount over an indicator matrix.
class PrefixSums {
public:
    explicit PrefixSums(const BitMatrix& m)
        : cols_(m.num_cols()), sums_((m.num_rows() + 1) * (m.num_cols() + 1), 0) {
        for (std::size_t i = 0; i < m.num_rows(); ++i)
            for (std::size_t j = 0; j < m.num_cols(); ++j)
                at(i + 1, j + 1) = at(i, j + 1) + at(i + 1, j) - at(i, j) + (m.get(i, j) ? 1 : 0);
    }

    bool any(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        if (r1 < r0 || c1 < c0) return false;
        return at(r1 + 1, c1 + 1) - at(r0, c1 + 1) - at(r1 + 1, c0) + at(r0, c0) > 0;
    }

private:
    std::uint32_t& at(std::size_t i, std::size_t j) { return sums_[i * (cols_ + 1) + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return sums_[i * (cols_ + 1) + j]; }

    std::size_t cols_;
    std::vector<std::uint32_t> sums_;
};

// Zone test for a (rowStart..rowEnd) x (colStart..colEnd) zone of the
// original matrix. For grid minors the indicator is the matrix itself; for
// mixed minors it is the corner matrix and the queried rectangle shrinks by
// one in each direction, so a corner straddling a division line does not
// make either zone mixed.
struct ZoneTest {
    const PrefixSums* prefix;
    bool shrink;

    bool good(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        if (shrink) {
            if (r1 == r0 || c1 == c0) return false;
            return prefix->any(r0, r1 - 1, c0, c1 - 1);
        }
        return prefix->any(r0, r1, c0, c1);
    }
};

// For fixed row cuts, a greedy left-to-right column scan decides whether a
// (t, t)-division exists: close each of the first t-1 column parts at the
// earliest position where all row zones qualify, give the rest to the last
// part. Zone goodness is monotone under widening, so greedy is complete.
bool greedy_columns(const ZoneTest& zt, const std::vector<std::size_t>& rowCuts, std::size_t m,
                    std::size_t n, std::size_t t, std::vector<std::size_t>* colCuts) {
    std::vector<std::size_t> rowStarts(t), rowEnds(t);
    for (std::size_t p = 0; p < t; ++p) {
        rowStarts[p] = p == 0 ? 0 : rowCuts[p - 1];
        rowEnds[p] = (p + 1 == t ? m : rowCuts[p]) - 1;
    }
    std::vector<std::size_t> cuts;
    std::size_t start = 0;
    for (std::size_t part = 0; part + 1 < t; ++part) {
        bool closed = false;
        for (std::size_t end = start; end + (t - 1 - part) < n; ++end) {
            bool allGood = true;
            for (std::size_t p = 0; p < t && allGood; ++p)
                allGood = zt.good(rowStarts[p], rowEnds[p], start, end);
            if (allGood) {
                cuts.push_back(end + 1);
                start = end + 1;
                closed = true;
                break;
            }
        }
        if (!closed) return false;
    }
    if (start >= n) return false;
    for (std::size_t p = 0; p < t; ++p)
        if (!zt.good(rowStarts[p], rowEnds[p], start, n - 1)) return false;
    if (colCuts) *colCuts = std::move(cuts);
    return true;
}

bool row_division_dfs(const ZoneTest& zt, std::size_t m, std::size_t n, std::size_t t,
                      std::vector<std::size_t>& cuts, std::size_t nextCut, Division* witness) {
    if (cuts.size() == t - 1) {
        std::vector<std::size_t> colCuts;
        if (!greedy_columns(zt, cuts, m, n, t, witness ? &colCuts : nullptr)) return false;
        if (witness) {
            witness->rowCuts = cuts;
            witness->colCuts = std::move(colCuts);
        }
        return true;
    }
    std::size_t remaining = t - 1 - cuts.size();
    for (std::size_t c = nextCut; c + remaining - 1 < m; ++c) {
        cuts.push_back(c);
        if (row_division_dfs(zt, m, n, t, cuts, c + 1, witness)) return true;
        cuts.pop_back();
    }
    return false;
}

// Exists a (t, t)-division with every zone good? Parallel over the first
// row cut; the witness with the smallest first cut wins, so the result is
// deterministic regardless of thread schedule.
bool division_exists(const ZoneTest& zt, std::size_t m, std::size_t n, std::size_t t,
                     Division* witness) {
    if (t == 0) return true;
    if (t > m || t > n) return false;
    if (t == 1) {
        std::vector<std::size_t> none;
        if (!greedy_columns(zt, none, m, n, 1, nullptr)) return false;
        if (witness) {
            witness->rowCuts.clear();
            witness->colCuts.clear();
        }
        return true;
    }
    std::size_t firstMax = m - (t - 2) - 1; // leave room for the remaining cuts
    std::vector<Division> found(firstMax, Division{});
    std::vector<char> hit(firstMax, 0);
#pragma omp parallel for schedule(dynamic)
    for (long long lc = 1; lc <= static_cast<long long>(firstMax); ++lc) {
        auto c = static_cast<std::size_t>(lc);
        std::vector<std::size_t> cuts{c};
        Division w;
        if (row_division_dfs(zt, m, n, t, cuts, c + 1, &w)) {
            found[c - 1] = std::move(w);
            hit[c - 1] = 1;
        }
    }
    for (std::size_t c = 0; c < firstMax; ++c) {
        if (hit[c]) {
            if (witness) *witness = found[c];
            return true;
        }
    }
    return false;
}

std::uint64_t divisions_to_try(std::size_t m, std::size_t t) {
    // binom(m - 1, t - 1), saturating
    if (t == 0 || t > m) return 0;
    long double v = 1.0L;
    for (std::size_t i = 1; i < t; ++i) v = v * static_cast<long double>(m - i) / i;
    return v > 1e18L ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

constexpr std::uint64_t kDivisionBudget = 5'000'000;

MinorResult minor_search(const BitMatrix& m, std::size_t cap, bool mixed, bool parallel) {
    // Row divisions are enumerated, so enumerate over the smaller side.
    bool transposed = m.num_rows() > m.num_cols();
    BitMatrix work = transposed ? m.transposed() : m;
    std::size_t rows = work.num_rows(), cols = work.num_cols();

    std::optional<BitMatrix> corners;
    if (mixed && rows >= 2 && cols >= 2)
        corners = parallel ? corner_matrix(work) : corner_matrix_serial(work);
    PrefixSums prefix(mixed ? (corners ? *corners : BitMatrix(1, 1)) : work);
    ZoneTest zt{&prefix, mixed};
    if (mixed && !corners) {
        // No 2x2 window at all: nothing can be mixed.
        MinorResult out;
        out.t = 0;
        return out;
    }

    MinorResult out;
    std::size_t tMax = std::min({cap, rows, cols});
    for (std::size_t t = 1; t <= tMax; ++t) {
        if (divisions_to_try(rows, t) > kDivisionBudget) {
            out.exact = false; // best-so-far is only a lower bound now
            break;
        }
        Division witness;
        bool ok;
        if (parallel) {
            ok = division_exists(zt, rows, cols, t, &witness);
        } else {
            std::vector<std::size_t> cuts;
            ok = t == 1 ? division_exists(zt, rows, cols, 1, &witness)
                        : row_division_dfs(zt, rows, cols, t, cuts, 1, &witness);
        }
        if (!ok) break; // minors are monotone in t
        out.t = t;
        out.witness = std::move(witness);
    }
    if (transposed) std::swap(out.witness.rowCuts, out.witness.colCuts);
    return out;
}

} // namespace

MinorResult max_grid_minor(const BitMatrix& m, std::size_t cap) {
    return minor_search(m, cap, false, true);
}

MinorResult max_mixed_minor(const BitMatrix& m, std::size_t cap) {
    return minor_search(m, cap, true, true);
}

MinorResult max_grid_minor_serial(const BitMatrix& m, std::size_t cap) {
    return minor_search(m, cap, false, false);
}

MinorResult max_mixed_minor_serial(const BitMatrix& m, std::size_t cap) {
    return minor_search(m, cap, true, false);
}

CornerRowPairs corner_row_pairs(const BitMatrix& m) {
    if (m.num_rows() == 0) throw input_error("corner row pairs need a non-empty matrix");
    CornerRowPairs out;
    if (m.num_rows() >= 2 && m.num_cols() >= 2) {
        BitMatrix c = corner_matrix(m);
        for (std::size_t i = 0; i < c.num_rows(); ++i)
            if (c.row(i).any()) out.pairs.push_back(i);
    }
    out.p = out.pairs.size();
    mpz_ui_pow_ui(out.columnBound.get_mpz_t(), 2, out.p + 1);
    BitMatrix t = m.transposed();
    std::set<std::vector<bool>> cols;
    for (std::size_t j = 0; j < t.num_rows(); ++j) {
        std::vector<bool> col(t.num_cols());
        for (std::size_t i = 0; i < t.num_cols(); ++i) col[i] = t.get(j, i);
        cols.insert(std::move(col));
    }
    out.distinctColumns = cols.size();
    out.ok = mpz_cmp_ui(out.columnBound.get_mpz_t(), out.distinctColumns) >= 0;
    return out;
}

mpz_class mt_constant(std::size_t t, MtVariant variant) {
    if (t == 0) throw input_error("mt_constant requires t >= 1");
    mpz_class out;
    if (variant == MtVariant::classic) {
        // 2 t^4 binom(t^2, t)
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), t * t, t);
        mpz_class t4;
        mpz_ui_pow_ui(t4.get_mpz_t(), t, 4);
        out = 2 * t4 * binom;
    } else {
        // ceil(8/3 (t+1)^2 2^(4t))
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, 4 * t);
        mpz_class num = 8 * mpz_class((t + 1) * (t + 1)) * pow2;
        mpz_cdiv_q_ui(out.get_mpz_t(), num.get_mpz_t(), 3);
    }
    return out;
}

bool Pow2::at_least(const mpz_class& x) const {
    if (x <= 0) return true;
    std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2); // 2^(bits-1) <= x < 2^bits
    if (exponent >= static_cast<unsigned long>(bits)) return true;
    if (exponent == static_cast<unsigned long>(bits - 1))
        return mpz_popcount(x.get_mpz_t()) == 1; // x is exactly 2^(bits-1)
    return false;
}

bool Pow2::scaled_at_least(const mpz_class& k, const mpz_class& x) const {
    if (k <= 0) return x <= 0;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    return at_least(q);
}

std::string Pow2::str() const { return "2^" + exponent.get_str(); }

PatternConstants pattern_constants(std::size_t t) {
    if (t == 0) throw input_error("pattern constants require t >= 1");
    PatternConstants pc;
    pc.t = t;
    pc.mtClassic = mt_constant(t, MtVariant::classic);
    pc.mtCK = mt_constant(t, MtVariant::ck);
    mpz_class c2t = mt_constant(2 * t, MtVariant::ck);
    mpz_class c4t4 = mt_constant(4 * t + 4, MtVariant::ck);
    pc.nT = Pow2{c4t4};
    pc.kT = 4 * c2t + mpz_class(4 * t);
    pc.mT = Pow2{c2t + 1};
    return pc;
}

std::string to_json(const Division& d) {
    nlohmann::json j;
    j["rowCuts"] = d.rowCuts;
    j["colCuts"] = d.colCuts;
    return j.dump();
}

Division division_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        Division d;
        d.rowCuts = j.at("rowCuts").get<std::vector<std::size_t>>();
        d.colCuts = j.at("colCuts").get<std::vector<std::size_t>>();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("division JSON: ") + e.what());
    }
}

} // namespace twl
