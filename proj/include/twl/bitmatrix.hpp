#ifndef TWL_BITMATRIX_HPP
#define TWL_BITMATRIX_HPP

#include "twl/graph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace twl {

/// Dense 0/1 matrix, one bitset per row.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t m, std::size_t n) : n_(n), rows_(m, Bitset(n)) {}

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_cols() const { return n_; }

    bool get(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
    void set(std::size_t i, std::size_t j, bool v) { rows_[i].set(j, v); }
    const Bitset& row(std::size_t i) const { return rows_[i]; }
    Bitset& row(std::size_t i) { return rows_[i]; }

    std::size_t count_ones() const;
    BitMatrix transposed() const;
    BitMatrix without_row(std::size_t i) const;
    BitMatrix without_col(std::size_t j) const;

    bool operator==(const BitMatrix& other) const {
        return n_ == other.n_ && rows_ == other.rows_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Bitset> rows_;
};

/// Consecutive row/column parts. rowCuts[i] is the first row of part i+1,
/// so k parts have k-1 strictly increasing cuts in (0, m).
struct Division {
    std::vector<std::size_t> rowCuts;
    std::vector<std::size_t> colCuts;

    std::size_t row_parts() const { return rowCuts.size() + 1; }
    std::size_t col_parts() const { return colCuts.size() + 1; }
};

// Matrix file format: first line "m n", then m lines of n characters {0,1}.
BitMatrix parse_matrix(const std::string& text);
std::string serialize_matrix(const BitMatrix& m);

} // namespace twl

#endif
