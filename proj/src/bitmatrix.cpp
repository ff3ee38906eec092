#include "twl/bitmatrix.hpp"

#include "twl/errors.hpp"

#include <sstream>

namespace twl {

std::size_t BitMatrix::count_ones() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(n_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = rows_[i].find_first(); j != Bitset::npos; j = rows_[i].find_next(j))
            t.set(j, i, true);
    return t;
}

BitMatrix BitMatrix::without_row(std::size_t i) const {
    BitMatrix out(rows_.size() - 1, n_);
    for (std::size_t r = 0, w = 0; r < rows_.size(); ++r)
        if (r != i) out.row(w++) = rows_[r];
    return out;
}

BitMatrix BitMatrix::without_col(std::size_t j) const {
    BitMatrix out(rows_.size(), n_ - 1);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < n_; ++c)
            if (c != j && rows_[r].test(c)) out.set(r, c < j ? c : c - 1, true);
    return out;
}

BitMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::size_t m = 0, n = 0;
    if (!(in >> m >> n) || m == 0 || n == 0)
        throw input_error("matrix file: expected header \"m n\" with positive dims");
    BitMatrix out(m, n);
    std::string row;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(in >> row) || row.size() != n)
            throw input_error("matrix file row " + std::to_string(i) + ": expected " +
                              std::to_string(n) + " characters");
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == '1')
                out.set(i, j, true);
            else if (row[j] != '0')
                throw input_error("matrix file row " + std::to_string(i) +
                                  ": entries must be 0 or 1");
        }
    }
    return out;
}

std::string serialize_matrix(const BitMatrix& m) {
    std::ostringstream out;
    out << m.num_rows() << ' ' << m.num_cols() << '\n';
    for (std::size_t i = 0; i < m.num_rows(); ++i) {
        for (std::size_t j = 0; j < m.num_cols(); ++j) out << (m.get(i, j) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

} // namespace twl
