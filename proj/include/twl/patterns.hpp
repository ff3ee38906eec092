#ifndef TWL_PATTERNS_HPP
#define TWL_PATTERNS_HPP

#include "twl/bitmatrix.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace twl {

struct SubmatrixClass {
    bool vertical;   // all rows of the window equal
    bool horizontal; // all columns of the window equal
    bool mixed;      // neither
    bool corner;     // mixed and 2x2
};

/// Classifies the window rows [r0, r1] x cols [c0, c1], bounds inclusive.
SubmatrixClass classify_submatrix(const BitMatrix& m, std::size_t r0, std::size_t r1,
                                  std::size_t c0, std::size_t c1);

/// (m-1)x(n-1) indicator of 2x2 corner windows. OpenMP over rows.
BitMatrix corner_matrix(const BitMatrix& m);
/// Plain serial kernel, kept as the reference for tests and benchmarks.
BitMatrix corner_matrix_serial(const BitMatrix& m);

struct MinorResult {
    std::size_t t = 0;         // largest witnessed minor size
    Division witness;          // a (t, t)-division whose zones all qualify
    bool exact = true;         // false when the search budget was exhausted
};

/// Largest t <= cap with a (t, t)-division whose every zone contains a 1.
MinorResult max_grid_minor(const BitMatrix& m, std::size_t cap = 16);
/// Largest t <= cap with a (t, t)-division whose every zone is mixed.
/// A zone is mixed iff the corner matrix has a 1 strictly inside it.
MinorResult max_mixed_minor(const BitMatrix& m, std::size_t cap = 16);

MinorResult max_grid_minor_serial(const BitMatrix& m, std::size_t cap = 16);
MinorResult max_mixed_minor_serial(const BitMatrix& m, std::size_t cap = 16);

struct CornerRowPairs {
    std::size_t p = 0;                  // number of row pairs carrying a corner
    std::vector<std::size_t> pairs;     // the row indices i of those pairs (i, i+1)
    mpz_class columnBound;              // 2^(p+1)
    std::size_t distinctColumns = 0;
    bool ok = false;                    // distinctColumns <= 2^(p+1)
};

CornerRowPairs corner_row_pairs(const BitMatrix& m);

enum class MtVariant { classic, ck };

/// Grid-minor density threshold c_t: 2 t^4 binom(t^2, t), or the sharper
/// ceil(8/3 (t+1)^2 2^(4t)).
mpz_class mt_constant(std::size_t t, MtVariant variant);

/// Exact power of two with an arbitrary-precision exponent. The headline
/// constants are far too large to expand into digits, so they are kept in
/// this form and compared through the exponent.
struct Pow2 {
    mpz_class exponent;

    bool at_least(const mpz_class& x) const;
    std::string str() const;
    /// 2^exponent * k >= x, without expanding the power.
    bool scaled_at_least(const mpz_class& k, const mpz_class& x) const;
};

struct PatternConstants {
    std::size_t t;
    mpz_class mtClassic;  // c_t, Marcus-Tardos form
    mpz_class mtCK;       // c_t, Cibulka-Kyncl form (ceiling)
    Pow2 nT;              // n_t = 2^(c_{4t+4})
    mpz_class kT;         // k_t = 4 c_{2t} + 4t
    Pow2 mT;              // m_t = 2^(c_{2t} + 1)
};

/// All derived constants use the sharper Cibulka-Kyncl c_t.
PatternConstants pattern_constants(std::size_t t);

std::string to_json(const Division& d);
Division division_from_json(const std::string& text);

} // namespace twl

#endif
