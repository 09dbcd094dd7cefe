#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "obstructk/matrix.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

using RationalVector = std::vector<Rational>;

/// Reduced row echelon form over Q with least-index pivots.
///
/// `transform` satisfies transform * A = reduced, so a zero row k of `reduced`
/// paired with row k of `transform` is a left annihilator of A.
struct RowEchelon {
    Matrix<Rational> reduced;
    Matrix<Rational> transform;
    std::vector<std::size_t> pivot_cols;
};

inline RowEchelon row_echelon(const Matrix<Rational>& a) {
    RowEchelon e{a, Matrix<Rational>::identity(a.rows()), {}};
    auto& m = e.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(row, piv);
        e.transform.swap_rows(row, piv);
        Rational inv = Rational(1) / m(row, col);
        for (auto& x : m.row(row)) x *= inv;
        for (auto& x : e.transform.row(row)) x *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = -m(r, col);
            m.add_row_multiple(r, row, f);
            e.transform.add_row_multiple(r, row, f);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    return e;
}

inline std::size_t rank(const Matrix<Rational>& a) { return row_echelon(a).pivot_cols.size(); }

/// Solves A x = b; free variables are set to zero, so the solution is determined
/// by least-index pivots.
inline std::optional<RationalVector> solve(const Matrix<Rational>& a, const RationalVector& b) {
    auto e = row_echelon(a);
    RationalVector tb = e.transform * b;
    for (std::size_t r = e.pivot_cols.size(); r < tb.size(); ++r)
        if (tb[r] != 0) return std::nullopt;
    RationalVector x(a.cols(), Rational(0));
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) x[e.pivot_cols[k]] = tb[k];
    return x;
}

/// A functional y with y^T A = 0 and y^T b != 0, certifying b is not in the column space.
inline std::optional<RationalVector> inconsistency_certificate(const Matrix<Rational>& a, const RationalVector& b) {
    auto e = row_echelon(a);
    RationalVector tb = e.transform * b;
    for (std::size_t r = e.pivot_cols.size(); r < tb.size(); ++r)
        if (tb[r] != 0) {
            auto row = e.transform.row(r);
            return RationalVector(row.begin(), row.end());
        }
    return std::nullopt;
}

/// Basis of the right kernel, one vector per free column (free entry = 1).
inline std::vector<RationalVector> kernel_basis(const Matrix<Rational>& a) {
    auto e = row_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(a.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) v[e.pivot_cols[k]] = -e.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Matrix whose columns are the given vectors (all of length `rows`).
inline Matrix<Rational> from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
    Matrix<Rational> m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
}

inline bool is_zero(const RationalVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace obstructk
