#pragma once

#include <algorithm>
#include <optional>
#include <cstddef>
#include <vector>

#include "obstructk/matrix.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

/// Result of a Smith normal form computation: U * A * V = D with U, V unimodular.
///
/// The diagonal of D carries the invariant factors d_0 | d_1 | ... | d_{rank-1}
/// (all positive), followed by zeros. Inverses of both transforms are kept
/// because cohomology classification needs coordinates (V^-1) as well as
/// representatives (V, U^-1).
struct SmithForm {
    Matrix<Integer> U, U_inv;
    Matrix<Integer> D;
    Matrix<Integer> V, V_inv;
    std::size_t rank = 0;

    const Integer& factor(std::size_t i) const { return D(i, i); }
    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
        return out;
    }
};

namespace detail {

class SmithWorker {
  public:
    explicit SmithWorker(const Matrix<Integer>& a)
        : d_(a),
          u_(Matrix<Integer>::identity(a.rows())),
          u_inv_(Matrix<Integer>::identity(a.rows())),
          v_(Matrix<Integer>::identity(a.cols())),
          v_inv_(Matrix<Integer>::identity(a.cols())) {}

    SmithForm run() {
        const std::size_t m = d_.rows(), n = d_.cols();
        std::size_t t = 0;
        for (; t < std::min(m, n); ++t) {
            if (!move_min_to(t, t, t)) break;
            while (true) {
                bool dirty = clear_column(t) | clear_row(t);
                if (dirty) continue;
                // Divisibility: every remaining entry must be a multiple of the pivot.
                auto bad = find_non_multiple(t);
                if (!bad) break;
                row_add(t, *bad, Integer(1));
            }
            if (d_(t, t) < 0) row_negate(t);
        }
        return SmithForm{std::move(u_), std::move(u_inv_), std::move(d_), std::move(v_), std::move(v_inv_), t};
    }

  private:
    // Elementary operations keep U*A*V = D and the stored inverses in sync.
    void row_add(std::size_t target, std::size_t source, const Integer& c) {
        d_.add_row_multiple(target, source, c);
        u_.add_row_multiple(target, source, c);
        u_inv_.add_col_multiple(source, target, -c);
    }
    void col_add(std::size_t target, std::size_t source, const Integer& c) {
        d_.add_col_multiple(target, source, c);
        v_.add_col_multiple(target, source, c);
        v_inv_.add_row_multiple(source, target, -c);
    }
    void row_swap(std::size_t a, std::size_t b) {
        d_.swap_rows(a, b);
        u_.swap_rows(a, b);
        u_inv_.swap_cols(a, b);
    }
    void col_swap(std::size_t a, std::size_t b) {
        d_.swap_cols(a, b);
        v_.swap_cols(a, b);
        v_inv_.swap_rows(a, b);
    }
    void row_negate(std::size_t r) {
        d_.negate_row(r);
        u_.negate_row(r);
        u_inv_.negate_col(r);
    }

    // Moves the entry of least absolute value in the trailing block (rows, cols >= t) to (t, t).
    bool move_min_to(std::size_t t, std::size_t row_from, std::size_t col_from) {
        std::size_t best_r = 0, best_c = 0;
        bool found = false;
        Integer best;
        for (std::size_t r = row_from; r < d_.rows(); ++r)
            for (std::size_t c = col_from; c < d_.cols(); ++c) {
                const Integer& x = d_(r, c);
                if (x == 0) continue;
                Integer ax = boost::multiprecision::abs(x);
                if (!found || ax < best) {
                    best = ax;
                    best_r = r;
                    best_c = c;
                    found = true;
                    if (best == 1) goto done;
                }
            }
    done:
        if (!found) return false;
        row_swap(t, best_r);
        col_swap(t, best_c);
        return true;
    }

    // Eliminates below the pivot; returns true if the pivot changed.
    bool clear_column(std::size_t t) {
        bool changed = false;
        while (true) {
            bool remainder = false;
            for (std::size_t r = t + 1; r < d_.rows(); ++r) {
                if (d_(r, t) == 0) continue;
                Integer q = floor_div(d_(r, t), d_(t, t));
                row_add(r, t, -q);
                if (d_(r, t) != 0) remainder = true;
            }
            if (!remainder) return changed;
            // Smallest remainder becomes the new pivot.
            std::size_t best = t;
            for (std::size_t r = t + 1; r < d_.rows(); ++r)
                if (d_(r, t) != 0 && boost::multiprecision::abs(d_(r, t)) < boost::multiprecision::abs(d_(best, t)))
                    best = r;
            row_swap(t, best);
            changed = true;
        }
    }

    bool clear_row(std::size_t t) {
        bool changed = false;
        while (true) {
            bool remainder = false;
            for (std::size_t c = t + 1; c < d_.cols(); ++c) {
                if (d_(t, c) == 0) continue;
                Integer q = floor_div(d_(t, c), d_(t, t));
                col_add(c, t, -q);
                if (d_(t, c) != 0) remainder = true;
            }
            if (!remainder) return changed;
            std::size_t best = t;
            for (std::size_t c = t + 1; c < d_.cols(); ++c)
                if (d_(t, c) != 0 && boost::multiprecision::abs(d_(t, c)) < boost::multiprecision::abs(d_(t, best)))
                    best = c;
            col_swap(t, best);
            changed = true;
        }
    }

    std::optional<std::size_t> find_non_multiple(std::size_t t) const {
        const Integer& p = d_(t, t);
        if (p == 1 || p == -1) return std::nullopt;
        for (std::size_t r = t + 1; r < d_.rows(); ++r)
            for (std::size_t c = t + 1; c < d_.cols(); ++c)
                if (d_(r, c) != 0 && d_(r, c) % p != 0) return r;
        return std::nullopt;
    }

    Matrix<Integer> d_, u_, u_inv_, v_, v_inv_;
};

}  // namespace detail

/// Smith normal form over the integers. Empty matrices are allowed.
inline SmithForm smith_normal_form(const Matrix<Integer>& a) { return detail::SmithWorker(a).run(); }

}  // namespace obstructk
