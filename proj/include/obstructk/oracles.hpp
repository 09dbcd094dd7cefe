#pragma once

// Reference computations used to cross-check the cohomology engine and the corpus
// expectations. They go through homology and plain linear solves, never through
// the cohomology engine's decomposition.

#include <optional>
#include <string>
#include <vector>

#include "obstructk/cochain.hpp"
#include "obstructk/complex.hpp"
#include "obstructk/linear.hpp"
#include "obstructk/smith.hpp"

namespace obstructk::oracles {

/// Free rank plus invariant factors (each >= 2, each dividing the next).
struct GroupShape {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    friend bool operator==(const GroupShape&, const GroupShape&) = default;

    std::string describe(const std::string& base) const {
        std::string out;
        auto add = [&](const std::string& s) { out += (out.empty() ? "" : " + ") + s; };
        if (free_rank > 0) {
            std::string b = free_rank > 1 && base.find('/') != std::string::npos ? "(" + base + ")" : base;
            add(free_rank == 1 ? b : b + "^" + std::to_string(free_rank));
        }
        for (const auto& t : torsion) add("Z/" + t.str());
        return out.empty() ? "0" : out;
    }
};

/// Invariant factors of a direct sum of cyclic groups of the given orders (orders 1 are dropped).
inline std::vector<Integer> invariant_factors(const std::vector<Integer>& orders) {
    if (orders.empty()) return {};
    Matrix<Integer> d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
    auto snf = smith_normal_form(d);
    std::vector<Integer> out;
    for (const auto& f : snf.invariant_factors())
        if (f > 1) out.push_back(f);
    return out;
}

/// H_q(X; Z) from the boundary matrices.
struct Homology {
    std::size_t betti = 0;
    std::vector<Integer> torsion;
};

inline Matrix<Integer> boundary_matrix(const SimplicialComplex& x, int q) {
    // d_q : C_q -> C_{q-1}, the transpose of the coboundary in degree q-1.
    return coboundary_matrix(x, q - 1).transpose();
}

inline Homology homology(const SimplicialComplex& x, int q) {
    Homology h;
    if (q < 0) return h;
    const std::size_t n = x.count(q);
    std::size_t rank_out = 0;
    if (q > 0 && n > 0) rank_out = smith_normal_form(boundary_matrix(x, q)).rank;
    if (x.count(q + 1) > 0 && n > 0) {
        auto snf = smith_normal_form(boundary_matrix(x, q + 1));
        h.betti = n - rank_out - snf.rank;
        h.torsion = invariant_factors(snf.invariant_factors());
    } else {
        h.betti = n - rank_out;
    }
    return h;
}

/// Universal-coefficient prediction of H^q(X; coeff).
inline GroupShape uct_cohomology(const SimplicialComplex& x, const CoefficientSystem& coeff, int q) {
    const auto hq = homology(x, q);
    const auto hq1 = homology(x, q - 1);
    GroupShape g;
    switch (coeff.kind()) {
        case CoefficientSystem::Kind::Integers:
            g.free_rank = hq.betti;
            g.torsion = hq1.torsion;
            break;
        case CoefficientSystem::Kind::Rationals:
            g.free_rank = hq.betti;
            break;
        case CoefficientSystem::Kind::RationalVectors:
            g.free_rank = hq.betti * coeff.width();
            break;
        case CoefficientSystem::Kind::RationalsModIntegers:
            // Hom(H_q, Q/Z); Ext(-, Q/Z) vanishes.
            g.free_rank = hq.betti;
            g.torsion = hq.torsion;
            break;
        case CoefficientSystem::Kind::IntegersMod: {
            const Integer n = coeff.modulus();
            std::vector<Integer> orders(hq.betti, n);
            for (const auto& d : hq.torsion) orders.push_back(gcd(d, n));   // Hom(H_q, Z/n)
            for (const auto& d : hq1.torsion) orders.push_back(gcd(d, n));  // Ext(H_{q-1}, Z/n)
            g.torsion = invariant_factors(orders);
            break;
        }
    }
    return g;
}

/// Integer solution of A x = b, or nullopt. b may be rational (non-integral b has no solution).
inline std::optional<std::vector<Integer>> integral_solve(const Matrix<Integer>& a, const std::vector<Rational>& b) {
    for (const auto& v : b)
        if (!is_integral(v)) return std::nullopt;
    if (a.cols() == 0) {
        for (const auto& v : b)
            if (v != 0) return std::nullopt;
        return std::vector<Integer>{};
    }
    auto snf = smith_normal_form(a);  // U A V = D
    std::vector<Integer> y(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.rows(); ++k) y[i] += snf.U(i, k) * num(b[k]);
    std::vector<Integer> z(a.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < snf.rank) {
            if (y[i] % snf.factor(i) != 0) return std::nullopt;
            z[i] = y[i] / snf.factor(i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Integer> x(a.cols(), Integer(0));
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) x[i] += snf.V(i, k) * z[k];
    return x;
}

/// c with delta(c) = z over the coefficients of z, found by a direct solve.
/// Supports Z, Z/n, Q and Q/Z scalar coefficients.
inline std::optional<Cochain> coboundary_witness(const Cochain& z) {
    const auto& x = z.complex();
    const int q = z.degree();
    const auto coeff = z.coefficient();
    Cochain out(z.complex_ptr(), q > 0 ? q - 1 : 0, coeff);
    if (q == 0) {
        if (z.is_zero()) return out;
        return std::nullopt;
    }
    const Matrix<Integer> d = coboundary_matrix(x, q - 1);  // C^{q-1} -> C^q
    const std::size_t rows = d.rows(), cols = d.cols();
    std::vector<Rational> b(z.values().begin(), z.values().end());
    switch (coeff.kind()) {
        case CoefficientSystem::Kind::Integers: {
            auto sol = integral_solve(d, b);
            if (!sol) return std::nullopt;
            for (std::size_t i = 0; i < cols; ++i) out.set(i, Rational((*sol)[i]));
            return out;
        }
        case CoefficientSystem::Kind::IntegersMod: {
            // [d | n I] (c, w) = z.
            Matrix<Integer> a(rows, cols + rows);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) a(r, c) = d(r, c);
                a(r, cols + r) = coeff.modulus();
            }
            auto sol = integral_solve(a, b);
            if (!sol) return std::nullopt;
            for (std::size_t i = 0; i < cols; ++i) out.set(i, Rational((*sol)[i]));
            return out;
        }
        case CoefficientSystem::Kind::Rationals: {
            auto sol = solve(matrix_cast<Rational>(d), b);
            if (!sol) return std::nullopt;
            for (std::size_t i = 0; i < cols; ++i) out.set(i, (*sol)[i]);
            return out;
        }
        case CoefficientSystem::Kind::RationalsModIntegers: {
            // z = delta(l) + m with l rational and m integral. With K an integral basis of the
            // left kernel of d over Q, this is K m = K z for integral m.
            Matrix<Rational> dq = matrix_cast<Rational>(d);
            auto left = kernel_basis(dq.transpose());
            Matrix<Integer> k(left.size(), rows);
            std::vector<Rational> kb(left.size(), Rational(0));
            for (std::size_t r = 0; r < left.size(); ++r) {
                Integer scale = 1;
                for (const auto& v : left[r]) scale = lcm(scale, den(v));
                for (std::size_t c = 0; c < rows; ++c) {
                    k(r, c) = num(left[r][c] * Rational(scale));
                    kb[r] += Rational(k(r, c)) * b[c];
                }
            }
            std::vector<Integer> m(rows, Integer(0));
            if (!left.empty()) {
                auto sol = integral_solve(k, kb);
                if (!sol) return std::nullopt;
                m = *sol;
            }
            std::vector<Rational> rhs(rows);
            for (std::size_t r = 0; r < rows; ++r) rhs[r] = b[r] - Rational(m[r]);
            auto l = solve(dq, rhs);
            if (!l) throw InternalError("lattice condition met but the rational solve failed");
            for (std::size_t i = 0; i < cols; ++i) out.set(i, (*l)[i]);
            return out;
        }
        case CoefficientSystem::Kind::RationalVectors:
            break;
    }
    throw InputError("coboundary oracle does not handle " + coeff.name());
}

/// Smallest k in [1, limit] with k * z integrally exact; nullopt if none.
inline std::optional<long> order_by_search(const Cochain& z, long limit) {
    for (long k = 1; k <= limit; ++k)
        if (coboundary_witness(Integer(k) * z)) return k;
    return std::nullopt;
}

/// Kronecker pairing of a cochain with the fundamental cycle of a closed oriented pseudomanifold,
/// found as the integral kernel of the top boundary map (nullopt if it is not one-dimensional).
inline std::optional<Rational> fundamental_pairing(const Cochain& c) {
    const auto& x = c.complex();
    const int n = x.dimension();
    if (c.degree() != n) return std::nullopt;
    auto ker = kernel_basis(matrix_cast<Rational>(boundary_matrix(x, n)));
    if (ker.size() != 1) return std::nullopt;
    Integer scale = 1;
    for (const auto& v : ker[0]) scale = lcm(scale, den(v));
    Integer g = 0;
    for (const auto& v : ker[0]) g = gcd(g, num(v * Rational(scale)));
    Rational acc = 0;
    for (std::size_t i = 0; i < ker[0].size(); ++i) acc += ker[0][i] * Rational(scale) / Rational(g) * c.scalar(i);
    return acc;
}

}  // namespace obstructk::oracles
