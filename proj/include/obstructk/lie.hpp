#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "obstructk/errors.hpp"
#include "obstructk/linear.hpp"
#include "obstructk/matrix.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

using RationalMatrix = Matrix<Rational>;

namespace lin {

inline RationalVector zeros(std::size_t n) { return RationalVector(n, Rational(0)); }
inline RationalVector unit(std::size_t n, std::size_t i) {
    auto v = zeros(n);
    v[i] = 1;
    return v;
}
inline RationalVector add(RationalVector a, const RationalVector& b, const Rational& f = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += f * b[i];
    return a;
}
inline RationalMatrix add(RationalMatrix a, const RationalMatrix& b, const Rational& f = 1) {
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) += f * b(r, c);
    return a;
}
inline RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return add(a * b, b * a, -1); }
inline RationalMatrix column_matrix(const std::vector<RationalVector>& cols, std::size_t rows) {
    return from_columns(cols, rows);
}

}  // namespace lin

/// Finite-dimensional Lie algebra over Q by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k.
class LieAlgebra {
  public:
    using Tensor = std::vector<std::vector<RationalVector>>;

    LieAlgebra() = default;

    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    LieAlgebra(std::string name, Tensor c) : name_(std::move(name)), c_(std::move(c)) {
        const std::size_t d = c_.size();
        for (const auto& row : c_) {
            if (row.size() != d) throw InputError("Lie algebra '" + name_ + "': structure constants are not d x d x d");
            for (const auto& v : row)
                if (v.size() != d) throw InputError("Lie algebra '" + name_ + "': structure constants are not d x d x d");
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (lin::add(c_[i][j], c_[j][i]) != lin::zeros(d))
                    throw InputError("Lie algebra '" + name_ + "': bracket not antisymmetric at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                for (std::size_t k = j + 1; k < d; ++k) {
                    auto ei = lin::unit(d, i), ej = lin::unit(d, j), ek = lin::unit(d, k);
                    auto s = lin::add(lin::add(bracket(ei, bracket(ej, ek)), bracket(ej, bracket(ek, ei))),
                                      bracket(ek, bracket(ei, ej)));
                    if (!is_zero(s))
                        throw InputError("Lie algebra '" + name_ + "': Jacobi identity fails at (" + std::to_string(i) +
                                         "," + std::to_string(j) + "," + std::to_string(k) + ")");
                }
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return c_.size(); }
    const Tensor& structure_constants() const { return c_; }
    const RationalVector& bracket_basis(std::size_t i, std::size_t j) const { return c_[i][j]; }

    RationalVector bracket(const RationalVector& x, const RationalVector& y) const {
        auto out = lin::zeros(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j] == 0) continue;
                const Rational f = x[i] * y[j];
                for (std::size_t k = 0; k < dim(); ++k)
                    if (c_[i][j][k] != 0) out[k] += f * c_[i][j][k];
            }
        }
        return out;
    }

    /// Matrix of ad(x).
    RationalMatrix ad(const RationalVector& x) const {
        std::vector<RationalVector> cols;
        for (std::size_t j = 0; j < dim(); ++j) cols.push_back(bracket(x, lin::unit(dim(), j)));
        return lin::column_matrix(cols, dim());
    }

    bool is_derivation(const RationalMatrix& D) const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i + 1; j < dim(); ++j) {
                auto ei = lin::unit(dim(), i), ej = lin::unit(dim(), j);
                auto lhs = D * c_[i][j];
                auto rhs = lin::add(bracket(D * ei, ej), bracket(ei, D * ej));
                if (lhs != rhs) return false;
            }
        return true;
    }

    /// Structure constants in a new basis b_a = sum_i P(i, a) e_i (P invertible).
    LieAlgebra change_basis(const RationalMatrix& P, std::string name) const {
        auto e = row_echelon(P);
        if (e.pivot_cols.size() != dim()) throw InputError("change of basis is singular");
        const std::size_t d = dim();
        std::vector<RationalVector> cols;
        for (std::size_t a = 0; a < d; ++a) {
            RationalVector v(d);
            for (std::size_t i = 0; i < d; ++i) v[i] = P(i, a);
            cols.push_back(v);
        }
        Tensor t(d, std::vector<RationalVector>(d));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) t[a][b] = *solve(P, bracket(cols[a], cols[b]));
        return LieAlgebra(std::move(name), std::move(t));
    }

    /// Builds structure constants from a sparse list of [e_i, e_j] = sum coeff e_k, i < j.
    static LieAlgebra from_brackets(std::string name, std::size_t d,
                                    const std::vector<std::tuple<std::size_t, std::size_t, RationalVector>>& br) {
        Tensor t(d, std::vector<RationalVector>(d, lin::zeros(d)));
        for (const auto& [i, j, v] : br) {
            if (i >= d || j >= d || v.size() != d) throw InputError("Lie algebra '" + name + "': bracket out of range");
            t[i][j] = v;
            for (std::size_t k = 0; k < d; ++k) t[j][i][k] = -v[k];
        }
        return LieAlgebra(std::move(name), std::move(t));
    }

  private:
    std::string name_;
    Tensor c_;
};

/// Derivation algebra as a list of matrices (kernel of the derivation equations).
inline std::vector<RationalMatrix> derivation_basis(const LieAlgebra& L) {
    const std::size_t d = L.dim();
    // Unknown D(r, c) at index r * d + c; one equation per (i<j, k).
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                std::vector<Rational> eq(d * d, Rational(0));
                // (D[e_i,e_j])_k = sum_l c_ij^l D(k,l)
                for (std::size_t l = 0; l < d; ++l) eq[k * d + l] += L.bracket_basis(i, j)[l];
                // - [D e_i, e_j]_k = - sum_l D(l,i) c_lj^k
                for (std::size_t l = 0; l < d; ++l) eq[l * d + i] -= L.bracket_basis(l, j)[k];
                for (std::size_t l = 0; l < d; ++l) eq[l * d + j] -= L.bracket_basis(i, l)[k];
                rows.push_back(std::move(eq));
            }
    RationalMatrix A(rows.size(), d * d);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < d * d; ++c) A(r, c) = rows[r][c];
    std::vector<RationalMatrix> out;
    for (const auto& v : kernel_basis(A)) {
        RationalMatrix D(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) D(r, c) = v[r * d + c];
        out.push_back(std::move(D));
    }
    return out;
}

/// Lie algebra spanned by a list of linearly independent matrices closed under commutators.
/// Returns the algebra in that basis; throws if the span is not closed.
inline LieAlgebra matrix_lie_algebra(std::string name, const std::vector<RationalMatrix>& basis) {
    const std::size_t d = basis.size();
    if (d == 0) return LieAlgebra(std::move(name), {});
    const std::size_t n = basis[0].rows();
    RationalMatrix A(n * n, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) A(r * n + c, a) = basis[a](r, c);
    LieAlgebra::Tensor t(d, std::vector<RationalVector>(d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            auto m = lin::commutator(basis[a], basis[b]);
            RationalVector v(n * n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) v[r * n + c] = m(r, c);
            auto s = solve(A, v);
            if (!s) throw InputError("matrix span '" + name + "' is not closed under commutators");
            t[a][b] = *s;
        }
    return LieAlgebra(std::move(name), std::move(t));
}

namespace lie {

inline LieAlgebra abelian(std::size_t d) { return LieAlgebra::from_brackets("abelian" + std::to_string(d), d, {}); }

/// [x, y] = z.
inline LieAlgebra heisenberg() { return LieAlgebra::from_brackets("heis3", 3, {{0, 1, {0, 0, 1}}}); }

/// [h, e] = 2e, [h, f] = -2f, [e, f] = h with basis (h, e, f).
inline LieAlgebra sl2() {
    return LieAlgebra::from_brackets("sl2", 3, {{0, 1, {0, 2, 0}}, {0, 2, {0, 0, -2}}, {1, 2, {1, 0, 0}}});
}

/// [a, b] = b.
inline LieAlgebra affine_line() { return LieAlgebra::from_brackets("aff1", 2, {{0, 1, {0, 1}}}); }

/// Filiform: [e0, e1] = e2, [e0, e2] = e3.
inline LieAlgebra filiform4() {
    return LieAlgebra::from_brackets("n4", 4, {{0, 1, {0, 0, 1, 0}}, {0, 2, {0, 0, 0, 1}}});
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    const std::size_t da = a.dim(), db = b.dim(), d = da + db;
    LieAlgebra::Tensor t(d, std::vector<RationalVector>(d, lin::zeros(d)));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < da; ++k) t[i][j][k] = a.bracket_basis(i, j)[k];
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < db; ++k) t[da + i][da + j][da + k] = b.bracket_basis(i, j)[k];
    return LieAlgebra(a.name() + "+" + b.name(), std::move(t));
}

inline LieAlgebra derivation_algebra(const LieAlgebra& L) {
    return matrix_lie_algebra("der(" + L.name() + ")", derivation_basis(L));
}

inline LieAlgebra by_name(const std::string& name) {
    if (name == "heis3") return heisenberg();
    if (name == "sl2") return sl2();
    if (name == "aff1") return affine_line();
    if (name == "n4") return filiform4();
    if (name == "der(heis3)") return derivation_algebra(heisenberg());
    if (name.rfind("abelian", 0) == 0) {
        try {
            auto d = std::stoul(name.substr(7));
            if (d <= 16) return abelian(d);
        } catch (const std::logic_error&) {
        }
    }
    throw InputError("unknown built-in Lie algebra '" + name + "'");
}

}  // namespace lie

/// Crossed module mu: m -> n with action eta: n -> Der(m).
struct CrossedModuleLie {
    std::string name;
    LieAlgebra m;
    LieAlgebra n;
    RationalMatrix mu;               // dim n x dim m
    std::vector<RationalMatrix> eta;  // one dim m x dim m matrix per basis element of n

    RationalMatrix eta_of(const RationalVector& x) const {
        RationalMatrix out(m.dim(), m.dim());
        for (std::size_t a = 0; a < x.size(); ++a)
            if (x[a] != 0) out = lin::add(out, eta[a], x[a]);
        return out;
    }
};

/// Alternating p-cochains on g with values in V, one V-vector per ascending p-subset.
class CECochain {
  public:
    CECochain() = default;
    CECochain(std::size_t dim_g, std::size_t dim_v, std::size_t p) : dim_g_(dim_g), dim_v_(dim_v), p_(p) {
        subsets_ = ascending_subsets(dim_g, p);
        for (std::size_t i = 0; i < subsets_.size(); ++i) index_[subsets_[i]] = i;
        values_.assign(subsets_.size(), lin::zeros(dim_v));
    }

    std::size_t degree() const { return p_; }
    std::size_t dim_g() const { return dim_g_; }
    std::size_t dim_v() const { return dim_v_; }
    const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }
    std::size_t size() const { return subsets_.size(); }
    RationalVector& at(std::size_t i) { return values_[i]; }
    const RationalVector& at(std::size_t i) const { return values_[i]; }

    /// Value on an arbitrary basis tuple (sign of the sorting permutation, zero on repeats).
    RationalVector on_basis(std::vector<std::size_t> idx) const {
        int sign = 1;
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] == idx[i + 1]) return lin::zeros(dim_v_);
        auto v = values_[index_.at(idx)];
        if (sign < 0)
            for (auto& x : v) x = -x;
        return v;
    }

    /// Flat coordinates: subset-major, V-coordinate minor.
    RationalVector flat() const {
        RationalVector out;
        for (const auto& v : values_) out.insert(out.end(), v.begin(), v.end());
        return out;
    }
    static CECochain from_flat(std::size_t dim_g, std::size_t dim_v, std::size_t p, const RationalVector& f) {
        CECochain c(dim_g, dim_v, p);
        if (f.size() != c.size() * dim_v) throw InputError("flat cochain has the wrong length");
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t k = 0; k < dim_v; ++k) c.values_[i][k] = f[i * dim_v + k];
        return c;
    }

    bool is_zero() const {
        for (const auto& v : values_)
            if (!obstructk::is_zero(v)) return false;
        return true;
    }
    friend bool operator==(const CECochain& a, const CECochain& b) {
        return a.dim_g_ == b.dim_g_ && a.dim_v_ == b.dim_v_ && a.p_ == b.p_ && a.values_ == b.values_;
    }
    friend CECochain operator-(CECochain a, const CECochain& b) {
        for (std::size_t i = 0; i < a.values_.size(); ++i) a.values_[i] = lin::add(a.values_[i], b.values_[i], -1);
        return a;
    }
    friend CECochain operator+(CECochain a, const CECochain& b) {
        for (std::size_t i = 0; i < a.values_.size(); ++i) a.values_[i] = lin::add(a.values_[i], b.values_[i]);
        return a;
    }

    static std::vector<std::vector<std::size_t>> ascending_subsets(std::size_t n, std::size_t p) {
        std::vector<std::vector<std::size_t>> out;
        if (p > n) return out;
        std::vector<std::size_t> cur(p);
        for (std::size_t i = 0; i < p; ++i) cur[i] = i;
        while (true) {
            out.push_back(cur);
            std::size_t i = p;
            while (i > 0 && cur[i - 1] == n - p + i - 1) --i;
            if (i == 0) break;
            ++cur[i - 1];
            for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
        }
        return out;
    }

  private:
    std::size_t dim_g_ = 0, dim_v_ = 0, p_ = 0;
    std::vector<std::vector<std::size_t>> subsets_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
    std::vector<RationalVector> values_;
};

/// A Lie algebra g acting on V = Q^dim by the matrices rho[a].
struct LieModule {
    LieAlgebra g;
    std::vector<RationalMatrix> rho;
    std::size_t dim_v = 0;

    /// Throws naming the first basis pair with rho[a,b] != [rho a, rho b].
    void check_action() const {
        if (rho.size() != g.dim()) throw InputError("action needs one matrix per basis element");
        for (const auto& r : rho)
            if (r.rows() != dim_v || r.cols() != dim_v) throw InputError("action matrix has the wrong size");
        for (std::size_t a = 0; a < g.dim(); ++a)
            for (std::size_t b = a + 1; b < g.dim(); ++b) {
                RationalMatrix lhs(dim_v, dim_v);
                for (std::size_t k = 0; k < g.dim(); ++k)
                    if (g.bracket_basis(a, b)[k] != 0) lhs = lin::add(lhs, rho[k], g.bracket_basis(a, b)[k]);
                if (!(lhs == lin::commutator(rho[a], rho[b])))
                    throw InputError("not a Lie action: fails on basis pair (" + std::to_string(a) + "," +
                                     std::to_string(b) + ")");
            }
    }
};

namespace detail {

/// CE differential without the action check.
inline CECochain ce_differential(const CECochain& c, const LieModule& M) {
    const std::size_t p = c.degree(), d = M.g.dim();
    CECochain out(d, M.dim_v, p + 1);
    for (std::size_t s = 0; s < out.size(); ++s) {
        const auto& x = out.subsets()[s];  // x_0 < ... < x_p
        RationalVector acc = lin::zeros(M.dim_v);
        for (std::size_t i = 0; i <= p; ++i) {
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k <= p; ++k)
                if (k != i) rest.push_back(x[k]);
            auto term = M.rho[x[i]] * c.on_basis(rest);
            acc = lin::add(acc, term, (i % 2) ? -1 : 1);
        }
        for (std::size_t i = 0; i <= p; ++i)
            for (std::size_t j = i + 1; j <= p; ++j) {
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k <= p; ++k)
                    if (k != i && k != j) rest.push_back(x[k]);
                const auto& br = M.g.bracket_basis(x[i], x[j]);
                const Rational sign = ((i + j) % 2) ? -1 : 1;
                for (std::size_t k = 0; k < d; ++k) {
                    if (br[k] == 0) continue;
                    std::vector<std::size_t> args{k};
                    args.insert(args.end(), rest.begin(), rest.end());
                    acc = lin::add(acc, c.on_basis(args), sign * br[k]);
                }
            }
        out.at(s) = acc;
    }
    return out;
}

}  // namespace detail

/// Chevalley-Eilenberg coboundary with values in a g-module.
inline CECochain ce_coboundary(const CECochain& c, const LieModule& M) {
    M.check_action();
    if (c.dim_g() != M.g.dim() || c.dim_v() != M.dim_v) throw InputError("cochain does not match the module");
    return detail::ce_differential(c, M);
}

/// Matrix of delta: C^p -> C^{p+1} in flat coordinates.
inline RationalMatrix ce_matrix(const LieModule& M, std::size_t p) {
    CECochain probe(M.g.dim(), M.dim_v, p);
    const std::size_t n_in = probe.size() * M.dim_v;
    const std::size_t n_out = CECochain(M.g.dim(), M.dim_v, p + 1).size() * M.dim_v;
    RationalMatrix A(n_out, n_in);
    for (std::size_t col = 0; col < n_in; ++col) {
        auto img = detail::ce_differential(CECochain::from_flat(M.g.dim(), M.dim_v, p, lin::unit(n_in, col)), M).flat();
        for (std::size_t r = 0; r < n_out; ++r) A(r, col) = img[r];
    }
    return A;
}

struct CESolveResult {
    std::optional<CECochain> witness;          // delta(witness) = z
    std::optional<RationalVector> certificate;  // functional vanishing on coboundaries, nonzero on z
    bool exact() const { return witness.has_value(); }
};

inline CESolveResult coboundary_solve(const CECochain& z, const LieModule& M) {
    M.check_action();
    if (z.degree() == 0) throw InputError("degree-0 cochains are never coboundaries");
    if (!detail::ce_differential(z, M).is_zero()) throw InputError("not a CE cocycle");
    auto A = ce_matrix(M, z.degree() - 1);
    auto b = z.flat();
    CESolveResult r;
    if (auto x = solve(A, b)) {
        auto w = CECochain::from_flat(M.g.dim(), M.dim_v, z.degree() - 1, *x);
        if (!(detail::ce_differential(w, M) == z)) throw InternalError("CE witness does not reproduce the cocycle");
        r.witness = std::move(w);
    } else {
        r.certificate = inconsistency_certificate(A, b);
        if (!r.certificate) throw InternalError("unsolvable system without a certificate");
    }
    return r;
}

struct XModViolation {
    std::string axiom;  // equivariance, peiffer, derivation, action
    std::vector<std::size_t> indices;
    std::string describe() const {
        std::string s = axiom + " fails at (";
        for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i]);
        return s + ")";
    }
};

/// Validation result plus kernel and cokernel data.
struct XModStructure {
    std::vector<XModViolation> violations;
    std::vector<RationalVector> kernel;       // basis of V = ker mu, in m coordinates
    std::vector<RationalVector> complement;   // basis of a complement of im mu in n (standard vectors)
    LieAlgebra coker;                         // g = n / im mu, basis = images of `complement`
    RationalMatrix projection;                // dim g x dim n
    LieModule module;                         // g acting on V
    bool valid() const { return violations.empty(); }
};

inline XModStructure validate_crossed_module(const CrossedModuleLie& cm) {
    XModStructure out;
    const auto &m = cm.m, &n = cm.n;
    const std::size_t dm = m.dim(), dn = n.dim();
    if (cm.mu.rows() != dn || cm.mu.cols() != dm) throw InputError("mu has the wrong shape");
    if (cm.eta.size() != dn) throw InputError("eta needs one matrix per basis element of n");
    for (const auto& e : cm.eta)
        if (e.rows() != dm || e.cols() != dm) throw InputError("eta matrix has the wrong shape");

    for (std::size_t a = 0; a < dn; ++a)
        if (!m.is_derivation(cm.eta[a])) out.violations.push_back({"derivation", {a}});
    for (std::size_t a = 0; a < dn; ++a)
        for (std::size_t b = a + 1; b < dn; ++b) {
            auto lhs = cm.eta_of(n.bracket_basis(a, b));
            if (!(lhs == lin::commutator(cm.eta[a], cm.eta[b]))) out.violations.push_back({"action", {a, b}});
        }
    for (std::size_t a = 0; a < dn; ++a)
        for (std::size_t i = 0; i < dm; ++i) {
            auto lhs = cm.mu * (cm.eta[a] * lin::unit(dm, i));
            auto rhs = n.bracket(lin::unit(dn, a), cm.mu * lin::unit(dm, i));
            if (lhs != rhs) out.violations.push_back({"equivariance", {a, i}});
        }
    for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = 0; j < dm; ++j) {
            auto lhs = cm.eta_of(cm.mu * lin::unit(dm, i)) * lin::unit(dm, j);
            if (lhs != m.bracket_basis(i, j)) out.violations.push_back({"peiffer", {i, j}});
        }
    if (!out.valid()) return out;

    out.kernel = kernel_basis(cm.mu);
    for (const auto& v : out.kernel)
        for (std::size_t j = 0; j < dm; ++j)
            if (!is_zero(m.bracket(v, lin::unit(dm, j)))) throw InternalError("kernel of mu is not central");

    // Complement of im mu by standard basis vectors, greedily in index order.
    std::vector<RationalVector> span;
    for (std::size_t i = 0; i < dm; ++i) span.push_back(cm.mu * lin::unit(dm, i));
    std::size_t r = rank(lin::column_matrix(span, dn));
    const std::size_t image_rank = r;
    for (std::size_t k = 0; k < dn; ++k) {
        span.push_back(lin::unit(dn, k));
        std::size_t r2 = rank(lin::column_matrix(span, dn));
        if (r2 > r) {
            out.complement.push_back(lin::unit(dn, k));
            r = r2;
        } else {
            span.pop_back();
        }
    }
    const std::size_t dg = out.complement.size();
    // Projection: coordinates along the complement in the basis (image basis, complement).
    std::vector<RationalVector> image_basis;
    {
        std::vector<RationalVector> imgs;
        for (std::size_t i = 0; i < dm; ++i) imgs.push_back(cm.mu * lin::unit(dm, i));
        auto e = row_echelon(lin::column_matrix(imgs, dn));
        for (auto c : e.pivot_cols) image_basis.push_back(imgs[c]);
    }
    if (image_basis.size() != image_rank) throw InternalError("image basis has the wrong size");
    auto full = image_basis;
    full.insert(full.end(), out.complement.begin(), out.complement.end());
    auto F = lin::column_matrix(full, dn);
    out.projection = RationalMatrix(dg, dn);
    for (std::size_t k = 0; k < dn; ++k) {
        auto coords = *solve(F, lin::unit(dn, k));
        for (std::size_t a = 0; a < dg; ++a) out.projection(a, k) = coords[image_rank + a];
    }
    // Induced bracket; im mu must be an ideal.
    for (std::size_t a = 0; a < dn; ++a)
        for (std::size_t i = 0; i < image_basis.size(); ++i) {
            auto br = n.bracket(lin::unit(dn, a), image_basis[i]);
            if (!is_zero(out.projection * br))
                throw InputError("image of mu is not an ideal: bracket with basis element " + std::to_string(a));
        }
    LieAlgebra::Tensor t(dg, std::vector<RationalVector>(dg));
    for (std::size_t a = 0; a < dg; ++a)
        for (std::size_t b = 0; b < dg; ++b) t[a][b] = out.projection * n.bracket(out.complement[a], out.complement[b]);
    out.coker = LieAlgebra("coker", std::move(t));

    // g acts on V through eta of the complement vectors.
    const std::size_t dv = out.kernel.size();
    out.module.g = out.coker;
    out.module.dim_v = dv;
    auto K = lin::column_matrix(out.kernel, dm);
    for (std::size_t a = 0; a < dg; ++a) {
        RationalMatrix rho(dv, dv);
        auto E = cm.eta_of(out.complement[a]);
        for (std::size_t j = 0; j < dv; ++j) {
            auto c = solve(K, E * out.kernel[j]);
            if (!c) throw InternalError("eta does not preserve the kernel of mu");
            for (std::size_t i = 0; i < dv; ++i) rho(i, j) = (*c)[i];
        }
        out.module.rho.push_back(std::move(rho));
    }
    out.module.check_action();
    return out;
}

/// Section sigma: g -> n as a dim n x dim g matrix with projection * sigma = id.
inline RationalMatrix default_section(const XModStructure& s) {
    return lin::column_matrix(s.complement, s.projection.cols());
}

struct ObstructionCocycleCE {
    RationalMatrix sigma;
    std::map<std::pair<std::size_t, std::size_t>, RationalVector> lambda;     // a < b, values in m
    std::map<std::pair<std::size_t, std::size_t>, RationalVector> curvature;  // a < b, values in n
    CECochain omega3;                                                           // values in V coordinates
};

/// omega3(x,y,z) = sum_cyc eta(sigma x) Lambda(y,z) - sum_cyc Lambda([x,y], z), read in V.
/// `shift` (optional, a 2-cochain with values in V) is added to Lambda.
inline ObstructionCocycleCE obstruction_3cocycle(const CrossedModuleLie& cm, const XModStructure& s,
                                                 const RationalMatrix& sigma, const CECochain* shift = nullptr) {
    if (!s.valid()) throw InputError("crossed module is invalid: " + s.violations.front().describe());
    const std::size_t dg = s.coker.dim(), dm = cm.m.dim(), dv = s.kernel.size();
    if (sigma.rows() != cm.n.dim() || sigma.cols() != dg) throw InputError("section has the wrong shape");
    if (!(s.projection * sigma == RationalMatrix::identity(dg))) throw InputError("section is not right inverse to the projection");
    ObstructionCocycleCE out{sigma, {}, {}, CECochain(dg, dv, 3)};
    auto K = lin::column_matrix(s.kernel, dm);
    auto col = [&](std::size_t a) { return sigma * lin::unit(dg, a); };

    for (std::size_t a = 0; a < dg; ++a)
        for (std::size_t b = a + 1; b < dg; ++b) {
            auto curv = lin::add(cm.n.bracket(col(a), col(b)), sigma * s.coker.bracket_basis(a, b), -1);
            auto pre = solve(cm.mu, curv);
            if (!pre) throw InternalError("curvature of the section is not in the image of mu");
            if (shift) pre = lin::add(*pre, K * shift->on_basis({a, b}));
            out.curvature[{a, b}] = curv;
            out.lambda[{a, b}] = *pre;
        }
    auto lambda = [&](std::size_t a, std::size_t b) -> RationalVector {
        if (a == b) return lin::zeros(dm);
        if (a < b) return out.lambda.at({a, b});
        auto v = out.lambda.at({b, a});
        for (auto& x : v) x = -x;
        return v;
    };
    // Lambda([x_a, x_b], x_c) by bilinearity.
    auto lambda_br = [&](std::size_t a, std::size_t b, std::size_t c) {
        RationalVector acc = lin::zeros(dm);
        const auto& br = s.coker.bracket_basis(a, b);
        for (std::size_t k = 0; k < dg; ++k)
            if (br[k] != 0) acc = lin::add(acc, lambda(k, c), br[k]);
        return acc;
    };
    for (std::size_t t = 0; t < out.omega3.size(); ++t) {
        const auto& x = out.omega3.subsets()[t];
        const std::size_t cyc[3][3] = {{x[0], x[1], x[2]}, {x[1], x[2], x[0]}, {x[2], x[0], x[1]}};
        RationalVector acc = lin::zeros(dm);
        for (const auto& c : cyc) {
            acc = lin::add(acc, cm.eta_of(col(c[0])) * lambda(c[1], c[2]));
            acc = lin::add(acc, lambda_br(c[0], c[1], c[2]), -1);
        }
        if (!is_zero(cm.mu * acc)) throw InternalError("obstruction cocycle leaves the kernel of mu");
        auto coords = solve(K, acc);
        if (!coords) throw InternalError("obstruction value not in the span of the kernel basis");
        out.omega3.at(t) = *coords;
    }
    if (!detail::ce_differential(out.omega3, s.module).is_zero())
        throw InternalError("obstruction 3-cochain is not a CE cocycle");
    return out;
}

namespace xmod {

/// id: L -> L with eta = ad.
inline CrossedModuleLie identity(const LieAlgebra& L) {
    CrossedModuleLie cm{"id(" + L.name() + ")", L, L, RationalMatrix::identity(L.dim()), {}};
    for (std::size_t a = 0; a < L.dim(); ++a) cm.eta.push_back(L.ad(lin::unit(L.dim(), a)));
    return cm;
}

/// ad: L -> n where n is the Lie algebra of the given derivation matrices (containing ad(L)).
inline CrossedModuleLie adjoint(const LieAlgebra& L, const std::vector<RationalMatrix>& derivations,
                                std::string name) {
    auto n = matrix_lie_algebra("der-span", derivations);
    const std::size_t d = L.dim();
    RationalMatrix A(d * d, derivations.size());
    for (std::size_t a = 0; a < derivations.size(); ++a)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) A(r * d + c, a) = derivations[a](r, c);
    RationalMatrix mu(derivations.size(), d);
    for (std::size_t i = 0; i < d; ++i) {
        auto ad = L.ad(lin::unit(d, i));
        RationalVector v(d * d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) v[r * d + c] = ad(r, c);
        auto coords = solve(A, v);
        if (!coords) throw InputError("derivation span does not contain the inner derivations");
        for (std::size_t a = 0; a < derivations.size(); ++a) mu(a, i) = (*coords)[a];
    }
    return {std::move(name), L, std::move(n), std::move(mu), derivations};
}

/// ad: L -> der(L).
inline CrossedModuleLie adjoint(const LieAlgebra& L) {
    return adjoint(L, derivation_basis(L), "ad(" + L.name() + ")");
}

/// V + I -> E for an ideal I of E and an E-module V on which I acts trivially:
/// mu(v, i) = i, eta(e)(v, i) = (rho(e) v, [e, i]). V is the kernel; E / I the cokernel.
inline CrossedModuleLie from_extension(const LieAlgebra& E, const std::vector<RationalVector>& ideal,
                                       const std::vector<RationalMatrix>& rho, std::size_t dim_v, std::string name) {
    const std::size_t de = E.dim(), di = ideal.size(), dm = dim_v + di;
    if (rho.size() != de) throw InputError("module needs one matrix per basis element of E");
    auto I = lin::column_matrix(ideal, de);
    auto in_ideal = [&](const RationalVector& x) {
        auto c = solve(I, x);
        if (!c) throw InputError("span is not an ideal");
        return *c;
    };
    LieAlgebra::Tensor t(dm, std::vector<RationalVector>(dm, lin::zeros(dm)));
    for (std::size_t a = 0; a < di; ++a)
        for (std::size_t b = 0; b < di; ++b) {
            auto c = in_ideal(E.bracket(ideal[a], ideal[b]));
            for (std::size_t k = 0; k < di; ++k) t[dim_v + a][dim_v + b][dim_v + k] = c[k];
        }
    LieAlgebra m(name + ":m", std::move(t));
    RationalMatrix mu(de, dm);
    for (std::size_t a = 0; a < di; ++a)
        for (std::size_t r = 0; r < de; ++r) mu(r, dim_v + a) = ideal[a][r];
    std::vector<RationalMatrix> eta;
    for (std::size_t e = 0; e < de; ++e) {
        RationalMatrix M(dm, dm);
        for (std::size_t r = 0; r < dim_v; ++r)
            for (std::size_t c = 0; c < dim_v; ++c) M(r, c) = rho[e](r, c);
        for (std::size_t a = 0; a < di; ++a) {
            auto c = in_ideal(E.bracket(lin::unit(de, e), ideal[a]));
            for (std::size_t k = 0; k < di; ++k) M(dim_v + k, dim_v + a) = c[k];
        }
        eta.push_back(std::move(M));
    }
    return {std::move(name), std::move(m), E, std::move(mu), std::move(eta)};
}

/// Random invertible integer matrix with small entries (unit lower times unit upper triangular).
template <class Rng>
RationalMatrix random_unimodular(std::size_t d, Rng& rng) {
    std::uniform_int_distribution<int> small(-2, 2);
    RationalMatrix L = RationalMatrix::identity(d), U = RationalMatrix::identity(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < r; ++c) {
            L(r, c) = small(rng);
            U(c, r) = small(rng);
        }
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RationalMatrix P(d, d);
    for (std::size_t i = 0; i < d; ++i) P(perm[i], i) = 1;
    return P * L * U;
}

template <class Rng>
RationalMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, int bound = 3) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    RationalMatrix M(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) M(r, c) = Rational(dist(rng), 1 + (dist(rng) == bound ? 1 : 0));
    return M;
}

/// Closure of a set of matrices under commutators (basis reduced by row echelon); nullopt if it exceeds `max_dim`.
inline std::optional<std::vector<RationalMatrix>> commutator_closure(std::vector<RationalMatrix> gens,
                                                                     std::size_t max_dim) {
    if (gens.empty()) return gens;
    const std::size_t n = gens[0].rows();
    auto flatten = [n](const RationalMatrix& M) {
        RationalVector v(n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) v[r * n + c] = M(r, c);
        return v;
    };
    std::vector<RationalMatrix> basis;
    std::vector<RationalVector> flat;
    auto try_add = [&](const RationalMatrix& M) {
        auto v = flatten(M);
        flat.push_back(v);
        if (rank(lin::column_matrix(flat, n * n)) == flat.size()) {
            basis.push_back(M);
            return true;
        }
        flat.pop_back();
        return false;
    };
    for (const auto& g : gens) try_add(g);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (try_add(lin::commutator(basis[i], basis[j])) && basis.size() > max_dim) return std::nullopt;
        }
    if (basis.size() > max_dim) return std::nullopt;
    return basis;
}

enum class Family { Adjoint, Extension, Abelian };

struct RandomCrossedModule {
    CrossedModuleLie cm;
    Family family;
};

/// Random valid crossed module with dim m, dim n <= 6.
template <class Rng>
RandomCrossedModule random_crossed_module(Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 99);
    const int roll = pick(rng);
    if (roll < 45) {
        // Adjoint type: L -> span(ad L, D) for a random derivation D of L.
        static const std::vector<LieAlgebra> pool = {lie::heisenberg(), lie::affine_line(), lie::sl2(),
                                                     lie::filiform4(), lie::abelian(2),
                                                     lie::direct_sum(lie::affine_line(), lie::abelian(1))};
        for (int attempt = 0; attempt < 20; ++attempt) {
            const auto& base = pool[static_cast<std::size_t>(pick(rng)) % pool.size()];
            auto L = base.change_basis(random_unimodular(base.dim(), rng), base.name() + "'");
            auto ders = derivation_basis(L);
            std::vector<RationalMatrix> gens;
            for (std::size_t i = 0; i < L.dim(); ++i) gens.push_back(L.ad(lin::unit(L.dim(), i)));
            const int extra = pick(rng) % 3;
            for (int e = 0; e < extra && !ders.empty(); ++e) {
                RationalMatrix D(L.dim(), L.dim());
                auto coeffs = random_matrix(ders.size(), 1, rng, 2);
                for (std::size_t k = 0; k < ders.size(); ++k) D = lin::add(D, ders[k], coeffs(k, 0));
                gens.push_back(D);
            }
            auto closed = commutator_closure(gens, 6);
            if (!closed || closed->empty()) continue;
            return {adjoint(L, *closed, "random-ad(" + L.name() + ")"), Family::Adjoint};
        }
        return {adjoint(lie::heisenberg()), Family::Adjoint};
    }
    if (roll < 85) {
        // Extension type: E with ideal I and a module V (scalar characters vanishing on [E,E] + I).
        struct Shape {
            LieAlgebra E;
            std::vector<RationalVector> ideal;
        };
        static const std::vector<Shape> shapes = {
            {lie::heisenberg(), {{0, 0, 1}}},
            {lie::heisenberg(), {{0, 1, 0}, {0, 0, 1}}},
            {lie::affine_line(), {{0, 1}}},
            {lie::direct_sum(lie::affine_line(), lie::abelian(1)), {{0, 1, 0}}},
            {lie::direct_sum(lie::sl2(), lie::abelian(1)), {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}},
            {lie::direct_sum(lie::heisenberg(), lie::abelian(1)), {{0, 0, 1, 0}}},
            {lie::filiform4(), {{0, 0, 1, 0}, {0, 0, 0, 1}}},
            {lie::abelian(3), {{1, 0, 0}}},
        };
        const auto& sh = shapes[static_cast<std::size_t>(pick(rng)) % shapes.size()];
        const std::size_t de = sh.E.dim();
        auto P = random_unimodular(de, rng);
        auto E = sh.E.change_basis(P, sh.E.name() + "'");
        // Ideal vectors in the new basis: P^-1 v.
        std::vector<RationalVector> ideal;
        for (const auto& v : sh.ideal) ideal.push_back(*solve(P, v));
        // Characters lambda: E -> Q vanishing on [E,E] and the ideal.
        std::vector<RationalVector> kill;
        for (std::size_t a = 0; a < de; ++a)
            for (std::size_t b = a + 1; b < de; ++b) kill.push_back(E.bracket_basis(a, b));
        kill.insert(kill.end(), ideal.begin(), ideal.end());
        RationalMatrix Kt(kill.size(), de);
        for (std::size_t r = 0; r < kill.size(); ++r)
            for (std::size_t c = 0; c < de; ++c) Kt(r, c) = kill[r][c];
        auto chars = kernel_basis(Kt);
        const std::size_t max_v = 6 - ideal.size();
        const std::size_t dv = std::min<std::size_t>(static_cast<std::size_t>(pick(rng) % 3), max_v);
        std::vector<RationalMatrix> rho(de, RationalMatrix(dv, dv));
        if (dv > 0 && !chars.empty()) {
            // rho(e) = lambda(e) * A for a fixed random A (all rho commute and kill [E,E]).
            auto A = random_matrix(dv, dv, rng, 2);
            auto w = random_matrix(chars.size(), 1, rng, 2);
            RationalVector lambda = lin::zeros(de);
            for (std::size_t k = 0; k < chars.size(); ++k) lambda = lin::add(lambda, chars[k], w(k, 0));
            for (std::size_t e = 0; e < de; ++e) rho[e] = lin::add(RationalMatrix(dv, dv), A, lambda[e]);
        }
        return {from_extension(E, ideal, rho, dv, "random-ext(" + E.name() + ")"), Family::Extension};
    }
    // Abelian m with mu = 0 and n acting by a representation: here n = gl-span of one matrix pair.
    const std::size_t dm = 1 + static_cast<std::size_t>(pick(rng) % 3);
    auto closed = commutator_closure({random_matrix(dm, dm, rng, 1), random_matrix(dm, dm, rng, 1)}, 6);
    if (!closed) closed = std::vector<RationalMatrix>{RationalMatrix::identity(dm)};
    auto n = matrix_lie_algebra("rep", *closed);
    return {{"random-rep", lie::abelian(dm), n, RationalMatrix(n.dim(), dm), *closed}, Family::Abelian};
}


/// Another section: sigma + mu R for a random R (the projection kills the image of mu).
template <class Rng>
RationalMatrix random_section(const CrossedModuleLie& cm, const XModStructure& s, Rng& rng) {
    auto R = random_matrix(cm.m.dim(), s.coker.dim(), rng, 2);
    return lin::add(default_section(s), cm.mu * R);
}

/// omega3 for a section together with the decision whether its class vanishes.
struct ClassReport {
    XModStructure structure;
    ObstructionCocycleCE cocycle;
    CESolveResult solve;
};

inline ClassReport analyze(const CrossedModuleLie& cm, const std::optional<RationalMatrix>& sigma = std::nullopt) {
    auto s = validate_crossed_module(cm);
    if (!s.valid()) throw InputError("crossed module '" + cm.name + "' is invalid: " + s.violations.front().describe());
    auto oc = obstruction_3cocycle(cm, s, sigma ? *sigma : default_section(s));
    CESolveResult r;
    if (oc.omega3.size() == 0 || oc.omega3.dim_v() == 0)
        r.witness = CECochain(oc.omega3.dim_g(), oc.omega3.dim_v(), 2);
    else
        r = coboundary_solve(oc.omega3, s.module);
    return {std::move(s), std::move(oc), std::move(r)};
}

}  // namespace xmod

}  // namespace obstructk
