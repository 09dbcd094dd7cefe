#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/cochain.hpp"
#include "obstructk/complex.hpp"
#include "obstructk/rational.hpp"
#include "obstructk/smith.hpp"

namespace obstructk {

namespace detail {

/// Smith-form data of one spot  C_in --A--> C --B--> C_out  of a complex of free modules.
///
/// With U B V = D (rank r) the kernel of B is spanned by the last N - r columns
/// of V, and V^-1 A vanishes above row r. The remaining block A' is reduced
/// again: U' A' V' = D' (rank r2). Every coefficient system is handled by
/// reading coordinates off these two factorizations.
struct SpotDecomposition {
    SmithForm outgoing;
    SmithForm tail;
    std::size_t n = 0;   // rank of C
    std::size_t r = 0;   // rank of B
    std::size_t r2 = 0;  // rank of A'
    std::size_t incoming_cols = 0;

    std::size_t tail_size() const { return n - r; }
    std::size_t free_rank() const { return n - r - r2; }
    const Integer& kernel_factor(std::size_t i) const { return outgoing.factor(i); }
    const Integer& tail_factor(std::size_t j) const { return tail.factor(j); }
};

inline SpotDecomposition decompose(const Matrix<Integer>& incoming, const Matrix<Integer>& outgoing) {
    SpotDecomposition d;
    d.n = incoming.rows();
    d.incoming_cols = incoming.cols();
    if (outgoing.cols() != d.n) throw InternalError("chain maps do not compose");
    if (!(outgoing * incoming).is_zero()) throw InternalError("consecutive differentials do not compose to zero");
    d.outgoing = smith_normal_form(outgoing);
    d.r = d.outgoing.rank;
    Matrix<Integer> coords = d.outgoing.V_inv * incoming;
    Matrix<Integer> reduced(d.n - d.r, incoming.cols());
    for (std::size_t i = 0; i < d.r; ++i)
        for (std::size_t c = 0; c < incoming.cols(); ++c)
            if (coords(i, c) != 0) throw InternalError("image not contained in kernel");
    for (std::size_t i = d.r; i < d.n; ++i)
        for (std::size_t c = 0; c < incoming.cols(); ++c) reduced(i - d.r, c) = coords(i, c);
    d.tail = smith_normal_form(reduced);
    d.r2 = d.tail.rank;
    return d;
}

// Vector in C from coordinates (y_head for kernel rows, t for tail coordinates).
template <class T>
std::vector<T> assemble(const SpotDecomposition& d, const std::vector<T>& head, const std::vector<T>& t) {
    std::vector<T> y(d.n, T(0));
    for (std::size_t i = 0; i < d.r; ++i) y[i] = head[i];
    const auto& ui = d.tail.U_inv;
    for (std::size_t a = 0; a < d.tail_size(); ++a) {
        T acc(0);
        for (std::size_t b = 0; b < d.tail_size(); ++b)
            if (ui(a, b) != 0 && t[b] != 0) acc += T(ui(a, b)) * t[b];
        y[d.r + a] = acc;
    }
    std::vector<T> out(d.n, T(0));
    const auto& v = d.outgoing.V;
    for (std::size_t a = 0; a < d.n; ++a) {
        T acc(0);
        for (std::size_t b = 0; b < d.n; ++b)
            if (v(a, b) != 0 && y[b] != 0) acc += T(v(a, b)) * y[b];
        out[a] = acc;
    }
    return out;
}

template <class T>
std::vector<T> apply_matrix(const Matrix<Integer>& m, const std::vector<T>& v) {
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t a = 0; a < m.rows(); ++a) {
        T acc(0);
        for (std::size_t b = 0; b < m.cols(); ++b)
            if (m(a, b) != 0 && v[b] != 0) acc += T(m(a, b)) * v[b];
        out[a] = acc;
    }
    return out;
}

// y = V^-1 z split into head (first r) and tail coordinates t = U' y_tail.
template <class T>
std::pair<std::vector<T>, std::vector<T>> coordinates(const SpotDecomposition& d, const std::vector<T>& z) {
    std::vector<T> y = apply_matrix(d.outgoing.V_inv, z);
    std::vector<T> head(y.begin(), y.begin() + static_cast<long>(d.r));
    std::vector<T> tail_y(y.begin() + static_cast<long>(d.r), y.end());
    return {std::move(head), apply_matrix(d.tail.U, tail_y)};
}

// Where one raw cyclic summand of the answer comes from.
struct RawSummand {
    enum class Source { Head, Tail } source;
    std::size_t index;
    Integer order;  // 0 for an infinite summand (Z, Q or Q/Z)
};

}  // namespace detail

/// H^q(X; coeff) with invariant factors and generator cocycles.
///
/// Free part: `free_rank` copies of the coefficient object (Z, Q, or Q/Z; for
/// Q^k it counts rational dimensions). Finite part: invariant factors
/// d_1 | d_2 | ..., each >= 2. For IntegersMod n every summand is finite.
///
/// `generators` lists torsion generators first, in the order of `torsion`,
/// then free generators. For Q/Z free summands the entry is an integral
/// direction cocycle (over Z); coordinate x in Q/Z corresponds to x times it.
class CohomologyGroup {
  public:
    int degree = 0;
    CoefficientSystem coefficient = CoefficientSystem::integers();
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    std::vector<Cochain> generators;

    const SimplicialComplex& complex() const { return *complex_; }
    const ComplexPtr& complex_ptr() const { return complex_; }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    /// Text like "Z^2 + Z/2 + Z/4" (or "0").
    std::string describe() const {
        std::string out;
        auto add = [&](const std::string& s) { out += (out.empty() ? "" : " + ") + s; };
        if (free_rank > 0) {
            std::string base =
                coefficient.kind() == CoefficientSystem::Kind::RationalVectors ? "Q" : coefficient.name();
            if (free_rank > 1 && base.find('/') != std::string::npos) base = "(" + base + ")";
            add(free_rank == 1 ? base : base + "^" + std::to_string(free_rank));
        }
        for (const auto& t : torsion) add("Z/" + t.str());
        return out.empty() ? "0" : out;
    }

  private:
    friend class CohomologyEngine;
    ComplexPtr complex_;
    std::shared_ptr<const detail::SpotDecomposition> spot_;
    std::vector<detail::RawSummand> finite_raw_;  // raw finite summands, before normalization
    std::vector<detail::RawSummand> free_raw_;
    Matrix<Integer> norm_U_, norm_U_inv_;  // raw finite coords -> invariant-factor coords
    std::vector<std::size_t> norm_kept_;   // indices into the normalized diagonal with factor >= 2
};

using GroupPtr = std::shared_ptr<const CohomologyGroup>;

/// Coordinates of a cohomology class. Zero iff every coordinate vanishes iff a witness is present.
struct CohomologyClass {
    GroupPtr group;
    std::vector<Rational> free_coords;   // in Z, Q or [0,1) for Q/Z
    std::vector<Integer> torsion_coords;  // residues mod the invariant factors
    std::optional<Cochain> witness;      // delta(witness) = cocycle when the class is zero

    bool is_zero() const { return witness.has_value(); }

    /// Smallest n >= 1 with n * class = 0, or nullopt when the class has infinite order.
    std::optional<Integer> order() const {
        Integer n = 1;
        for (std::size_t j = 0; j < free_coords.size(); ++j) {
            const auto& c = free_coords[j];
            if (c == 0) continue;
            if (group->coefficient.kind() != CoefficientSystem::Kind::RationalsModIntegers) return std::nullopt;
            n = lcm(n, den(c));
        }
        for (std::size_t j = 0; j < torsion_coords.size(); ++j) {
            const auto& d = group->torsion[j];
            n = lcm(n, d / gcd(torsion_coords[j], d));
        }
        return n;
    }
};

class CohomologyEngine {
  public:
    static GroupPtr compute(ComplexPtr x, const CoefficientSystem& coeff, int q) {
        if (q < 0) throw InputError("negative cohomology degree " + std::to_string(q));
        auto spot = std::make_shared<detail::SpotDecomposition>(
            detail::decompose(coboundary_matrix(*x, q - 1), coboundary_matrix(*x, q)));
        auto g = std::make_shared<CohomologyGroup>();
        g->degree = q;
        g->coefficient = coeff;
        g->complex_ = x;
        g->spot_ = spot;
        const auto& d = *spot;
        using Kind = CoefficientSystem::Kind;
        using detail::RawSummand;
        using Src = RawSummand::Source;
        switch (coeff.kind()) {
            case Kind::Integers:
                for (std::size_t j = 0; j < d.r2; ++j)
                    if (d.tail_factor(j) >= 2) g->finite_raw_.push_back({Src::Tail, j, d.tail_factor(j)});
                for (std::size_t j = d.r2; j < d.tail_size(); ++j) g->free_raw_.push_back({Src::Tail, j, 0});
                break;
            case Kind::Rationals:
            case Kind::RationalVectors:
                for (std::size_t j = d.r2; j < d.tail_size(); ++j) g->free_raw_.push_back({Src::Tail, j, 0});
                break;
            case Kind::IntegersMod: {
                const Integer n = coeff.modulus();
                for (std::size_t i = 0; i < d.r; ++i) {
                    Integer o = gcd(n, d.kernel_factor(i));
                    if (o >= 2) g->finite_raw_.push_back({Src::Head, i, o});
                }
                for (std::size_t j = 0; j < d.r2; ++j) {
                    Integer o = gcd(n, d.tail_factor(j));
                    if (o >= 2) g->finite_raw_.push_back({Src::Tail, j, o});
                }
                for (std::size_t j = d.r2; j < d.tail_size(); ++j) g->finite_raw_.push_back({Src::Tail, j, n});
                break;
            }
            case Kind::RationalsModIntegers:
                for (std::size_t i = 0; i < d.r; ++i)
                    if (d.kernel_factor(i) >= 2) g->finite_raw_.push_back({Src::Head, i, d.kernel_factor(i)});
                for (std::size_t j = d.r2; j < d.tail_size(); ++j) g->free_raw_.push_back({Src::Tail, j, 0});
                break;
        }
        normalize_finite(*g);
        build_generators(*g);
        return g;
    }

    static CohomologyClass classify(const Cochain& z, const GroupPtr& g) {
        if (z.degree() != g->degree) throw InputError("cocycle degree does not match the group");
        if (!(z.coefficient() == g->coefficient))
            throw InputError("coefficient mismatch: " + z.coefficient().name() + " vs " + g->coefficient.name());
        if (!(z.complex() == g->complex())) throw InputError("cocycle lives on a different complex");
        if (auto bad = coboundary(z).first_support()) throw NotCocycleError(*bad);

        const auto& d = *g->spot_;
        CohomologyClass cls{g, {}, {}, std::nullopt};
        using Kind = CoefficientSystem::Kind;
        const auto kind = g->coefficient.kind();
        const std::size_t width = g->coefficient.width();
        std::vector<Integer> raw_finite;
        bool zero = true;
        std::vector<std::vector<Rational>> witness_components;

        for (std::size_t comp = 0; comp < width; ++comp) {
            std::vector<Rational> zt(d.n);
            for (std::size_t i = 0; i < d.n; ++i) zt[i] = z.at(i)[comp];
            auto [head, t] = detail::coordinates(d, zt);

            for (const auto& s : g->finite_raw_) {
                Integer c;
                if (s.source == detail::RawSummand::Source::Head) {
                    if (kind == Kind::IntegersMod) {
                        Integer n = g->coefficient.modulus();
                        Rational scaled = head[s.index] / Rational(n / s.order);
                        if (!is_integral(scaled)) throw InternalError("cocycle head coordinate not divisible");
                        c = mod_floor(num(scaled), s.order);
                    } else {
                        Rational scaled = head[s.index] * Rational(d.kernel_factor(s.index));
                        if (!is_integral(scaled)) throw InternalError("cocycle head coordinate not integral");
                        c = mod_floor(num(scaled), s.order);
                    }
                } else {
                    c = mod_floor(num(t[s.index]), s.order);
                }
                if (c != 0) zero = false;
                raw_finite.push_back(c);
            }
            for (const auto& s : g->free_raw_) {
                Rational c = t[s.index];
                if (kind == Kind::RationalsModIntegers) c = frac(c);
                if (c != 0) zero = false;
                cls.free_coords.push_back(c);
            }
            if (kind == Kind::IntegersMod) {
                // Raw coordinates must also see head rows whose gcd with n is 1.
                Integer n = g->coefficient.modulus();
                for (std::size_t i = 0; i < d.r; ++i)
                    if (gcd(n, d.kernel_factor(i)) == 1 && mod_floor(num(head[i]), n) != 0)
                        throw InternalError("head coordinate should vanish modulo n");
            }
            if (zero) witness_components.push_back(solve_witness(d, kind, g->coefficient, t));
        }

        // Normalize finite coordinates to invariant-factor form.
        if (!g->finite_raw_.empty()) {
            auto mapped = detail::apply_matrix(g->norm_U_, raw_finite);
            for (std::size_t k : g->norm_kept_) cls.torsion_coords.push_back(mod_floor(mapped[k], g->torsion[cls.torsion_coords.size()]));
        }

        if (zero) {
            Cochain w(z.complex_ptr(), z.degree() - 1 < 0 ? 0 : z.degree() - 1, g->coefficient);
            if (z.degree() == 0) {
                // H^0: a zero class is the zero cocycle; there is no (-1)-cochain.
                cls.witness = Cochain(z.complex_ptr(), 0, g->coefficient);
            } else {
                for (std::size_t comp = 0; comp < width; ++comp)
                    for (std::size_t i = 0; i < w.size(); ++i) w.set(i, witness_components[comp][i], comp);
                if (!(coboundary(w) == z)) throw InternalError("witness does not bound the cocycle");
                cls.witness = std::move(w);
            }
        }
        return cls;
    }

    /// Representative cocycle with the given coordinates (free coords as in CohomologyClass).
    static Cochain element(const GroupPtr& g, const std::vector<Rational>& free_coords,
                           const std::vector<Integer>& torsion_coords) {
        if (free_coords.size() != g->free_rank || torsion_coords.size() != g->torsion.size())
            throw InputError("coordinate count does not match the group");
        Cochain out(g->complex_ptr(), g->degree, g->coefficient);
        for (std::size_t k = 0; k < torsion_coords.size(); ++k)
            out += torsion_coords[k] * g->generators[k];
        for (std::size_t j = 0; j < free_coords.size(); ++j) {
            const auto& gen = g->generators[g->torsion.size() + j];
            for (std::size_t i = 0; i < out.size(); ++i)
                for (std::size_t c = 0; c < out.width(); ++c) {
                    const Rational& v = gen.at(i)[c];
                    if (v != 0) out.set(i, out.at(i)[c] + free_coords[j] * v, c);
                }
        }
        return out;
    }

  private:
    static std::vector<Rational> solve_witness(const detail::SpotDecomposition& d, CoefficientSystem::Kind kind,
                                               const CoefficientSystem& coeff, const std::vector<Rational>& t) {
        using Kind = CoefficientSystem::Kind;
        std::vector<Rational> u(d.incoming_cols, Rational(0));
        for (std::size_t j = 0; j < d.r2; ++j) {
            const Integer& f = d.tail_factor(j);
            if (kind == Kind::IntegersMod) {
                Integer n = coeff.modulus();
                Integer tj = mod_floor(num(t[j]), n);
                Integer g = gcd(f, n);
                auto inv = mod_inverse(f / g, n / g);
                if (!inv || tj % g != 0) throw InternalError("unsolvable modular witness equation");
                u[j] = Rational(mod_floor((tj / g) * *inv, n / g));
            } else {
                u[j] = t[j] / Rational(f);
                if (kind == Kind::Integers && !is_integral(u[j])) throw InternalError("non-integral witness");
            }
        }
        return detail::apply_matrix(d.tail.V, u);
    }

    static void normalize_finite(CohomologyGroup& g) {
        const std::size_t m = g.finite_raw_.size();
        Matrix<Integer> diag(m, m);
        for (std::size_t k = 0; k < m; ++k) diag(k, k) = g.finite_raw_[k].order;
        auto snf = smith_normal_form(diag);
        g.norm_U_ = snf.U;
        g.norm_U_inv_ = snf.U_inv;
        for (std::size_t k = 0; k < snf.rank; ++k)
            if (snf.factor(k) >= 2) {
                g.norm_kept_.push_back(k);
                g.torsion.push_back(snf.factor(k));
            }
        g.free_rank = g.free_raw_.size() * g.coefficient.width();
    }

    // Raw representative for one raw summand, over Q (values may be fractional for Q/Z).
    static std::vector<Rational> raw_representative(const CohomologyGroup& g, const detail::RawSummand& s) {
        const auto& d = *g.spot_;
        std::vector<Rational> head(d.r, Rational(0)), t(d.tail_size(), Rational(0));
        if (s.source == detail::RawSummand::Source::Head) {
            if (g.coefficient.kind() == CoefficientSystem::Kind::IntegersMod)
                head[s.index] = Rational(g.coefficient.modulus() / s.order);
            else
                head[s.index] = Rational(1) / Rational(d.kernel_factor(s.index));
        } else {
            t[s.index] = 1;
        }
        return detail::assemble(d, head, t);
    }

    static void build_generators(CohomologyGroup& g) {
        std::vector<std::vector<Rational>> raw;
        for (const auto& s : g.finite_raw_) raw.push_back(raw_representative(g, s));
        const std::size_t n = g.spot_->n;
        for (std::size_t k : g.norm_kept_) {
            Cochain c(g.complex_, g.degree, g.coefficient);
            for (std::size_t i = 0; i < n; ++i) {
                Rational v = 0;
                for (std::size_t a = 0; a < raw.size(); ++a)
                    if (g.norm_U_inv_(a, k) != 0) v += Rational(g.norm_U_inv_(a, k)) * raw[a][i];
                if (v != 0) c.set(i, v);
            }
            g.generators.push_back(std::move(c));
        }
        const bool qz = g.coefficient.kind() == CoefficientSystem::Kind::RationalsModIntegers;
        const CoefficientSystem gen_coeff = qz ? CoefficientSystem::integers() : g.coefficient;
        for (std::size_t comp = 0; comp < g.coefficient.width(); ++comp)
            for (const auto& s : g.free_raw_) {
                auto v = raw_representative(g, s);
                Cochain c(g.complex_, g.degree, gen_coeff);
                for (std::size_t i = 0; i < n; ++i)
                    if (v[i] != 0) c.set(i, v[i], comp);
                g.generators.push_back(std::move(c));
            }
    }
};

inline GroupPtr cohomology_group(ComplexPtr x, const CoefficientSystem& coeff, int q) {
    return CohomologyEngine::compute(std::move(x), coeff, q);
}

inline CohomologyClass classify_cocycle(const Cochain& z, const GroupPtr& g) { return CohomologyEngine::classify(z, g); }

/// Integral cycles spanning H_q(X; Z) modulo torsion, as coefficient vectors over the q-simplices.
inline std::vector<std::vector<Integer>> homology_free_cycles(const SimplicialComplex& x, int q) {
    Matrix<Integer> incoming = coboundary_matrix(x, q).transpose();    // boundary C_{q+1} -> C_q
    Matrix<Integer> outgoing = coboundary_matrix(x, q - 1).transpose();  // boundary C_q -> C_{q-1}
    auto d = detail::decompose(incoming, outgoing);
    std::vector<std::vector<Integer>> out;
    for (std::size_t j = d.r2; j < d.tail_size(); ++j) {
        std::vector<Integer> head(d.r, Integer(0)), t(d.tail_size(), Integer(0));
        t[j] = 1;
        out.push_back(detail::assemble(d, head, t));
    }
    return out;
}

/// Kronecker pairing of a scalar cochain with an integral chain.
inline Rational pairing(const Cochain& c, const std::vector<Integer>& chain) {
    Rational acc = 0;
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (chain[i] != 0) acc += c.scalar(i) * Rational(chain[i]);
    return acc;
}

}  // namespace obstructk
