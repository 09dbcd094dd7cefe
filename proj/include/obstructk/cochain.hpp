#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/complex.hpp"
#include "obstructk/matrix.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

/// Abelian coefficient groups, all carried by exact rationals.
///
/// Canonical values: Integers and Rationals as is, IntegersMod n in [0, n),
/// RationalsModIntegers in [0, 1). RationalVectors k uses k rationals per simplex.
class CoefficientSystem {
  public:
    enum class Kind { Integers, IntegersMod, Rationals, RationalVectors, RationalsModIntegers };

    static CoefficientSystem integers() { return {Kind::Integers, 0}; }
    static CoefficientSystem integers_mod(long n) {
        if (n < 2) throw InputError("IntegersMod requires n >= 2, got " + std::to_string(n));
        return {Kind::IntegersMod, n};
    }
    static CoefficientSystem rationals() { return {Kind::Rationals, 0}; }
    static CoefficientSystem rational_vectors(long k) {
        if (k < 1) throw InputError("RationalVectors requires k >= 1, got " + std::to_string(k));
        return {Kind::RationalVectors, k};
    }
    static CoefficientSystem rationals_mod_integers() { return {Kind::RationalsModIntegers, 0}; }

    /// Accepts "Z", "Z/n", "Q", "Q^k", "Q/Z".
    static CoefficientSystem parse(const std::string& s) {
        if (s == "Z") return integers();
        if (s == "Q") return rationals();
        if (s == "Q/Z") return rationals_mod_integers();
        try {
            if (s.rfind("Z/", 0) == 0) return integers_mod(std::stol(s.substr(2)));
            if (s.rfind("Q^", 0) == 0) return rational_vectors(std::stol(s.substr(2)));
        } catch (const std::logic_error&) {
        }
        throw InputError("unknown coefficient system '" + s + "'");
    }

    Kind kind() const { return kind_; }
    /// n for IntegersMod, k for RationalVectors, 0 otherwise.
    long parameter() const { return param_; }
    Integer modulus() const { return Integer(param_); }

    std::size_t width() const { return kind_ == Kind::RationalVectors ? static_cast<std::size_t>(param_) : 1; }
    bool is_integral() const { return kind_ == Kind::Integers || kind_ == Kind::IntegersMod; }
    bool is_finite() const { return kind_ == Kind::IntegersMod; }

    std::string name() const {
        switch (kind_) {
            case Kind::Integers: return "Z";
            case Kind::IntegersMod: return "Z/" + std::to_string(param_);
            case Kind::Rationals: return "Q";
            case Kind::RationalVectors: return "Q^" + std::to_string(param_);
            case Kind::RationalsModIntegers: return "Q/Z";
        }
        return "?";
    }

    /// True if `x` represents an element (before reduction).
    bool admits(const Rational& x) const {
        if (is_integral()) return obstructk::is_integral(x);
        return true;
    }

    Rational normalize(const Rational& x) const {
        switch (kind_) {
            case Kind::IntegersMod: return Rational(mod_floor(num(x), modulus()));
            case Kind::RationalsModIntegers: return frac(x);
            default: return x;
        }
    }

    friend bool operator==(const CoefficientSystem&, const CoefficientSystem&) = default;

  private:
    CoefficientSystem(Kind k, long p) : kind_(k), param_(p) {}
    Kind kind_;
    long param_;
};

/// Degree-q cochain: one coefficient value per q-simplex (dense, zero by default).
class Cochain {
  public:
    Cochain(ComplexPtr complex, int degree, CoefficientSystem coeff)
        : complex_(std::move(complex)), degree_(degree), coeff_(coeff),
          values_(complex_->count(degree) * coeff.width(), Rational(0)) {
        if (degree < 0) throw InputError("negative cochain degree");
    }

    const ComplexPtr& complex_ptr() const { return complex_; }
    const SimplicialComplex& complex() const { return *complex_; }
    int degree() const { return degree_; }
    const CoefficientSystem& coefficient() const { return coeff_; }
    std::size_t width() const { return coeff_.width(); }
    std::size_t size() const { return complex_->count(degree_); }

    /// Flat values, simplex-major: entry (i, c) lives at i * width + c.
    const std::vector<Rational>& values() const { return values_; }

    std::span<const Rational> at(std::size_t index) const { return {values_.data() + index * width(), width()}; }
    const Rational& scalar(std::size_t index) const { return values_[index * width()]; }
    const Rational& operator[](const Simplex& s) const { return values_[checked_index(s) * width()]; }
    std::span<const Rational> at(const Simplex& s) const { return at(checked_index(s)); }

    void set(std::size_t index, const Rational& v, std::size_t component = 0) {
        if (!coeff_.admits(v))
            throw InputError("value " + to_string(v) + " is not in " + coeff_.name());
        values_[index * width() + component] = coeff_.normalize(v);
    }
    void set(const Simplex& s, const Rational& v, std::size_t component = 0) { set(checked_index(s), v, component); }

    bool is_zero() const {
        for (const auto& x : values_)
            if (x != 0) return false;
        return true;
    }

    /// First simplex with a nonzero value, if any.
    std::optional<Simplex> first_support() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (const auto& x : at(i))
                if (x != 0) return complex_->simplices(degree_)[i];
        return std::nullopt;
    }

    Cochain& operator+=(const Cochain& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = coeff_.normalize(values_[i] + o.values_[i]);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = coeff_.normalize(values_[i] - o.values_[i]);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Integer& k, Cochain c) {
        for (auto& x : c.values_) x = c.coeff_.normalize(Rational(k) * x);
        return c;
    }

    /// Valuewise image under a coefficient homomorphism (or set map) into `target`.
    Cochain map_values(const CoefficientSystem& target, const std::function<Rational(const Rational&)>& f) const {
        if (target.width() != width()) throw InputError("coefficient width mismatch in value map");
        Cochain out(complex_, degree_, target);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            Rational v = f(values_[i]);
            if (!target.admits(v)) throw InputError("mapped value " + to_string(v) + " is not in " + target.name());
            out.values_[i] = target.normalize(v);
        }
        return out;
    }

    /// Same values, viewed in another coefficient system (values must be admissible).
    Cochain reinterpret(const CoefficientSystem& target) const {
        return map_values(target, [](const Rational& x) { return x; });
    }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return (a.complex_ == b.complex_ || *a.complex_ == *b.complex_) && a.degree_ == b.degree_ && a.coeff_ == b.coeff_ && a.values_ == b.values_;
    }

    void require_compatible(const Cochain& o) const {
        if (complex_ != o.complex_ && !(*complex_ == *o.complex_))
            throw InputError("cochains live on different complexes");
        if (degree_ != o.degree_) throw InputError("cochain degree mismatch");
        if (!(coeff_ == o.coeff_))
            throw InputError("coefficient mismatch: " + coeff_.name() + " vs " + o.coeff_.name());
    }

  private:
    std::size_t checked_index(const Simplex& s) const {
        if (static_cast<int>(s.size()) != degree_ + 1)
            throw InputError("simplex " + format_simplex(s) + " has wrong dimension for a degree-" +
                             std::to_string(degree_) + " cochain");
        auto idx = complex_->index_of(s);
        if (!idx) throw InputError("simplex " + format_simplex(s) + " is not in the complex");
        return *idx;
    }

    ComplexPtr complex_;
    int degree_;
    CoefficientSystem coeff_;
    std::vector<Rational> values_;
};

/// Alternating sum (dc)(v_0..v_{q+1}) = sum_i (-1)^i c(v_0..^v_i..v_{q+1}), computed over Q
/// and then reduced into the cochain's coefficient system.
inline Cochain coboundary(const Cochain& c) {
    const auto& x = c.complex();
    Cochain out(c.complex_ptr(), c.degree() + 1, c.coefficient());
    const std::size_t w = c.width();
    const auto& upper = x.simplices(c.degree() + 1);
    for (std::size_t t = 0; t < upper.size(); ++t) {
        const auto& s = upper[t];
        for (std::size_t comp = 0; comp < w; ++comp) {
            Rational acc = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                const Rational& v = c.at(*x.index_of(drop_vertex(s, i)))[comp];
                if (v == 0) continue;
                if (i % 2) acc -= v; else acc += v;
            }
            if (acc != 0) out.set(t, acc, comp);
        }
    }
    return out;
}

/// Integer matrix of the coboundary C^q -> C^{q+1}: rows are (q+1)-simplices, columns q-simplices.
inline Matrix<Integer> coboundary_matrix(const SimplicialComplex& x, int q) {
    const auto& lower = x.simplices(q);
    const auto& upper = x.simplices(q + 1);
    Matrix<Integer> m(upper.size(), lower.size());
    if (q < 0) return m;
    for (std::size_t r = 0; r < upper.size(); ++r) {
        const auto& s = upper[r];
        for (std::size_t i = 0; i < s.size(); ++i)
            m(r, *x.index_of(drop_vertex(s, i))) = (i % 2) ? -1 : 1;
    }
    return m;
}

}  // namespace obstructk
