#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "obstructk/cochain.hpp"
#include "obstructk/errors.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

/// 0 -> A --inject--> B --surject--> C -> 0 with a set-level section C -> B.
struct ShortExactCoefficients {
    enum class Kind { Multiplication, Exponential, ModChain };

    Kind kind;
    std::string name;
    CoefficientSystem sub, mid, quot;
    std::function<Rational(const Rational&)> inject;
    std::function<Rational(const Rational&)> surject;
    std::function<Rational(const Rational&)> set_section;
    /// Preimage under inject, nullopt when the value is not in the image.
    std::function<std::optional<Rational>(const Rational&)> inject_inverse;
    Rational section_offset = 0;

    /// 0 -> Z --n--> Z -> Z/n -> 0; section picks the representative in [offset, offset + n).
    static ShortExactCoefficients multiplication(long n, long offset = 0) {
        ShortExactCoefficients s{Kind::Multiplication,
                                 "0->Z->Z->Z/" + std::to_string(n),
                                 CoefficientSystem::integers(),
                                 CoefficientSystem::integers(),
                                 CoefficientSystem::integers_mod(n)};
        const Integer m(n), c(offset);
        s.section_offset = offset;
        s.inject = [m](const Rational& a) { return a * Rational(m); };
        s.surject = [m](const Rational& b) { return Rational(mod_floor(num(b), m)); };
        s.set_section = [m, c](const Rational& x) { return Rational(c + mod_floor(num(x) - c, m)); };
        s.inject_inverse = [m](const Rational& b) -> std::optional<Rational> {
            if (!is_integral(b) || mod_floor(num(b), m) != 0) return std::nullopt;
            return Rational(num(b) / m);
        };
        return s;
    }

    /// 0 -> Z -> Q -> Q/Z -> 0; section picks the representative in [offset, offset + 1).
    static ShortExactCoefficients exponential(Rational offset = 0) {
        ShortExactCoefficients s{Kind::Exponential, "0->Z->Q->Q/Z", CoefficientSystem::integers(),
                                 CoefficientSystem::rationals(), CoefficientSystem::rationals_mod_integers()};
        s.section_offset = offset;
        s.inject = [](const Rational& a) { return a; };
        s.surject = [](const Rational& b) { return frac(b); };
        s.set_section = [offset](const Rational& x) { return offset + frac(x - offset); };
        s.inject_inverse = [](const Rational& b) -> std::optional<Rational> {
            if (!is_integral(b)) return std::nullopt;
            return b;
        };
        return s;
    }

    /// 0 -> Z/m --n--> Z/mn -> Z/n -> 0.
    static ShortExactCoefficients mod_chain(long m, long n) {
        ShortExactCoefficients s{Kind::ModChain,
                                 "0->Z/" + std::to_string(m) + "->Z/" + std::to_string(m * n) + "->Z/" +
                                     std::to_string(n),
                                 CoefficientSystem::integers_mod(m), CoefficientSystem::integers_mod(m * n),
                                 CoefficientSystem::integers_mod(n)};
        const Integer im(m), in(n);
        s.inject = [in](const Rational& a) { return a * Rational(in); };
        s.surject = [in](const Rational& b) { return Rational(mod_floor(num(b), in)); };
        s.set_section = [in](const Rational& x) { return Rational(mod_floor(num(x), in)); };
        s.inject_inverse = [im, in](const Rational& b) -> std::optional<Rational> {
            if (!is_integral(b)) return std::nullopt;
            Integer v = mod_floor(num(b), im * in);
            if (mod_floor(v, in) != 0) return std::nullopt;
            return Rational(v / in);
        };
        return s;
    }
};

struct ChaseResult {
    Cochain lift;    // over B
    Cochain result;  // over A, one degree up
};

/// Connecting homomorphism on cochains: lift through the section, apply delta, pull back through inject.
inline ChaseResult connecting_chase(const Cochain& z, const ShortExactCoefficients& seq) {
    if (!(z.coefficient() == seq.quot))
        throw InputError("cochain over " + z.coefficient().name() + " does not match quotient " + seq.quot.name() +
                         " of " + seq.name);
    if (auto bad = coboundary(z).first_support()) throw NotCocycleError(*bad);
    Cochain lift = z.map_values(seq.mid, seq.set_section);
    Cochain d = coboundary(lift);
    Cochain result(z.complex_ptr(), z.degree() + 1, seq.sub);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rational& v = d.scalar(i);
        if (v == 0) continue;
        auto a = seq.inject_inverse(v);
        if (!a)
            throw InternalError("coboundary of the lift leaves the image of " + seq.sub.name() + " on " +
                                format_simplex(d.complex().simplices(d.degree())[i]));
        result.set(i, *a);
    }
    if (result.degree() <= result.complex().dimension())
        if (auto bad = coboundary(result).first_support())
            throw InternalError("connecting chase produced a non-cocycle at " + format_simplex(*bad));
    return {std::move(lift), std::move(result)};
}

}  // namespace obstructk
