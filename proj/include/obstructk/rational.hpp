#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "obstructk/errors.hpp"

namespace obstructk {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return den(q) == 1; }

/// Floor division on integers, rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

/// Least nonnegative residue of a modulo n (n > 0).
inline Integer mod_floor(const Integer& a, const Integer& n) {
    Integer r = a % n;
    if (r < 0) r += n;
    return r;
}

inline Integer floor(const Rational& q) { return floor_div(num(q), den(q)); }

/// Representative of q + Z in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
struct Bezout {
    Integer g, s, t;
};
inline Bezout extended_gcd(Integer a, Integer b) {
    Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        Integer q = floor_div(a, b);
        Integer r = a - q * b;
        a = b;
        b = r;
        Integer s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Integer t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (a < 0) return {-a, -s0, -t0};
    return {a, s0, t0};
}

/// Inverse of a modulo n, if it exists.
inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& n) {
    auto b = extended_gcd(mod_floor(a, n), n);
    if (b.g != 1) return std::nullopt;
    return mod_floor(b.s, n);
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "p", "-p", "p/q"; the result is always reduced.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational { throw InputError("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) return fail();
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
    auto slash = text.find('/');
    std::string_view p = text.substr(0, slash);
    if (!valid_int(p)) return fail();
    Integer numer(std::string(strip_plus(p)));
    if (slash == std::string_view::npos) return Rational(numer);
    std::string_view q = text.substr(slash + 1);
    if (!valid_int(q)) return fail();
    Integer denom(std::string(strip_plus(q)));
    if (denom == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(numer, denom);
}

inline std::int64_t to_int64(const Integer& z) {
    if (z > Integer(INT64_MAX) || z < Integer(INT64_MIN)) throw InternalError("integer out of int64 range");
    return z.convert_to<std::int64_t>();
}

}  // namespace obstructk
