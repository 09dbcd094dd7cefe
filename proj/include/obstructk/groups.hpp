#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/errors.hpp"
#include "obstructk/matrix.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

/// Finite group given by a multiplication table over indices 0..n-1.
class FiniteGroup {
  public:
    FiniteGroup() = default;

    /// Validates closure, identity, inverses and associativity exhaustively.
    FiniteGroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table)
        : name_(std::move(name)), elements_(std::move(elements)), table_(std::move(table)) {
        const int n = static_cast<int>(elements_.size());
        if (n == 0) throw InputError("group '" + name_ + "' has no elements");
        if (static_cast<int>(table_.size()) != n) throw InputError("group '" + name_ + "': table has wrong row count");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n) throw InputError("group '" + name_ + "': table row has wrong length");
            for (int x : row)
                if (x < 0 || x >= n) throw InputError("group '" + name_ + "': table entry out of range");
        }
        for (int i = 0; i < n; ++i) index_[elements_[i]] = i;
        if (static_cast<int>(index_.size()) != n) throw InputError("group '" + name_ + "': duplicate element names");
        identity_ = -1;
        for (int e = 0; e < n && identity_ < 0; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
            if (ok) identity_ = e;
        }
        if (identity_ < 0) throw InputError("group '" + name_ + "': no identity element");
        inverse_.assign(n, -1);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (table_[x][y] == identity_ && table_[y][x] == identity_) inverse_[x] = y;
        for (int x = 0; x < n; ++x)
            if (inverse_[x] < 0) throw InputError("group '" + name_ + "': element " + elements_[x] + " has no inverse");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw InputError("group '" + name_ + "': multiplication is not associative at (" +
                                         elements_[a] + "," + elements_[b] + "," + elements_[c] + ")");
    }

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(elements_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[check(a)][check(b)]; }
    int inv(int a) const { return inverse_[check(a)]; }
    bool equal(int a, int b) const { return a == b; }
    const std::string& element_name(int a) const { return elements_[check(a)]; }
    const std::vector<std::string>& element_names() const { return elements_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    int index_of(const std::string& element) const {
        auto it = index_.find(element);
        if (it == index_.end()) throw InputError("group '" + name_ + "' has no element '" + element + "'");
        return it->second;
    }

    bool is_abelian() const {
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (table_[a][b] != table_[b][a]) return false;
        return true;
    }

    int check(int a) const {
        if (a < 0 || a >= size())
            throw InputError("element index " + std::to_string(a) + " out of range for group '" + name_ + "'");
        return a;
    }

  private:
    std::string name_;
    std::vector<std::string> elements_;
    std::vector<std::vector<int>> table_;
    std::map<std::string, int> index_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

namespace groups {

/// Z/n with elements "0".."n-1".
inline FiniteGroup cyclic(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return FiniteGroup("Z" + std::to_string(n), names, t);
}

/// Quaternion group {1, -1, i, -i, j, -j, k, -k}.
inline FiniteGroup quaternion8() {
    // Element encoded as (sign, unit) with unit in {1, i, j, k}.
    const std::array<std::string, 4> unit = {"1", "i", "j", "k"};
    // unit products: u_a * u_b = sign * u_c
    const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::string> names;
    for (int u = 0; u < 4; ++u) {
        names.push_back(unit[u]);
        names.push_back("-" + unit[u]);
    }
    auto code = [](int u, int s) { return 2 * u + (s < 0 ? 1 : 0); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, ub = b / 2;
            int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sgn[ua][ub];
            t[a][b] = code(prod[ua][ub], s);
        }
    return FiniteGroup("Q8", names, t);
}

/// Klein four-group {1, a, b, c} written as the image of Q8 mod {+-1}: "[1]", "[i]", "[j]", "[k]".
inline FiniteGroup klein_four() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;  // [i]=1, [j]=2, [k]=3
    return FiniteGroup("V4", {"[1]", "[i]", "[j]", "[k]"}, t);
}

/// Dihedral group of order 8: r^a s^b with s r s = r^-1. Element "r^a s^b" named "r<a>" or "r<a>s".
inline FiniteGroup dihedral8() {
    std::vector<std::string> names;
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 4; ++a) names.push_back("r" + std::to_string(a) + (b ? "s" : ""));
    auto code = [](int a, int b) { return b * 4 + ((a % 4) + 4) % 4; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int a1 = x % 4, b1 = x / 4, a2 = y % 4, b2 = y / 4;
            // r^a1 s^b1 r^a2 s^b2 = r^(a1 +- a2) s^(b1+b2)
            int a = b1 ? a1 - a2 : a1 + a2;
            t[x][y] = code(a, (b1 + b2) % 2);
        }
    return FiniteGroup("D4", names, t);
}

/// Direct product A x B, elements named "(a,b)", index = ia * |B| + ib.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.size(), nb = b.size();
    std::vector<std::string> names;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) names.push_back("(" + a.element_name(i) + "," + b.element_name(j) + ")");
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup(a.name() + "x" + b.name(), names, t);
}

inline FiniteGroup by_name(const std::string& name) {
    if (name == "Q8") return quaternion8();
    if (name == "V4") return klein_four();
    if (name == "D4") return dihedral8();
    if (name.size() > 1 && name[0] == 'Z') {
        try {
            int n = std::stoi(name.substr(1));
            if (n >= 1 && n <= 64) return cyclic(n);
        } catch (const std::logic_error&) {
        }
    }
    throw InputError("unknown built-in group '" + name + "'");
}

}  // namespace groups

/// Circle group Q/Z, elements kept in [0, 1).
struct CircleGroup {
    using Element = Rational;
    Element identity() const { return 0; }
    Element mul(const Element& a, const Element& b) const { return frac(a + b); }
    Element inv(const Element& a) const { return frac(-a); }
    bool equal(const Element& a, const Element& b) const { return frac(a) == frac(b); }
    std::string element_name(const Element& a) const { return to_string(a); }
};

/// Quaternion a + b i + c j + d k.
template <class T>
struct Quaternion {
    T a{0}, b{0}, c{0}, d{0};

    friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d, p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
                p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b, p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
    }
    Quaternion conjugate() const { return {a, -b, -c, -d}; }
    Quaternion operator-() const { return {-a, -b, -c, -d}; }
    T norm2() const { return a * a + b * b + c * c + d * d; }
    friend T dot(const Quaternion& p, const Quaternion& q) { return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d; }
    friend bool operator==(const Quaternion& p, const Quaternion& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
    }

    /// Rotation matrix of v -> q v q^-1 (for unit q).
    Matrix<T> rotation_matrix() const {
        Matrix<T> m(3, 3);
        m(0, 0) = a * a + b * b - c * c - d * d;
        m(0, 1) = T(2) * (b * c - a * d);
        m(0, 2) = T(2) * (b * d + a * c);
        m(1, 0) = T(2) * (b * c + a * d);
        m(1, 1) = a * a - b * b + c * c - d * d;
        m(1, 2) = T(2) * (c * d - a * b);
        m(2, 0) = T(2) * (b * d - a * c);
        m(2, 1) = T(2) * (c * d + a * b);
        m(2, 2) = a * a - b * b - c * c + d * d;
        return m;
    }
};

/// Exact versus floating scalar policy for the quaternion backends.
template <class T>
struct ScalarPolicy;

template <>
struct ScalarPolicy<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool is_positive(const Rational& x) { return x > 0; }
    /// Exact square root of a nonnegative rational, if it is a perfect square.
    static std::optional<Rational> sqrt(const Rational& x) {
        if (x < 0) return std::nullopt;
        Integer p = num(x), q = den(x);
        Integer sp = boost::multiprecision::sqrt(p), sq = boost::multiprecision::sqrt(q);
        if (sp * sp != p || sq * sq != q) return std::nullopt;
        return Rational(sp, sq);
    }
};

template <>
struct ScalarPolicy<double> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;
    static bool is_zero(double x) { return std::abs(x) <= tolerance; }
    static bool is_positive(double x) { return x > tolerance; }
    static std::optional<double> sqrt(double x) {
        if (x < -tolerance) return std::nullopt;
        return std::sqrt(std::max(0.0, x));
    }
};

/// Unit quaternions SU(2). Exact mode demands |q|^2 = 1 exactly; floating mode within 1e-9.
template <class T>
struct UnitQuaternionGroup {
    using Element = Quaternion<T>;
    using P = ScalarPolicy<T>;
    Element identity() const { return {T(1), T(0), T(0), T(0)}; }
    Element mul(const Element& p, const Element& q) const { return p * q; }
    Element inv(const Element& p) const { return p.conjugate(); }
    bool equal(const Element& p, const Element& q) const {
        return P::is_zero(p.a - q.a) && P::is_zero(p.b - q.b) && P::is_zero(p.c - q.c) && P::is_zero(p.d - q.d);
    }
    void check(const Element& p) const {
        if (!P::is_zero(p.norm2() - T(1))) throw InputError("quaternion is not a unit quaternion");
    }
    std::string element_name(const Element& p) const;
};

/// Canonical sign of a quaternion up to +-1: first nonzero of (a, b, c, d) positive.
template <class T>
Quaternion<T> canonical_sign(const Quaternion<T>& q) {
    using P = ScalarPolicy<T>;
    for (const T* x : {&q.a, &q.b, &q.c, &q.d}) {
        if (P::is_zero(*x)) continue;
        return P::is_positive(*x) ? q : -q;
    }
    throw InputError("zero quaternion has no rotation");
}

/// SO(3) = SU(2)/{+-1}; elements stored as sign-canonical unit quaternions.
template <class T>
struct RotationGroup {
    using Element = Quaternion<T>;
    using P = ScalarPolicy<T>;
    Element identity() const { return {T(1), T(0), T(0), T(0)}; }
    Element mul(const Element& p, const Element& q) const { return canonical_sign(p * q); }
    Element inv(const Element& p) const { return canonical_sign(p.conjugate()); }
    bool equal(const Element& p, const Element& q) const {
        return UnitQuaternionGroup<T>{}.equal(canonical_sign(p), canonical_sign(q));
    }
    std::string element_name(const Element& p) const;
};

/// Quaternion of a rotation matrix (either sign); nullopt in exact mode when a needed
/// square root is irrational.
template <class T>
std::optional<Quaternion<T>> quaternion_from_rotation(const Matrix<T>& m) {
    using P = ScalarPolicy<T>;
    const T tr = m(0, 0) + m(1, 1) + m(2, 2);
    // Pick the largest of the four diagonal combinations for stability; all are tried in order.
    const T w4 = (T(1) + tr) / T(4);
    const T x4 = (T(1) + m(0, 0) - m(1, 1) - m(2, 2)) / T(4);
    const T y4 = (T(1) - m(0, 0) + m(1, 1) - m(2, 2)) / T(4);
    const T z4 = (T(1) - m(0, 0) - m(1, 1) + m(2, 2)) / T(4);
    Quaternion<T> q;
    if (!P::is_zero(w4) && P::is_positive(w4)) {
        auto w = P::sqrt(w4);
        if (!w) return std::nullopt;
        q.a = *w;
        q.b = (m(2, 1) - m(1, 2)) / (T(4) * *w);
        q.c = (m(0, 2) - m(2, 0)) / (T(4) * *w);
        q.d = (m(1, 0) - m(0, 1)) / (T(4) * *w);
    } else if (P::is_positive(x4)) {
        auto x = P::sqrt(x4);
        if (!x) return std::nullopt;
        q.b = *x;
        q.a = (m(2, 1) - m(1, 2)) / (T(4) * *x);
        q.c = (m(0, 1) + m(1, 0)) / (T(4) * *x);
        q.d = (m(0, 2) + m(2, 0)) / (T(4) * *x);
    } else if (P::is_positive(y4)) {
        auto y = P::sqrt(y4);
        if (!y) return std::nullopt;
        q.c = *y;
        q.a = (m(0, 2) - m(2, 0)) / (T(4) * *y);
        q.b = (m(0, 1) + m(1, 0)) / (T(4) * *y);
        q.d = (m(1, 2) + m(2, 1)) / (T(4) * *y);
    } else {
        auto z = P::sqrt(z4);
        if (!z || P::is_zero(*z)) return std::nullopt;
        q.d = *z;
        q.a = (m(1, 0) - m(0, 1)) / (T(4) * *z);
        q.b = (m(0, 2) + m(2, 0)) / (T(4) * *z);
        q.c = (m(1, 2) + m(2, 1)) / (T(4) * *z);
    }
    return q;
}

template <class T>
std::string quaternion_text(const Quaternion<T>& q) {
    auto s = [](const T& x) {
        if constexpr (std::is_same_v<T, Rational>)
            return to_string(x);
        else
            return std::to_string(x);
    };
    return "(" + s(q.a) + "," + s(q.b) + "," + s(q.c) + "," + s(q.d) + ")";
}

template <class T>
std::string UnitQuaternionGroup<T>::element_name(const Element& p) const {
    return quaternion_text(p);
}
template <class T>
std::string RotationGroup<T>::element_name(const Element& p) const {
    return "[" + quaternion_text(canonical_sign(p)) + "]";
}

/// Adapter giving FiniteGroup the same Element-based interface as the other backends.
struct FiniteGroupOps {
    using Element = int;
    const FiniteGroup* group;
    Element identity() const { return group->identity(); }
    Element mul(Element a, Element b) const { return group->mul(a, b); }
    Element inv(Element a) const { return group->inv(a); }
    bool equal(Element a, Element b) const { return a == b; }
    std::string element_name(Element a) const { return group->element_name(a); }
};

}  // namespace obstructk
