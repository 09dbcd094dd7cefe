#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/cochain.hpp"
#include "obstructk/errors.hpp"
#include "obstructk/groups.hpp"
#include "obstructk/rational.hpp"

namespace obstructk {

// Every extension type Z -> K^ -> K below exposes the same members:
//
//   using BaseGroup; using Base = BaseGroup::Element; using Total;
//   const BaseGroup& base() const;
//   Total identity(), mul(Total, Total), inv(Total); bool total_equal(Total, Total);
//   Base project(Total);
//   Total embed(Rational z);                         z in fiber_coefficient()
//   std::optional<Rational> fiber_coordinate(Total); embed^-1, nullopt off the fiber
//   Total section_lift(Base); Total nearest_lift(Total anchor, Base g);
//   CoefficientSystem fiber_coefficient(); std::vector<Rational> fiber_elements() (empty if infinite)
//   std::string name(); std::string total_name(Total).
//
// The fiber is always identified with a cyclic coefficient system (Z/n or Z).

/// Table-based extension with cyclic fiber Z/n.
class FiniteExtension {
  public:
    using BaseGroup = FiniteGroupOps;
    using Base = int;
    using Total = int;

    /// `embed[r]` is the total element of residue r (so embed[0] = e and embed[r] = embed[1]^r);
    /// `section[g]` is the total element chosen over base element g.
    FiniteExtension(std::string name, std::shared_ptr<const FiniteGroup> total, std::shared_ptr<const FiniteGroup> base,
                    std::vector<int> project, std::vector<int> embed, std::vector<int> section)
        : name_(std::move(name)), total_(std::move(total)), base_(std::move(base)), project_(std::move(project)),
          embed_(std::move(embed)), section_(std::move(section)), base_ops_{base_.get()} {
        validate();
    }

    const std::string& name() const { return name_; }
    const FiniteGroup& total_group() const { return *total_; }
    const FiniteGroup& base_group() const { return *base_; }
    const BaseGroup& base() const { return base_ops_; }
    const std::vector<int>& section_table() const { return section_; }
    const std::vector<int>& project_table() const { return project_; }
    const std::vector<int>& embed_table() const { return embed_; }
    int fiber_order() const { return static_cast<int>(embed_.size()); }

    Total identity() const { return total_->identity(); }
    Total mul(Total a, Total b) const { return total_->mul(a, b); }
    Total inv(Total a) const { return total_->inv(a); }
    bool total_equal(Total a, Total b) const { return a == b; }
    Base project(Total a) const { return project_[total_->check(a)]; }

    Total embed(const Rational& z) const {
        if (!is_integral(z)) throw InputError("fiber value " + to_string(z) + " is not an integer residue");
        return embed_[static_cast<std::size_t>(to_int64(mod_floor(num(z), Integer(fiber_order()))))];
    }
    std::optional<Rational> fiber_coordinate(Total a) const {
        auto it = fiber_index_.find(a);
        if (it == fiber_index_.end()) return std::nullopt;
        return Rational(it->second);
    }

    Total section_lift(Base g) const { return section_[base_->check(g)]; }

    /// Locally constant data: the only admissible lift is the anchor itself.
    Total nearest_lift(Total anchor, Base g) const {
        if (project(anchor) != base_->check(g))
            throw DiscontinuousDataError("no lift of " + base_->element_name(g) + " matches anchor " +
                                         total_->element_name(anchor));
        return anchor;
    }

    CoefficientSystem fiber_coefficient() const { return CoefficientSystem::integers_mod(fiber_order()); }
    std::vector<Rational> fiber_elements() const {
        std::vector<Rational> out;
        for (int r = 0; r < fiber_order(); ++r) out.push_back(r);
        return out;
    }
    std::string total_name(Total a) const { return total_->element_name(a); }

  private:
    void validate() {
        const int nt = total_->size(), nb = base_->size();
        auto fail = [&](const std::string& what) { throw InputError("extension '" + name_ + "': " + what); };
        if (static_cast<int>(project_.size()) != nt) fail("projection table has wrong length");
        if (static_cast<int>(section_.size()) != nb) fail("section table has wrong length");
        if (embed_.size() < 2) fail("fiber must have order at least 2");
        for (int p : project_)
            if (p < 0 || p >= nb) fail("projection value out of range");
        for (int s : section_)
            if (s < 0 || s >= nt) fail("section value out of range");
        for (int e : embed_)
            if (e < 0 || e >= nt) fail("embedding value out of range");
        for (int a = 0; a < nt; ++a)
            for (int b = 0; b < nt; ++b)
                if (project_[total_->mul(a, b)] != base_->mul(project_[a], project_[b]))
                    fail("projection is not a homomorphism at (" + total_->element_name(a) + "," +
                         total_->element_name(b) + ")");
        std::vector<bool> hit(nb, false);
        for (int p : project_) hit[p] = true;
        for (int g = 0; g < nb; ++g)
            if (!hit[g]) fail("projection misses " + base_->element_name(g));
        if (embed_[0] != total_->identity()) fail("embedding must send 0 to the identity");
        const int n = fiber_order();
        for (int r = 0; r < n; ++r) {
            if (total_->mul(embed_[r], embed_[1]) != embed_[(r + 1) % n])
                fail("embedding is not a cyclic homomorphism at residue " + std::to_string(r));
            if (!fiber_index_.emplace(embed_[r], r).second) fail("embedding is not injective");
        }
        for (int a = 0; a < nt; ++a) {
            bool in_kernel = project_[a] == base_->identity();
            if (in_kernel != fiber_index_.count(a) > 0)
                fail("kernel of the projection differs from the embedded fiber at " + total_->element_name(a));
        }
        for (int r = 0; r < n; ++r)
            for (int a = 0; a < nt; ++a)
                if (total_->mul(embed_[r], a) != total_->mul(a, embed_[r]))
                    fail("fiber element " + total_->element_name(embed_[r]) + " is not central");
        for (int g = 0; g < nb; ++g)
            if (project_[section_[g]] != g) fail("section does not lift " + base_->element_name(g));
    }

    std::string name_;
    std::shared_ptr<const FiniteGroup> total_, base_;
    std::vector<int> project_, embed_, section_;
    std::map<int, int> fiber_index_;
    FiniteGroupOps base_ops_;
};

/// Z -> Q -> Q/Z. The section picks the lift in [offset, offset + 1).
class CircleExtension {
  public:
    using BaseGroup = CircleGroup;
    using Base = Rational;
    using Total = Rational;

    explicit CircleExtension(Rational offset = 0) : offset_(std::move(offset)) {}

    std::string name() const { return "Z->Q->Q/Z"; }
    const BaseGroup& base() const { return base_; }
    const Rational& offset() const { return offset_; }

    Total identity() const { return 0; }
    Total mul(const Total& a, const Total& b) const { return a + b; }
    Total inv(const Total& a) const { return -a; }
    bool total_equal(const Total& a, const Total& b) const { return a == b; }
    Base project(const Total& a) const { return frac(a); }

    Total embed(const Rational& z) const {
        if (!is_integral(z)) throw InputError("fiber value " + to_string(z) + " is not an integer");
        return z;
    }
    std::optional<Rational> fiber_coordinate(const Total& a) const {
        if (!is_integral(a)) return std::nullopt;
        return a;
    }

    Total section_lift(const Base& g) const { return offset_ + frac(g - offset_); }

    /// The lift g + k closest to `anchor`; a tie at distance exactly 1/2 is an error.
    Total nearest_lift(const Total& anchor, const Base& g) const {
        const Rational d = anchor - g;
        const Rational k = Rational(floor(d + Rational(1, 2)));
        if (k - d == Rational(1, 2) || d - k == Rational(1, 2))
            throw AmbiguousLiftError("lifts of " + to_string(g) + " are equidistant from anchor " + to_string(anchor));
        return g + k;
    }

    CoefficientSystem fiber_coefficient() const { return CoefficientSystem::integers(); }
    std::vector<Rational> fiber_elements() const { return {}; }
    std::string total_name(const Total& a) const { return to_string(a); }

  private:
    Rational offset_;
    CircleGroup base_;
};

/// Z/2 -> SU(2) -> SO(3); the section is the sign-canonical quaternion.
template <class T>
class SpinExtension {
  public:
    using BaseGroup = RotationGroup<T>;
    using Base = Quaternion<T>;
    using Total = Quaternion<T>;
    using P = ScalarPolicy<T>;

    std::string name() const { return "Z/2->SU(2)->SO(3)"; }
    const BaseGroup& base() const { return base_; }

    Total identity() const { return {T(1), T(0), T(0), T(0)}; }
    Total mul(const Total& a, const Total& b) const { return a * b; }
    Total inv(const Total& a) const { return a.conjugate(); }
    bool total_equal(const Total& a, const Total& b) const { return UnitQuaternionGroup<T>{}.equal(a, b); }
    Base project(const Total& a) const { return canonical_sign(a); }

    Total embed(const Rational& z) const {
        if (!is_integral(z)) throw InputError("fiber value " + to_string(z) + " is not a residue mod 2");
        return mod_floor(num(z), Integer(2)) == 0 ? identity() : -identity();
    }
    std::optional<Rational> fiber_coordinate(const Total& a) const {
        if (total_equal(a, identity())) return Rational(0);
        if (total_equal(a, -identity())) return Rational(1);
        return std::nullopt;
    }

    Total section_lift(const Base& g) const {
        UnitQuaternionGroup<T>{}.check(g);
        return canonical_sign(g);
    }

    /// The lift with positive inner product against `anchor`.
    Total nearest_lift(const Total& anchor, const Base& g) const {
        Total s = section_lift(g);
        T ip = dot(s, anchor);
        if (P::is_zero(ip))
            throw AmbiguousLiftError("both lifts of " + quaternion_text(s) + " are orthogonal to anchor " +
                                     quaternion_text(anchor));
        return P::is_positive(ip) ? s : -s;
    }

    CoefficientSystem fiber_coefficient() const { return CoefficientSystem::integers_mod(2); }
    std::vector<Rational> fiber_elements() const { return {0, 1}; }
    std::string total_name(const Total& a) const { return quaternion_text(a); }

  private:
    BaseGroup base_;
};

/// Same extension with the section multiplied by a fiber-valued twist: s'(g) = embed(t(g)) s(g).
template <class Ext>
class TwistedSection {
  public:
    using BaseGroup = typename Ext::BaseGroup;
    using Base = typename Ext::Base;
    using Total = typename Ext::Total;

    TwistedSection(Ext inner, std::function<Rational(const Base&)> twist)
        : inner_(std::move(inner)), twist_(std::move(twist)) {}

    std::string name() const { return inner_.name() + " (twisted section)"; }
    const BaseGroup& base() const { return inner_.base(); }
    const Ext& inner() const { return inner_; }

    Total identity() const { return inner_.identity(); }
    Total mul(const Total& a, const Total& b) const { return inner_.mul(a, b); }
    Total inv(const Total& a) const { return inner_.inv(a); }
    bool total_equal(const Total& a, const Total& b) const { return inner_.total_equal(a, b); }
    Base project(const Total& a) const { return inner_.project(a); }
    Total embed(const Rational& z) const { return inner_.embed(z); }
    std::optional<Rational> fiber_coordinate(const Total& a) const { return inner_.fiber_coordinate(a); }
    Total section_lift(const Base& g) const { return inner_.mul(inner_.embed(twist_(g)), inner_.section_lift(g)); }
    Total nearest_lift(const Total& anchor, const Base& g) const { return inner_.nearest_lift(anchor, g); }
    CoefficientSystem fiber_coefficient() const { return inner_.fiber_coefficient(); }
    std::vector<Rational> fiber_elements() const { return inner_.fiber_elements(); }
    std::string total_name(const Total& a) const { return inner_.total_name(a); }

  private:
    Ext inner_;
    std::function<Rational(const Base&)> twist_;
};

/// Deterministic pseudo-random twist keyed by the element's printed name.
template <class Ext>
std::function<Rational(const typename Ext::Base&)> seeded_twist(const Ext& ext, std::uint64_t seed) {
    auto fiber = ext.fiber_elements();
    return [base = ext.base(), fiber, seed](const typename Ext::Base& g) -> Rational {
        std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
        for (unsigned char c : base.element_name(g)) h = (h ^ c) * 0x100000001b3ULL;
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 29;
        if (fiber.empty()) return Rational(static_cast<long>(h % 7) - 3);
        return fiber[h % fiber.size()];
    };
}

namespace extensions {

inline FiniteExtension q8_over_v4() {
    auto q8 = std::make_shared<const FiniteGroup>(groups::quaternion8());
    auto v4 = std::make_shared<const FiniteGroup>(groups::klein_four());
    std::vector<int> project(8);
    for (int a = 0; a < 8; ++a) project[a] = a / 2;
    return FiniteExtension("Q8/V4", q8, v4, project, {q8->index_of("1"), q8->index_of("-1")},
                           {q8->index_of("1"), q8->index_of("i"), q8->index_of("j"), q8->index_of("k")});
}

/// D4 -> D4/<r^2> = V4 with r -> [i], s -> [j].
inline FiniteExtension d4_over_v4() {
    auto d4 = std::make_shared<const FiniteGroup>(groups::dihedral8());
    auto v4 = std::make_shared<const FiniteGroup>(groups::klein_four());
    std::vector<int> project(8);
    for (int x = 0; x < 8; ++x) project[x] = (x % 4) % 2 + 2 * (x / 4);
    return FiniteExtension("D4/V4", d4, v4, project, {d4->index_of("r0"), d4->index_of("r2")},
                           {d4->index_of("r0"), d4->index_of("r1"), d4->index_of("r0s"), d4->index_of("r1s")});
}

/// Z/4 -> Z/2 with fiber {0, 2}.
inline FiniteExtension z4_over_z2() {
    auto z4 = std::make_shared<const FiniteGroup>(groups::cyclic(4));
    auto z2 = std::make_shared<const FiniteGroup>(groups::cyclic(2));
    return FiniteExtension("Z4/Z2", z4, z2, {0, 1, 0, 1}, {0, 2}, {0, 1});
}

/// Z/n x K -> K with the canonical section g -> (0, g).
inline FiniteExtension split(int n, const FiniteGroup& k) {
    auto zn = groups::cyclic(n);
    auto total = std::make_shared<const FiniteGroup>(groups::direct_product(zn, k));
    auto base = std::make_shared<const FiniteGroup>(k);
    const int nk = k.size();
    std::vector<int> project(total->size()), embed(n), section(nk);
    for (int x = 0; x < total->size(); ++x) project[x] = x % nk;
    for (int r = 0; r < n; ++r) embed[r] = r * nk + k.identity();
    for (int g = 0; g < nk; ++g) section[g] = g;
    return FiniteExtension("Z" + std::to_string(n) + "x" + k.name(), total, base, project, embed, section);
}

}  // namespace extensions

}  // namespace obstructk
