#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/cochain.hpp"
#include "obstructk/cohomology.hpp"
#include "obstructk/errors.hpp"
#include "obstructk/exact_sequence.hpp"

namespace obstructk {

/// (h, alpha, beta, omega): h in degree 2 over the fiber, alpha its lift over Q,
/// beta = delta(alpha) over Q, omega = beta read over Z.
struct DeligneTriple {
    Cochain h;
    Cochain alpha;
    Cochain beta;
    Cochain omega;
    bool degenerate = false;  // discrete fiber: alpha, beta, omega are zero
};

struct ThreeClassReport {
    CohomologyClass integral_class;
    std::optional<Integer> torsion_order;  // nullopt means infinite order
    CohomologyClass rational_class;
    std::optional<Cochain> rational_witness;
};

inline ThreeClassReport rational_image(const Cochain& omega) {
    if (omega.coefficient().kind() != CoefficientSystem::Kind::Integers)
        throw InputError("rational image needs an integral cochain, got " + omega.coefficient().name());
    if (auto bad = coboundary(omega).first_support()) throw NotCocycleError(*bad);
    const int q = omega.degree();
    auto gz = cohomology_group(omega.complex_ptr(), CoefficientSystem::integers(), q);
    auto gq = cohomology_group(omega.complex_ptr(), CoefficientSystem::rationals(), q);
    ThreeClassReport rep{classify_cocycle(omega, gz), std::nullopt,
                         classify_cocycle(omega.reinterpret(CoefficientSystem::rationals()), gq), std::nullopt};
    rep.torsion_order = rep.integral_class.order();
    rep.rational_witness = rep.rational_class.witness;
    if (rep.torsion_order && !rep.rational_class.is_zero())
        throw InternalError("torsion class with nonzero rational image");
    return rep;
}

/// Coordinates of a class in the integral group, in a comparable form.
struct ClassCoordinates {
    std::vector<Rational> free;
    std::vector<Integer> torsion;
    friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

inline ClassCoordinates coordinates_of(const CohomologyClass& c) { return {c.free_coords, c.torsion_coords}; }

struct RouteAgreement {
    ClassCoordinates via_form;   // classify(omega) in degree 3
    ClassCoordinates via_class;  // connecting map applied to the degree-2 class, by linearity on generators
    bool agree() const { return via_form == via_class; }
};

/// Image of [h] under the connecting map, assembled from the images of the group generators.
inline ClassCoordinates connecting_map_on_class(const CohomologyClass& cls, const ShortExactCoefficients& seq) {
    const auto& g2 = *cls.group;
    auto g3 = cohomology_group(g2.complex_ptr(), seq.sub, g2.degree + 1);
    ClassCoordinates acc{std::vector<Rational>(g3->free_rank, Rational(0)),
                         std::vector<Integer>(g3->torsion.size(), Integer(0))};
    // Torsion generators come first; free generators are directions whose multiples lift to
    // cocycles over the middle term, so their connecting images vanish.
    for (std::size_t k = 0; k < cls.torsion_coords.size(); ++k) {
        if (cls.torsion_coords[k] == 0) continue;
        auto img = classify_cocycle(connecting_chase(g2.generators[k], seq).result, g3);
        for (std::size_t j = 0; j < acc.free.size(); ++j) acc.free[j] += Rational(cls.torsion_coords[k]) * img.free_coords[j];
        for (std::size_t j = 0; j < acc.torsion.size(); ++j)
            acc.torsion[j] = mod_floor(acc.torsion[j] + cls.torsion_coords[k] * img.torsion_coords[j], g3->torsion[j]);
    }
    return acc;
}

struct ChaseOutput {
    DeligneTriple triple;
    ThreeClassReport report;
    CohomologyClass class2;
    std::optional<RouteAgreement> routes;  // absent in the degenerate branch
};

/// Chase of the obstruction cocycle. With a discrete fiber (Z or Z/n) pass no sequence:
/// the degree-3 data is zero and the class stays in degree 2.
inline ChaseOutput chase_pipeline(const Cochain& h, const std::optional<ShortExactCoefficients>& seq) {
    if (h.degree() != 2) throw InputError("obstruction cochain must have degree 2");
    const auto kind = h.coefficient().kind();
    const bool discrete =
        kind == CoefficientSystem::Kind::Integers || kind == CoefficientSystem::Kind::IntegersMod;
    auto x = h.complex_ptr();
    auto g2 = cohomology_group(x, h.coefficient(), 2);

    if (discrete) {
        if (seq)
            throw InputError("fiber " + h.coefficient().name() +
                             " is discrete; no exponential sequence applies (omit the sequence)");
        if (auto bad = coboundary(h).first_support()) throw NotCocycleError(*bad);
        DeligneTriple t{h, Cochain(x, 2, CoefficientSystem::rationals()), Cochain(x, 3, CoefficientSystem::rationals()),
                        Cochain(x, 3, CoefficientSystem::integers()), true};
        auto rep = rational_image(t.omega);
        auto c2 = classify_cocycle(h, g2);
        return {std::move(t), std::move(rep), std::move(c2), std::nullopt};
    }

    if (!seq) throw InputError("fiber " + h.coefficient().name() + " needs the sequence 0->Z->Q->Q/Z");
    if (seq->kind != ShortExactCoefficients::Kind::Exponential || !(seq->quot == h.coefficient()))
        throw InputError("sequence " + seq->name + " does not match obstruction coefficients " + h.coefficient().name());

    auto chase = connecting_chase(h, *seq);
    Cochain beta = coboundary(chase.lift);
    Cochain omega = beta.reinterpret(seq->sub);
    if (!(omega == chase.result)) throw InternalError("two readings of delta(alpha) disagree");
    DeligneTriple t{h, std::move(chase.lift), std::move(beta), std::move(omega), false};
    auto rep = rational_image(t.omega);
    auto c2 = classify_cocycle(h, g2);
    RouteAgreement routes{coordinates_of(rep.integral_class), connecting_map_on_class(c2, *seq)};
    return {std::move(t), std::move(rep), std::move(c2), std::move(routes)};
}

struct ConditionResult {
    std::string name;
    bool passed = true;
    std::vector<Simplex> simplices;  // offending simplices
    std::string detail;
};

struct DeligneReport {
    std::vector<ConditionResult> conditions;  // exactly four, in order
    bool valid() const {
        for (const auto& c : conditions)
            if (!c.passed) return false;
        return true;
    }
};

inline DeligneReport deligne_validate(const DeligneTriple& t) {
    DeligneReport rep;
    const auto& x = t.h.complex();
    auto fail = [](ConditionResult& c, const Simplex& s, const std::string& why) {
        c.passed = false;
        c.simplices.push_back(s);
        if (c.detail.empty()) c.detail = why;
    };
    auto shapes_ok = [&](ConditionResult& c) {
        auto check = [&](const Cochain& k, int deg, const char* what) {
            if (k.degree() != deg || !(k.complex() == x)) {
                c.passed = false;
                c.detail = std::string(what) + " has the wrong degree or complex";
                return false;
            }
            return true;
        };
        return check(t.alpha, 2, "alpha") && check(t.beta, 3, "beta") && check(t.omega, 3, "omega");
    };

    ConditionResult c1{"h is a cocycle", true, {}, {}};
    {
        Cochain dh = coboundary(t.h);
        for (std::size_t i = 0; i < dh.size(); ++i)
            if (dh.scalar(i) != 0) fail(c1, x.simplices(3)[i], "delta h is nonzero");
    }

    ConditionResult c2{"alpha lifts h and delta alpha vanishes over the fiber", true, {}, {}};
    ConditionResult c3{"omega equals delta alpha with integral values", true, {}, {}};
    ConditionResult c4{"omega is a cocycle", true, {}, {}};
    if (shapes_ok(c2) && shapes_ok(c3)) {
        if (t.degenerate) {
            for (std::size_t i = 0; i < t.alpha.size(); ++i)
                if (t.alpha.scalar(i) != 0) fail(c2, x.simplices(2)[i], "alpha must vanish for a discrete fiber");
            for (std::size_t i = 0; i < t.beta.size(); ++i) {
                if (t.beta.scalar(i) != 0) fail(c3, x.simplices(3)[i], "beta must vanish for a discrete fiber");
                if (t.omega.scalar(i) != 0) fail(c3, x.simplices(3)[i], "omega must vanish for a discrete fiber");
            }
        } else {
            for (std::size_t i = 0; i < t.alpha.size(); ++i)
                if (t.h.coefficient().normalize(t.alpha.scalar(i)) != t.h.scalar(i))
                    fail(c2, x.simplices(2)[i], "alpha does not reduce to h");
            Cochain da = coboundary(t.alpha);
            for (std::size_t i = 0; i < da.size(); ++i) {
                const auto& s = x.simplices(3)[i];
                if (!is_integral(da.scalar(i))) fail(c2, s, "delta alpha is not in the integer lattice");
                if (t.beta.scalar(i) != da.scalar(i)) fail(c3, s, "beta differs from delta alpha");
                if (!is_integral(t.beta.scalar(i))) fail(c3, s, "beta is not integral");
                if (t.omega.scalar(i) != t.beta.scalar(i)) fail(c3, s, "omega differs from beta");
            }
        }
    }
    if (t.omega.degree() == 3 && t.omega.complex() == x) {
        Cochain dw = coboundary(t.omega);
        for (std::size_t i = 0; i < dw.size(); ++i)
            if (dw.scalar(i) != 0) fail(c4, x.simplices(4)[i], "delta omega is nonzero");
    } else {
        c4.passed = false;
        c4.detail = "omega has the wrong degree or complex";
    }
    rep.conditions = {c1, c2, c3, c4};
    return rep;
}

}  // namespace obstructk
