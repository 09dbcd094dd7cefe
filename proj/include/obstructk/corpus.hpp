#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/cech.hpp"
#include "obstructk/cohomology.hpp"
#include "obstructk/deligne.hpp"
#include "obstructk/exact_sequence.hpp"
#include "obstructk/extensions.hpp"
#include "obstructk/io.hpp"
#include "obstructk/lie.hpp"
#include "obstructk/oracles.hpp"
#include "obstructk/spaces.hpp"

namespace obstructk::corpus {

using json = nlohmann::json;

inline constexpr const char* conventions_version = "1";

/// Choice conventions every report is computed under.
inline json conventions() {
    return {{"version", conventions_version},
            {"orientation", "simplices ascending; face i carries sign (-1)^i"},
            {"cover", "open vertex stars; nerve equals the complex"},
            {"sample_sites", "U_ij sampled at the simplices containing edge ij"},
            {"spanning_tree", "breadth-first from the edge simplex itself, sites in ascending order"},
            {"section_tables",
             {{"Q8/V4", "[1]->1 [i]->i [j]->j [k]->k"},
              {"D4/V4", "[1]->r0 [i]->r1 [j]->r0s [k]->r1s"},
              {"Z4/Z2", "0->0 1->1"},
              {"split", "g->(0,g)"},
              {"Q/Z", "representative in [0,1)"},
              {"SO3", "quaternion with first nonzero component positive"}}},
            {"h_storage", "i<j<k, h = fiber(lift_ij lift_jk lift_ik^-1)"},
            {"cohomology_generators", "torsion generators first, then free"}};
}

// ---------------------------------------------------------------- reports

struct Check {
    std::string quantity;
    std::string expected;
    std::string computed;
    std::string provenance;  // where the expected value comes from
    std::string oracle;      // in-repo function that recomputes or certifies it
    bool passed = false;
};

struct EntryReport {
    std::string name;
    std::string kind;
    bool passed = true;
    std::vector<Check> checks;
    std::string error;
    int error_code = 0;  // 2 input error, 3 internal invariant violation
    double millis = 0;
    json details = json::object();

    void expect(std::string quantity, std::string expected, std::string computed, std::string provenance,
                std::string oracle) {
        Check c{std::move(quantity), std::move(expected), std::move(computed), std::move(provenance), std::move(oracle)};
        c.passed = c.expected == c.computed;
        passed = passed && c.passed;
        checks.push_back(std::move(c));
    }
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }
inline std::string order_text(const std::optional<Integer>& o) { return o ? o->str() : "infinite"; }

struct RunReport {
    std::vector<EntryReport> entries;

    bool passed() const {
        return std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.passed; });
    }
    /// 0 all pass, 1 mismatch, 2 input error, 3 internal error (highest wins).
    int exit_code() const {
        int code = 0;
        for (const auto& e : entries) {
            if (e.error_code) code = std::max(code, e.error_code);
            else if (!e.passed) code = std::max(code, 1);
        }
        return code;
    }

    json to_json(bool with_timing = true) const {
        json es = json::array();
        std::size_t ok = 0;
        for (const auto& e : entries) {
            json checks = json::array();
            for (const auto& c : e.checks)
                checks.push_back({{"quantity", c.quantity},
                                  {"expected", c.expected},
                                  {"computed", c.computed},
                                  {"provenance", c.provenance},
                                  {"oracle", c.oracle},
                                  {"passed", c.passed}});
            json j{{"name", e.name}, {"kind", e.kind}, {"passed", e.passed}, {"checks", checks}, {"details", e.details}};
            if (!e.error.empty()) j["error"] = e.error;
            if (with_timing) j["millis"] = e.millis;
            es.push_back(j);
            ok += e.passed ? 1 : 0;
        }
        return {{"conventions", conventions()},
                {"entries", es},
                {"passed", passed()},
                {"summary", {{"total", entries.size()}, {"passed", ok}, {"failed", entries.size() - ok}}}};
    }

    std::string to_text() const {
        std::string out;
        std::size_t ok = 0;
        for (const auto& e : entries) {
            out += (e.passed ? "PASS " : "FAIL ") + e.name + " [" + e.kind + "]\n";
            for (const auto& c : e.checks)
                if (!c.passed)
                    out += "  - " + c.quantity + ": expected " + c.expected + ", computed " + c.computed + "\n";
            if (!e.error.empty()) out += "  ! " + e.error + "\n";
            ok += e.passed ? 1 : 0;
        }
        out += std::to_string(ok) + "/" + std::to_string(entries.size()) + " entries passed\n";
        return out;
    }
};

// ---------------------------------------------------------------- construction helpers

/// Pullback of a cochain along a vertex map; simplices that collapse get 0.
inline Cochain pullback(const Cochain& c, const ComplexPtr& target, const std::function<int(int)>& f) {
    Cochain out(target, c.degree(), c.coefficient());
    const auto& sx = target->simplices(c.degree());
    for (std::size_t i = 0; i < sx.size(); ++i) {
        Simplex img;
        for (int v : sx[i]) img.push_back(f(v));
        int sign = 1;
        for (std::size_t a = 0; a < img.size(); ++a)
            for (std::size_t b = a + 1; b < img.size(); ++b) {
                if (img[a] == img[b]) sign = 0;
                if (img[a] > img[b]) sign = -sign;
            }
        if (sign == 0) continue;
        std::sort(img.begin(), img.end());
        out.set(i, Rational(sign) * c[img]);
    }
    return out;
}

struct Spaces {
    ComplexPtr point, triangle, circle, octahedron, torus, rp2, rp2xs1, s3;
};

inline const Spaces& shared_spaces() {
    static const Spaces s{share(spaces::point()),      share(spaces::triangle()), share(spaces::circle()),
                          share(spaces::octahedron()), share(spaces::torus()),    share(spaces::projective_plane()),
                          share(spaces::projective_plane_times_circle()), share(spaces::three_sphere())};
    return s;
}

/// Degree-one generators over Z/2 used by the bundle instances.
struct Z2Classes {
    Cochain torus_a, torus_b;  // H^1(T^2; Z/2) generators
    Cochain rp2_w;             // H^1(RP^2; Z/2) generator
    Cochain prod_w, prod_t;    // pulled back from RP^2 and from S^1
};

inline const Z2Classes& z2_classes() {
    static const Z2Classes c = [] {
        const auto& s = shared_spaces();
        const auto z2 = CoefficientSystem::integers_mod(2);
        auto t1 = cohomology_group(s.torus, z2, 1);
        auto p1 = cohomology_group(s.rp2, z2, 1);
        auto c1 = cohomology_group(s.circle, z2, 1);
        const int ny = static_cast<int>(s.circle->vertices().size());
        const auto& xv = s.rp2->vertices();
        const auto& yv = s.circle->vertices();
        auto w = pullback(p1->generators.at(0), s.rp2xs1, [&](int v) { return xv[static_cast<std::size_t>(v / ny)]; });
        auto t = pullback(c1->generators.at(0), s.rp2xs1, [&](int v) { return yv[static_cast<std::size_t>(v % ny)]; });
        return Z2Classes{t1->generators.at(0), t1->generators.at(1), p1->generators.at(0), w, t};
    }();
    return c;
}

/// Constant V4 transitions a -> [i], b -> [j] from two Z/2 one-cocycles (either may be null).
inline TransitionData<FiniteGroupOps> v4_transitions(const ComplexPtr& x, const FiniteExtension& ext, const Cochain* a,
                                                      const Cochain* b) {
    TransitionData<FiniteGroupOps> t{x, ext.base()};
    const auto& edges = x->simplices(1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        long v = (a ? to_int64(num(a->scalar(e))) : 0) + 2 * (b ? to_int64(num(b->scalar(e))) : 0);
        t.constant[{edges[e][0], edges[e][1]}] = static_cast<int>(v);
    }
    return t;
}

// ---------------------------------------------------------------- instances

template <class Ext>
struct BundleInstance {
    std::string name;
    std::string description;
    Ext ext;
    TransitionData<typename Ext::BaseGroup> transitions;
    bool expect_zero = false;
    std::string provenance;
    std::optional<Integer> expect_order;  // nullopt with expect_zero false: infinite order
};

using FiniteBundle = BundleInstance<FiniteExtension>;
using CircleBundle = BundleInstance<CircleExtension>;
using SpinBundle = BundleInstance<SpinExtension<Rational>>;

template <class T>
using Builder = std::pair<std::string, std::function<T()>>;

inline std::vector<Builder<FiniteBundle>> finite_bundle_builders() {
    const auto& s = shared_spaces();
    std::vector<Builder<FiniteBundle>> out;
    out.push_back({"trivial-bundle-any", [s] {
                       auto ext = extensions::q8_over_v4();
                       auto t = v4_transitions(s.torus, ext, nullptr, nullptr);
                       return FiniteBundle{"trivial-bundle-any", "identity transitions on T^2 under Q8 -> V4", ext, t,
                                           true, "[TRIVIAL: identity transitions lift to identity]", Integer(1)};
                   }});
    out.push_back({"q8-v4-torus", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto t = v4_transitions(s.torus, ext, &z.torus_a, &z.torus_b);
                       return FiniteBundle{"q8-v4-torus", "flat V4-bundle on T^2, a -> [i], b -> [j], lifted to Q8", ext,
                                           t, false,
                                           "[DERIVED: lifts i, j of commuting holonomies anticommute; exhaustive lift search]",
                                           Integer(2)};
                   }});
    out.push_back({"q8-v4-torus-b-trivial", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto t = v4_transitions(s.torus, ext, &z.torus_a, nullptr);
                       return FiniteBundle{"q8-v4-torus-b-trivial", "flat V4-bundle on T^2, a -> [i], b -> [1]", ext, t,
                                           true, "[DERIVED: holonomy lifts to the cyclic group <i>; exhaustive lift search]",
                                           Integer(1)};
                   }});
    out.push_back({"d4-v4-torus", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::d4_over_v4();
                       auto t = v4_transitions(s.torus, ext, &z.torus_a, &z.torus_b);
                       return FiniteBundle{"d4-v4-torus", "flat V4-bundle on T^2, a -> [i], b -> [j], lifted to D4", ext,
                                           t, false,
                                           "[DERIVED: lifts r, s have commutator r^2 != 1; exhaustive lift search]",
                                           Integer(2)};
                   }});
    out.push_back({"d4-v4-rp2-reflection", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::d4_over_v4();
                       auto t = v4_transitions(s.rp2, ext, nullptr, &z.rp2_w);
                       return FiniteBundle{"d4-v4-rp2-reflection", "flat V4-bundle on RP^2 with holonomy [j], lifted to D4",
                                           ext, t, true,
                                           "[DERIVED: the lift s of [j] has order 2; exhaustive lift search]", Integer(1)};
                   }});
    out.push_back({"q8-v4-rp2", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto t = v4_transitions(s.rp2, ext, &z.rp2_w, nullptr);
                       return FiniteBundle{"q8-v4-rp2", "flat V4-bundle on RP^2 with holonomy [i], lifted to Q8", ext, t,
                                           false, "[DERIVED: every lift of [i] has order 4; exhaustive lift search]",
                                           Integer(2)};
                   }});
    out.push_back({"z4-z2-rp2", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::z4_over_z2();
                       TransitionData<FiniteGroupOps> t{s.rp2, ext.base()};
                       const auto& edges = s.rp2->simplices(1);
                       for (std::size_t e = 0; e < edges.size(); ++e)
                           t.constant[{edges[e][0], edges[e][1]}] = static_cast<int>(to_int64(num(z.rp2_w.scalar(e))));
                       return FiniteBundle{"z4-z2-rp2", "orientation double cover of RP^2 lifted along Z4 -> Z2", ext, t,
                                           false, "[DERIVED: Bockstein of w1 is w1^2 != 0; exhaustive lift search]",
                                           Integer(2)};
                   }});
    out.push_back({"split-v4-torus", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::split(2, groups::klein_four());
                       auto t = v4_transitions(s.torus, ext, &z.torus_a, &z.torus_b);
                       return FiniteBundle{"split-v4-torus", "flat V4-bundle on T^2 lifted to Z2 x V4", ext, t, true,
                                           "[TRIVIAL: split extension, the section is a homomorphism]", Integer(1)};
                   }});
    out.push_back({"q8-v4-rp2xs1", [s] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto t = v4_transitions(s.rp2xs1, ext, &z.prod_w, &z.prod_t);
                       return FiniteBundle{"q8-v4-rp2xs1",
                                           "flat V4-bundle on RP^2 x S^1, w -> [i], t -> [j], lifted to Q8", ext, t, false,
                                           "[DERIVED: pulled-back extension class w^2 + wt is nonzero by Kunneth]",
                                           Integer(2)};
                   }});
    return out;
}

inline Quaternion<Rational> rotation_x_pi() { return {0, 1, 0, 0}; }
inline Quaternion<Rational> rotation_y_pi() { return {0, 0, 1, 0}; }

/// Constant SO(3) transitions qa^a(e) qb^b(e); the exponent cochains may be integral or mod 2.
inline TransitionData<RotationGroup<Rational>> so3_transitions(const ComplexPtr& x, const Cochain* a,
                                                                const Quaternion<Rational>& qa, const Cochain* b,
                                                                const Quaternion<Rational>& qb) {
    RotationGroup<Rational> g;
    TransitionData<RotationGroup<Rational>> t{x, g};
    auto power = [&](Quaternion<Rational> q, long k) {
        if (k < 0) {
            q = g.inv(q);
            k = -k;
        }
        auto v = g.identity();
        for (long i = 0; i < k; ++i) v = g.mul(v, q);
        return v;
    };
    const auto& edges = x->simplices(1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto v = g.identity();
        if (a) v = g.mul(v, power(qa, to_int64(num(a->scalar(e)))));
        if (b) v = g.mul(v, power(qb, to_int64(num(b->scalar(e)))));
        t.constant[{edges[e][0], edges[e][1]}] = v;
    }
    return t;
}

inline std::vector<Builder<SpinBundle>> spin_bundle_builders() {
    const auto& s = shared_spaces();
    std::vector<Builder<SpinBundle>> out;
    out.push_back({"spin-rp2", [s] {
                       const auto& z = z2_classes();
                       auto t = so3_transitions(s.rp2, &z.rp2_w, rotation_x_pi(), nullptr, rotation_x_pi());
                       return SpinBundle{"spin-rp2", "flat SO(3)-bundle on RP^2 with holonomy Rx(pi), lifted to SU(2)",
                                         SpinExtension<Rational>{}, t, false,
                                         "[DERIVED: the lifts +-i of Rx(pi) square to -1; exhaustive lift search]",
                                         Integer(2)};
                   }});
    out.push_back({"spin-torus", [s] {
                       const auto& z = z2_classes();
                       auto t = so3_transitions(s.torus, &z.torus_a, rotation_x_pi(), &z.torus_b, rotation_y_pi());
                       return SpinBundle{"spin-torus", "flat SO(3)-bundle on T^2, a -> Rx(pi), b -> Ry(pi)",
                                         SpinExtension<Rational>{}, t, false,
                                         "[DERIVED: lifts i, j anticommute; exhaustive lift search]", Integer(2)};
                   }});
    out.push_back({"spin-torus-coaxial", [s] {
                       auto h1 = cohomology_group(s.torus, CoefficientSystem::integers(), 1);
                       Quaternion<Rational> r{Rational(3, 5), Rational(4, 5), 0, 0};
                       auto t = so3_transitions(s.torus, &h1->generators.at(0), rotation_x_pi(), &h1->generators.at(1), r);
                       return SpinBundle{"spin-torus-coaxial",
                                         "flat SO(3)-bundle on T^2 with two rotations about the x axis",
                                         SpinExtension<Rational>{}, t, true,
                                         "[DERIVED: rotations about one axis lift to a commuting pair; exhaustive lift search]",
                                         Integer(1)};
                   }});
    return out;
}

/// Circle bundle on the octahedron with winding number one around the equator.
/// g_{N e_m}(site) = -theta(site), theta(edge N e_m) = m/4, theta(triangle N e_m e_{m+1}) = m/4 + 1/8.
inline TransitionData<CircleGroup> winding_transitions(const ComplexPtr& x) {
    TransitionData<CircleGroup> t{x, CircleGroup{}, TransitionMode::VertexSampled};
    auto theta_triangle = [](const Simplex& tri) -> Rational {
        for (int m = 0; m < 4; ++m) {
            Simplex s{0, m + 1, (m + 1) % 4 + 1};
            std::sort(s.begin(), s.end());
            if (s == tri) return Rational(m, 4) + Rational(1, 8);
        }
        throw InternalError("triangle does not contain the north pole");
    };
    for (const auto& e : x->simplices(1)) {
        auto& m = t.sampled[{e[0], e[1]}];
        for (const auto& site : t.sites(e[0], e[1])) {
            Rational v = 0;
            if (e[0] == 0) {
                Rational theta = site.size() == 2 ? Rational(e[1] - 1, 4) : theta_triangle(site);
                v = frac(-theta);
            }
            m[site] = v;
        }
    }
    return t;
}

inline std::vector<Builder<CircleBundle>> circle_bundle_builders() {
    const auto& s = shared_spaces();
    std::vector<Builder<CircleBundle>> out;
    out.push_back({"circle-octahedron-winding", [s] {
                       return CircleBundle{"circle-octahedron-winding",
                                           "sampled circle bundle on S^2 winding once around the equator",
                                           CircleExtension{}, winding_transitions(s.octahedron), false,
                                           "[DERIVED: Chern number +-1 by pairing with the fundamental cycle]",
                                           std::nullopt};
                   }});
    out.push_back({"circle-flat-torus", [s] {
                       auto h1 = cohomology_group(s.torus, CoefficientSystem::integers(), 1);
                       const auto &a = h1->generators.at(0), &b = h1->generators.at(1);
                       TransitionData<CircleGroup> t{s.torus, CircleGroup{}};
                       const auto& edges = s.torus->simplices(1);
                       for (std::size_t e = 0; e < edges.size(); ++e)
                           t.constant[{edges[e][0], edges[e][1]}] =
                               frac(a.scalar(e) * Rational(1, 3) + b.scalar(e) * Rational(2, 5));
                       return CircleBundle{"circle-flat-torus", "flat circle bundle on T^2 with holonomies 1/3, 2/5",
                                           CircleExtension{}, t, true,
                                           "[DERIVED: a flat class is torsion and H^2(T^2;Z) = Z is torsion-free]",
                                           Integer(1)};
                   }});
    out.push_back({"circle-flat-rp2", [s] {
                       const auto& z = z2_classes();
                       TransitionData<CircleGroup> t{s.rp2, CircleGroup{}};
                       const auto& edges = s.rp2->simplices(1);
                       for (std::size_t e = 0; e < edges.size(); ++e)
                           t.constant[{edges[e][0], edges[e][1]}] = z.rp2_w.scalar(e) / 2;
                       return CircleBundle{"circle-flat-rp2", "flat circle bundle on RP^2 with holonomy 1/2",
                                           CircleExtension{}, t, false,
                                           "[DERIVED: Bockstein of the generator of H^1(RP^2;Z/2) generates H^2(RP^2;Z) = Z/2]",
                                           Integer(2)};
                   }});
    return out;
}

/// Degree-2 cocycle over Q/Z fed directly to the chase.
struct GerbeInstance {
    std::string name;
    std::string description;
    Cochain h;
    bool expect_zero = false;
    Integer expect_class_order = 1;  // order of [h] in H^2(X; Q/Z)
    Integer expect_omega_order = 1;  // order of the degree-3 integral class
    std::string provenance;
};

inline std::vector<Builder<GerbeInstance>> gerbe_builders() {
    const auto& s = shared_spaces();
    const auto qz = CoefficientSystem::rationals_mod_integers();
    std::vector<Builder<GerbeInstance>> out;
    out.push_back({"rp2xs1-torsion-gerbe", [s, qz] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto obs = compute_obstruction(v4_transitions(s.rp2xs1, ext, &z.prod_w, &z.prod_t), ext);
                       auto h = obs.h.map_values(qz, [](const Rational& r) { return r / 2; });
                       return GerbeInstance{"rp2xs1-torsion-gerbe",
                                            "Q8/V4 obstruction on RP^2 x S^1 pushed into Q/Z by r -> r/2", h, false,
                                            Integer(2), Integer(2),
                                            "[DERIVED: Bockstein of w^2 + wt is beta(w) t, the Z/2 of H^3(RP^2 x S^1; Z)]"};
                   }});
    out.push_back({"torus-exact-gerbe", [s, qz] {
                       Cochain l(s.torus, 1, qz);
                       for (std::size_t e = 0; e < l.size(); ++e) l.set(e, Rational(static_cast<long>((5 * e + 1) % 6), 6));
                       return GerbeInstance{"torus-exact-gerbe", "h = delta(l) for a Q/Z one-cochain l on T^2",
                                            coboundary(l), true, Integer(1), Integer(1),
                                            "[TRIVIAL: chase of a coboundary]"};
                   }});
    out.push_back({"torus-free-gerbe", [s, qz] {
                       auto h2 = cohomology_group(s.torus, CoefficientSystem::integers(), 2);
                       auto h = h2->generators.at(0).map_values(qz, [](const Rational& r) { return r / 3; });
                       return GerbeInstance{"torus-free-gerbe", "one third of the integral generator of H^2(T^2; Z)", h,
                                            false, Integer(3), Integer(1),
                                            "[DERIVED: pairing 1/3 with the fundamental cycle; H^3(T^2; Z) = 0]"};
                   }});
    out.push_back({"rp2-qz-zero", [s, qz] {
                       const auto& z = z2_classes();
                       auto ext = extensions::q8_over_v4();
                       auto obs = compute_obstruction(v4_transitions(s.rp2, ext, &z.rp2_w, nullptr), ext);
                       auto h = obs.h.map_values(qz, [](const Rational& r) { return r / 2; });
                       return GerbeInstance{"rp2-qz-zero", "w^2 on RP^2 pushed into Q/Z by r -> r/2", h, true, Integer(1),
                                            Integer(1),
                                            "[DERIVED: universal coefficients give H^2(RP^2; Q/Z) = 0]"};
                   }});
    return out;
}

struct XModInstance {
    std::string name;
    std::string description;
    CrossedModuleLie cm;
    bool expect_zero = true;
    std::size_t expect_dim_v = 0;
    std::size_t expect_dim_g = 0;
    std::string provenance;
};

inline std::vector<Builder<XModInstance>> xmod_builders() {
    std::vector<Builder<XModInstance>> out;
    out.push_back({"xmod-ad-heis3", [] {
                       return XModInstance{"xmod-ad-heis3", "ad: heis3 -> der(heis3)", xmod::adjoint(lie::heisenberg()),
                                           true, 1, 4,
                                           "[DERIVED: der(heis3) = gl2 + ad(heis3) splits, so heis3 x| gl2 realizes it]"};
                   }});
    out.push_back({"xmod-id-sl2", [] {
                       return XModInstance{"xmod-id-sl2", "identity crossed module of sl2", xmod::identity(lie::sl2()),
                                           true, 0, 0, "[TRIVIAL: kernel and cokernel vanish]"};
                   }});
    out.push_back({"xmod-split-extension", [] {
                       auto E = lie::heisenberg();
                       std::vector<RationalMatrix> rho(3, RationalMatrix(1, 1));
                       auto cm = xmod::from_extension(E, {{0, 0, 1}}, rho, 1, "ext(heis3,z)");
                       return XModInstance{"xmod-split-extension", "Q + <z> -> heis3 built from the ideal <z>", cm, true, 1,
                                           2, "[TRIVIAL: crossed module built from an extension]"};
                   }});
    out.push_back({"xmod-abelian-sl2", [] {
                       // sl2 basis (h, e, f) acting on Q^2 by the standard representation; mu = 0.
                       RationalMatrix h(2, 2), e(2, 2), f(2, 2);
                       h(0, 0) = 1;
                       h(1, 1) = -1;
                       e(0, 1) = 1;
                       f(1, 0) = 1;
                       CrossedModuleLie cm{"std(sl2)", lie::abelian(2), lie::sl2(), RationalMatrix(3, 2), {h, e, f}};
                       return XModInstance{"xmod-abelian-sl2", "Q^2 -> sl2 with mu = 0 and the standard action", cm,
                                           true, 2, 3, "[TRIVIAL: realized by the semidirect product Q^2 x| sl2]"};
                   }});
    return out;
}

struct SpaceInstance {
    std::string name;
    ComplexPtr complex;
    // (coefficient, degree, expected description, provenance) stated independently of any oracle
    std::vector<std::tuple<std::string, int, std::string, std::string>> named;
};

inline std::vector<SpaceInstance> space_instances() {
    const auto& s = shared_spaces();
    return {
        {"point", s.point, {{"Z", 0, "Z", "[TRIVIAL]"}}},
        {"triangle", s.triangle, {{"Z", 0, "Z", "[TRIVIAL: contractible]"}, {"Z", 1, "0", "[TRIVIAL: contractible]"}}},
        {"circle", s.circle, {{"Z", 1, "Z", "[TRIVIAL]"}}},
        {"octahedron", s.octahedron, {{"Z", 2, "Z", "[TRIVIAL: octahedron is S^2]"}, {"Z", 1, "0", "[TRIVIAL]"}}},
        {"torus",
         s.torus,
         {{"Z", 1, "Z^2", "[TRIVIAL]"}, {"Z", 2, "Z", "[TRIVIAL]"}, {"Z/2", 1, "Z/2 + Z/2", "[TRIVIAL]"}}},
        {"rp2",
         s.rp2,
         {{"Z", 2, "Z/2", "[DERIVED: H_1(RP^2) = Z/2 gives Ext(Z/2, Z)]"},
          {"Z", 1, "0", "[TRIVIAL]"},
          {"Z/2", 2, "Z/2", "[TRIVIAL]"},
          {"Q", 2, "0", "[TRIVIAL]"}}},
        {"rp2xs1",
         s.rp2xs1,
         {{"Z", 3, "Z/2", "[DERIVED: Kunneth, H^2(RP^2) (x) H^1(S^1)]"},
          {"Z", 1, "Z", "[DERIVED: Kunneth]"},
          {"Z/2", 2, "Z/2 + Z/2", "[DERIVED: Kunneth over Z/2]"}}},
        {"s3", s.s3, {{"Z", 3, "Z", "[TRIVIAL: boundary of the 4-simplex]"}, {"Z", 2, "0", "[TRIVIAL]"}}},
    };
}

// ---------------------------------------------------------------- entry runners

inline json class_summary(const CohomologyClass& c) {
    return {{"group", c.group->describe()},
            {"free_coords", io::rat_list(c.free_coords)},
            {"torsion_coords", io::int_list(c.torsion_coords)},
            {"zero", c.is_zero()},
            {"order", order_text(c.order())}};
}

inline std::optional<Integer> oracle_order(const Cochain& z, long limit = 12) {
    auto k = oracles::order_by_search(z, limit);
    if (!k) return std::nullopt;
    return Integer(*k);
}

inline void run_space(const SpaceInstance& sp, EntryReport& r) {
    const auto& x = *sp.complex;
    json table = json::object();
    for (const auto& coeff : {CoefficientSystem::integers(), CoefficientSystem::integers_mod(2),
                              CoefficientSystem::rationals(), CoefficientSystem::rationals_mod_integers()}) {
        for (int q = 0; q <= x.dimension() + 1; ++q) {
            auto g = cohomology_group(sp.complex, coeff, q);
            auto oracle = oracles::uct_cohomology(x, coeff, q).describe(coeff.name());
            r.expect("H^" + std::to_string(q) + "(" + coeff.name() + ")", oracle, g->describe(),
                     "[DERIVED: universal coefficients from SNF of the boundary matrices]", "oracles::uct_cohomology");
            table[coeff.name()].push_back(g->describe());
            // Every generator is a cocycle whose class is the matching unit vector.
            bool gens_ok = true;
            for (std::size_t k = 0; k < g->generators.size() && gens_ok; ++k) {
                if (coeff.kind() == CoefficientSystem::Kind::RationalsModIntegers && k >= g->torsion.size()) continue;
                auto c = classify_cocycle(g->generators[k], g);
                for (std::size_t j = 0; j < c.torsion_coords.size(); ++j)
                    gens_ok = gens_ok && c.torsion_coords[j] == (j == k ? 1 : 0);
                for (std::size_t j = 0; j < c.free_coords.size(); ++j)
                    gens_ok = gens_ok && c.free_coords[j] == (j + g->torsion.size() == k ? 1 : 0);
            }
            if (!gens_ok)
                r.expect("generators of H^" + std::to_string(q) + "(" + coeff.name() + ")", "unit coordinates",
                         "mismatch", "[TRIVIAL: generator contract]", "classify_cocycle");
        }
    }
    for (const auto& [cname, q, expected, prov] : sp.named) {
        auto coeff = CoefficientSystem::parse(cname);
        r.expect("named H^" + std::to_string(q) + "(" + cname + ")", expected,
                 cohomology_group(sp.complex, coeff, q)->describe(), prov, "oracles::uct_cohomology");
    }
    r.details["cohomology"] = table;
    r.details["pseudomanifold"] = x.is_pseudomanifold();
}

template <class Ext>
void run_bundle(const BundleInstance<Ext>& b, EntryReport& r) {
    const auto& x = *b.transitions.complex;
    auto rep = validate_transition(b.transitions);
    r.expect("transition data valid", "true", yes_no(rep.valid()), "[TRIVIAL: built from cocycles]",
             "validate_transition");
    auto obs = compute_obstruction(b.transitions, b.ext);
    const auto coeff = b.ext.fiber_coefficient();
    r.expect("H^2 group", oracles::uct_cohomology(x, coeff, 2).describe(coeff.name()), obs.group->describe(),
             "[DERIVED: universal coefficients]", "oracles::uct_cohomology");
    r.expect("class2 zero", yes_no(b.expect_zero), yes_no(obs.class2.is_zero()), b.provenance, "classify_cocycle");
    auto w = oracles::coboundary_witness(obs.h);
    r.expect("class2 zero by direct solve", yes_no(b.expect_zero), yes_no(w.has_value()), b.provenance,
             "oracles::coboundary_witness");
    if (obs.class2.witness)
        r.expect("engine witness reproduces h", "true", yes_no(coboundary(*obs.class2.witness) == obs.h),
                 "[TRIVIAL: witness contract]", "coboundary");
    r.expect("class2 order", order_text(b.expect_order), order_text(obs.class2.order()), b.provenance,
             "CohomologyClass::order");
    r.expect("class2 order by direct solve", order_text(b.expect_order), order_text(oracle_order(obs.h)), b.provenance,
             "oracles::order_by_search (k <= 12)");

    if (!b.ext.fiber_elements().empty()) {
        auto ls = brute_force_lift_search(b.transitions, b.ext);
        if (ls.status != LiftSearchStatus::Truncated)
            r.expect("lift exists", yes_no(b.expect_zero), yes_no(ls.found()), b.provenance,
                     "brute_force_lift_search");
        r.details["lift_search"] = {{"status", status_name(ls.status)},
                                    {"nodes_visited", ls.nodes_visited},
                                    {"search_space", to_string(ls.search_space)}};
    }

    auto chase = chase_pipeline(obs.h, std::nullopt);
    r.expect("degenerate branch", "true", yes_no(chase.triple.degenerate), "[TRIVIAL: discrete fiber]",
             "chase_pipeline");
    r.expect("deligne triple valid", "true", yes_no(deligne_validate(chase.triple).valid()),
             "[TRIVIAL: pipeline postcondition]", "deligne_validate");
    r.expect("rational image zero", "true", yes_no(chase.report.rational_class.is_zero()),
             "[DERIVED: finite image, rational class vanishes]", "rational_image");

    // The Bockstein into integral degree-3 cohomology for fiber Z/2.
    if (coeff == CoefficientSystem::integers_mod(2)) {
        auto bock = connecting_chase(obs.h, ShortExactCoefficients::multiplication(2));
        auto g3 = cohomology_group(obs.h.complex_ptr(), CoefficientSystem::integers(), 3);
        auto c3 = classify_cocycle(bock.result, g3);
        auto twice = oracles::coboundary_witness(Integer(2) * bock.result);
        r.expect("Bockstein killed by 2", "true", yes_no(twice && coboundary(*twice) == Integer(2) * bock.result),
                 "[DERIVED: image of 0 -> Z -> Z -> Z/2 -> 0 is 2-torsion]", "oracles::coboundary_witness");
        r.details["bockstein"] = class_summary(c3);
    }

    if (b.name == "circle-octahedron-winding") {
        auto p = oracles::fundamental_pairing(obs.h);
        r.expect("|Chern number|", "1", p ? to_string(Rational(abs(*p))) : "undefined", b.provenance,
                 "oracles::fundamental_pairing");
        r.expect("|free coordinate|", "1",
                 obs.class2.free_coords.empty() ? "none" : to_string(Rational(abs(obs.class2.free_coords[0]))), b.provenance,
                 "classify_cocycle");
    }
    r.details["class2"] = class_summary(obs.class2);
}

inline void run_gerbe(const GerbeInstance& g, EntryReport& r) {
    auto seq = ShortExactCoefficients::exponential();
    auto out = chase_pipeline(g.h, seq);
    r.expect("class2 zero", yes_no(g.expect_zero), yes_no(out.class2.is_zero()), g.provenance, "classify_cocycle");
    r.expect("class2 zero by direct solve", yes_no(g.expect_zero), yes_no(oracles::coboundary_witness(g.h).has_value()),
             g.provenance, "oracles::coboundary_witness");
    r.expect("class2 order", g.expect_class_order.str(), order_text(out.class2.order()), g.provenance,
             "CohomologyClass::order");
    r.expect("class2 order by direct solve", g.expect_class_order.str(), order_text(oracle_order(g.h)), g.provenance,
             "oracles::order_by_search (k <= 12)");
    r.expect("torsion_order", g.expect_omega_order.str(), order_text(out.report.torsion_order), g.provenance,
             "rational_image");
    r.expect("torsion_order by direct solve", g.expect_omega_order.str(), order_text(oracle_order(out.triple.omega)),
             g.provenance, "oracles::order_by_search (k <= 12)");
    const auto& wq = out.report.rational_witness;
    r.expect("rational class zero with witness", "true",
             yes_no(wq && coboundary(*wq) == out.triple.omega.reinterpret(CoefficientSystem::rationals())),
             "[DERIVED: finite image, rational class vanishes]", "rational_image + coboundary");
    r.expect("route agreement", "true", yes_no(out.routes && out.routes->agree()),
             "[DERIVED: connecting map is a homomorphism on classes]", "connecting_map_on_class");
    r.expect("deligne triple valid", "true", yes_no(deligne_validate(out.triple).valid()),
             "[TRIVIAL: pipeline postcondition]", "deligne_validate");
    r.details["class2"] = class_summary(out.class2);
    r.details["class3"] = class_summary(out.report.integral_class);
}

inline void run_xmod(const XModInstance& x, EntryReport& r, std::uint64_t seed = 1) {
    auto rep = xmod::analyze(x.cm);
    r.expect("crossed module valid", "true", yes_no(rep.structure.valid()), "[TRIVIAL: built from the axioms]",
             "validate_crossed_module");
    r.expect("dim ker mu", std::to_string(x.expect_dim_v), std::to_string(rep.structure.kernel.size()), x.provenance,
             "validate_crossed_module");
    r.expect("dim coker mu", std::to_string(x.expect_dim_g), std::to_string(rep.structure.coker.dim()), x.provenance,
             "validate_crossed_module");
    r.expect("omega3 is a CE cocycle", "true",
             yes_no(detail::ce_differential(rep.cocycle.omega3, rep.structure.module).is_zero()),
             "[DERIVED: d_S Omega is closed]", "ce_coboundary");
    r.expect("class zero", yes_no(x.expect_zero), yes_no(rep.solve.exact()), x.provenance, "coboundary_solve");
    if (rep.solve.witness && rep.cocycle.omega3.size() > 0)
        r.expect("witness reproduces omega3", "true",
                 yes_no(detail::ce_differential(*rep.solve.witness, rep.structure.module) == rep.cocycle.omega3),
                 "[TRIVIAL: witness contract]", "ce_coboundary");
    std::mt19937_64 rng(seed);
    auto sigma = xmod::random_section(x.cm, rep.structure, rng);
    auto other = obstruction_3cocycle(x.cm, rep.structure, sigma);
    auto diff = other.omega3 - rep.cocycle.omega3;
    bool exact = diff.size() == 0 || diff.dim_v() == 0 || coboundary_solve(diff, rep.structure.module).exact();
    r.expect("section change is exact", "true", yes_no(exact), "[DERIVED: class is section independent]",
             "coboundary_solve");
    r.details["omega3"] = io::ce_cochain_to_json(rep.cocycle.omega3);
}

// ---------------------------------------------------------------- registry

struct CorpusEntry {
    std::string name;
    std::string kind;
    std::string description;
    std::function<void(EntryReport&)> run;
    std::function<std::map<std::string, json>()> documents;  // exported input files
};

template <class Ext>
std::map<std::string, json> bundle_documents(const BundleInstance<Ext>& b) {
    return {{"complex.json", io::complex_to_json(*b.transitions.complex)},
            {"extension.json", io::extension_to_json(io::AnyExtension(b.ext))},
            {"transitions.json", io::transitions_to_json(b.transitions, io::base_group_name(b.ext))}};
}

inline std::vector<CorpusEntry> entries() {
    std::vector<CorpusEntry> out;
    for (const auto& sp : space_instances())
        out.push_back({"space-" + sp.name, "cohomology", "cohomology of the " + sp.name + " triangulation",
                       [sp](EntryReport& r) { run_space(sp, r); },
                       [sp] { return std::map<std::string, json>{{"complex.json", io::complex_to_json(*sp.complex)}}; }});
    auto add_bundles = [&](const auto& builders, const std::string& kind) {
        for (const auto& [name, build] : builders)
            out.push_back({name, kind, build().description, [build = build](EntryReport& r) { run_bundle(build(), r); },
                           [build = build] { return bundle_documents(build()); }});
    };
    add_bundles(finite_bundle_builders(), "bundle-finite");
    add_bundles(spin_bundle_builders(), "bundle-spin");
    add_bundles(circle_bundle_builders(), "bundle-circle");
    for (const auto& [name, build] : gerbe_builders())
        out.push_back({name, "gerbe", build().description, [build = build](EntryReport& r) { run_gerbe(build(), r); },
                       [build = build] {
                           auto g = build();
                           return std::map<std::string, json>{{"obstruction.json",
                                                               {{"complex", io::complex_to_json(g.h.complex())},
                                                                {"h", io::cochain_to_json(g.h)}}},
                                                              {"sequence.json", {{"kind", "exponential"}}}};
                       }});
    for (const auto& [name, build] : xmod_builders())
        out.push_back({name, "xmod", build().description, [build = build](EntryReport& r) { run_xmod(build(), r); },
                       [build = build] { return std::map<std::string, json>{{"module.json", io::xmod_to_json(build().cm)}}; }});
    std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
    return out;
}

/// Shell-style match with '*' and '?'.
inline bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline EntryReport run_entry(const CorpusEntry& e) {
    EntryReport r;
    r.name = e.name;
    r.kind = e.kind;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        e.run(r);
    } catch (const InternalError& ex) {
        r.passed = false;
        r.error = std::string("internal invariant violation: ") + ex.what();
        r.error_code = 3;
    } catch (const InputError& ex) {
        r.passed = false;
        r.error = std::string("input error: ") + ex.what();
        r.error_code = 2;
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline RunReport corpus_run(const std::string& pattern = "*") {
    RunReport rep;
    for (const auto& e : entries())
        if (glob_match(pattern, e.name)) rep.entries.push_back(run_entry(e));
    return rep;
}

}  // namespace obstructk::corpus
