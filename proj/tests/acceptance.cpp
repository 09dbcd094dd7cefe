// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

#include "obstructk/corpus.hpp"

using namespace obstructk;
using namespace obstructk::corpus;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = "first failure: " + what + "; ";
        pass = pass && ok;
    }
};

/// delta(w) == z for an explicit witness w found independently of the engine.
bool exact_with_witness(const Cochain& z) {
    auto w = oracles::coboundary_witness(z);
    return w && coboundary(*w) == z;
}

template <class T>
std::vector<T> build_all(const std::vector<Builder<T>>& bs) {
    std::vector<T> out;
    for (const auto& [n, f] : bs) out.push_back(f());
    return out;
}

/// Random element of Z^1(X; Z/2): a combination of generators plus a random coboundary.
Cochain random_z2_cocycle(const ComplexPtr& x, std::mt19937_64& rng) {
    const auto z2 = CoefficientSystem::integers_mod(2);
    std::bernoulli_distribution coin(0.5);
    Cochain c(x, 1, z2);
    auto h1 = cohomology_group(x, z2, 1);
    for (const auto& g : h1->generators)
        if (coin(rng)) c += g;
    Cochain u(x, 0, z2);
    for (std::size_t i = 0; i < u.size(); ++i) u.set(i, coin(rng) ? 1 : 0);
    return c + coboundary(u);
}

struct RandomFinite {
    std::string name;
    FiniteExtension ext;
    TransitionData<FiniteGroupOps> t;
};

std::vector<RandomFinite> random_finite_instances(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    const auto& s = shared_spaces();
    const std::vector<std::pair<std::string, ComplexPtr>> bases{
        {"torus", s.torus}, {"rp2", s.rp2}, {"octahedron", s.octahedron}, {"circle", s.circle}};
    const std::vector<FiniteExtension> exts{extensions::q8_over_v4(), extensions::d4_over_v4(),
                                            extensions::split(2, groups::klein_four())};
    std::vector<RandomFinite> out;
    for (int k = 0; k < count; ++k) {
        const auto& [bname, x] = bases[static_cast<std::size_t>(k) % bases.size()];
        if (k % 5 == 4) {
            auto ext = extensions::z4_over_z2();
            auto a = random_z2_cocycle(x, rng);
            TransitionData<FiniteGroupOps> t{x, ext.base()};
            const auto& edges = x->simplices(1);
            for (std::size_t e = 0; e < edges.size(); ++e)
                t.constant[{edges[e][0], edges[e][1]}] = static_cast<int>(to_int64(num(a.scalar(e))));
            out.push_back({"random-" + std::to_string(k) + "-" + bname + "-" + ext.name(), ext, t});
            continue;
        }
        const auto& ext = exts[static_cast<std::size_t>(k / 4) % exts.size()];
        auto a = random_z2_cocycle(x, rng), b = random_z2_cocycle(x, rng);
        out.push_back({"random-" + std::to_string(k) + "-" + bname + "-" + ext.name(), ext, v4_transitions(x, ext, &a, &b)});
    }
    return out;
}

struct QZInstance {
    std::string name;
    Cochain h;
};

/// Q/Z cocycles: rational multiples of integral generators, halves of Z/2 generators, plus a coboundary.
std::vector<QZInstance> random_qz_instances(std::uint64_t seed, int per_space) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num_d(0, 11), den_d(1, 6), gauge(0, 11);
    std::bernoulli_distribution coin(0.5);
    const auto qz = CoefficientSystem::rationals_mod_integers();
    const auto& s = shared_spaces();
    std::vector<QZInstance> out;
    for (const auto& [name, x] : std::vector<std::pair<std::string, ComplexPtr>>{
             {"torus", s.torus}, {"rp2", s.rp2}, {"octahedron", s.octahedron}, {"rp2xs1", s.rp2xs1}, {"s3", s.s3}}) {
        auto gz = cohomology_group(x, CoefficientSystem::integers(), 2);
        auto g2 = cohomology_group(x, CoefficientSystem::integers_mod(2), 2);
        for (int k = 0; k < per_space; ++k) {
            Cochain h(x, 2, qz);
            for (const auto& g : gz->generators) {
                Rational r(num_d(rng), den_d(rng));
                h += g.map_values(qz, [&](const Rational& v) { return v * r; });
            }
            for (const auto& g : g2->generators)
                if (coin(rng)) h += g.map_values(qz, [](const Rational& v) { return v / 2; });
            Cochain l(x, 1, qz);
            for (std::size_t i = 0; i < l.size(); ++i) l.set(i, Rational(gauge(rng), 12));
            h += coboundary(l);
            out.push_back({"qz-" + name + "-" + std::to_string(k), h});
        }
    }
    return out;
}

struct Triples {
    std::vector<std::pair<std::string, DeligneTriple>> items;
};

/// Every pipeline output used by the criteria: degenerate triples of the bundles, chases of the Q/Z instances.
const Triples& pipeline_outputs() {
    static const Triples t = [] {
        Triples out;
        for (const auto& b : build_all(finite_bundle_builders()))
            out.items.push_back({b.name, chase_pipeline(compute_obstruction(b.transitions, b.ext).h, std::nullopt).triple});
        for (const auto& b : build_all(spin_bundle_builders()))
            out.items.push_back({b.name, chase_pipeline(compute_obstruction(b.transitions, b.ext).h, std::nullopt).triple});
        for (const auto& b : build_all(circle_bundle_builders()))
            out.items.push_back({b.name, chase_pipeline(compute_obstruction(b.transitions, b.ext).h, std::nullopt).triple});
        for (const auto& g : build_all(gerbe_builders()))
            out.items.push_back({g.name, chase_pipeline(g.h, ShortExactCoefficients::exponential()).triple});
        for (const auto& q : random_qz_instances(7, 3))
            out.items.push_back({q.name, chase_pipeline(q.h, ShortExactCoefficients::exponential()).triple});
        return out;
    }();
    return t;
}

// ---------------------------------------------------------------- criteria

Outcome criterion1() {
    Outcome o;
    int groups = 0;
    for (const auto& sp : spaces::catalog()) {
        auto x = share(sp.build());
        for (const auto& coeff : {CoefficientSystem::integers(), CoefficientSystem::integers_mod(2),
                                  CoefficientSystem::rationals()}) {
            for (int q = 0; q <= x->dimension() + 1; ++q) {
                auto got = cohomology_group(x, coeff, q)->describe();
                auto want = oracles::uct_cohomology(*x, coeff, q).describe(coeff.name());
                o.require(got == want, sp.name + " H^" + std::to_string(q) + "(" + coeff.name() + ") = " + got +
                                           ", oracle " + want);
                ++groups;
            }
        }
    }
    const auto z = CoefficientSystem::integers();
    auto rp2 = cohomology_group(share(spaces::projective_plane()), z, 2)->describe();
    auto s2 = cohomology_group(share(spaces::octahedron()), z, 2)->describe();
    auto prod = cohomology_group(share(spaces::projective_plane_times_circle()), z, 3);
    bool prod_two_torsion = std::find(prod->torsion.begin(), prod->torsion.end(), Integer(2)) != prod->torsion.end();
    o.require(rp2 == "Z/2", "H^2(RP^2; Z) = " + rp2);
    o.require(s2 == "Z", "H^2(S^2; Z) = " + s2);
    o.require(prod_two_torsion, "H^3(RP^2 x S^1; Z) = " + prod->describe());
    o.detail += std::to_string(groups) + " groups agree with universal coefficients; H^2(RP^2;Z)=" + rp2 +
                ", H^2(S^2;Z)=" + s2 + ", H^3(RP^2xS^1;Z)=" + prod->describe();
    return o;
}

template <class Ext>
void lift_equivalence(Outcome& o, const std::string& name, const TransitionData<typename Ext::BaseGroup>& t,
                      const Ext& ext, int& checked, int& found, int& skipped) {
    auto obs = compute_obstruction(t, ext);
    auto ls = brute_force_lift_search(t, ext);
    if (ls.status == LiftSearchStatus::Truncated) {
        ++skipped;
        return;
    }
    const bool zero = obs.class2.is_zero();
    o.require(ls.found() == zero, name + ": lift " + (ls.found() ? "found" : "absent") + ", class " +
                                      (zero ? "zero" : "nonzero"));
    o.require(zero == oracles::coboundary_witness(obs.h).has_value(), name + ": engine and direct solve disagree");
    ++checked;
    found += ls.found() ? 1 : 0;
}

Outcome criterion2() {
    Outcome o;
    int checked = 0, found = 0, skipped = 0;
    for (const auto& b : build_all(finite_bundle_builders()))
        lift_equivalence(o, b.name, b.transitions, b.ext, checked, found, skipped);
    for (const auto& b : build_all(spin_bundle_builders()))
        lift_equivalence(o, b.name, b.transitions, b.ext, checked, found, skipped);
    for (const auto& r : random_finite_instances(2024, 60)) lift_equivalence(o, r.name, r.t, r.ext, checked, found, skipped);
    o.require(found > 0 && found < checked, "both outcomes must occur");
    o.detail += std::to_string(checked) + " instances within 2^24, " + std::to_string(found) + " lifted, " +
                std::to_string(checked - found) + " obstructed; " + std::to_string(skipped) +
                " above budget not searched";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::string extra;
    for (const auto* name : {"q8-v4-torus", "q8-v4-rp2xs1"}) {
        std::optional<FiniteBundle> found;
        for (const auto& [n, f] : finite_bundle_builders())
            if (n == name) found = f();
        const auto& b = found.value();
        auto obs = compute_obstruction(b.transitions, b.ext);
        const std::string nm = name;
        if (nm == "q8-v4-torus") {
            o.require(obs.group->describe() == "Z/2", "H^2(T^2; Z/2) = " + obs.group->describe());
            o.require(obs.class2.torsion_coords == std::vector<Integer>{1}, "class is not the generator");
        }
        o.require(!obs.class2.is_zero() && !oracles::coboundary_witness(obs.h), nm + ": class vanishes");
        auto bock = connecting_chase(obs.h, ShortExactCoefficients::multiplication(2)).result;
        auto twice = Integer(2) * bock;
        auto w = oracles::coboundary_witness(twice);
        o.require(w && coboundary(*w) == twice, nm + ": no witness for 2 * Bockstein");
        const bool bock_nonzero = !oracles::coboundary_witness(bock).has_value();
        if (nm == "q8-v4-rp2xs1") o.require(bock_nonzero, "Bockstein on RP^2 x S^1 should be nonzero");
        extra += nm + ": Bockstein " + (bock_nonzero ? "nonzero" : "zero") + ", 2*Bockstein = delta(witness); ";
    }
    extra.resize(extra.size() - 2);
    o.detail += "Q8->V4 on T^2 gives the generator of Z/2; " + extra;
    return o;
}

Outcome criterion4() {
    Outcome o;
    int n = 0;
    auto check = [&](const std::string& name, const Cochain& h) {
        auto out = chase_pipeline(h, ShortExactCoefficients::exponential());
        o.require(out.routes.has_value(), name + ": no route comparison");
        if (!out.routes) return;
        o.require(out.routes->agree(), name + ": routes disagree");
        o.require(deligne_validate(out.triple).valid(), name + ": triple rejected");
        ++n;
    };
    for (const auto& g : build_all(gerbe_builders())) check(g.name, g.h);
    for (const auto& q : random_qz_instances(99, 8)) check(q.name, q.h);
    o.detail += std::to_string(n) + " Q/Z instances, cochain-level and class-level coordinates agree";
    return o;
}

Outcome criterion5() {
    Outcome o;
    int n = 0;
    for (const auto& [name, t] : pipeline_outputs().items) {
        auto rep = rational_image(t.omega);
        o.require(rep.rational_class.is_zero(), name + ": rational image nonzero");
        o.require(rep.rational_witness.has_value(), name + ": no rational witness");
        if (rep.rational_witness)
            o.require(coboundary(*rep.rational_witness) == t.omega.reinterpret(CoefficientSystem::rationals()),
                      name + ": delta(beta') != omega");
        ++n;
    }
    o.detail += std::to_string(n) + " finite-image instances, each with delta(beta') = omega over Q";
    return o;
}

template <class Ext>
int rerun(Outcome& o, const BundleInstance<Ext>& b, int runs) {
    auto base = compute_obstruction(b.transitions, b.ext);
    for (int k = 1; k <= runs; ++k) {
        const auto seed = static_cast<std::uint64_t>(k) * 7919;
        TwistedSection<Ext> tw(b.ext, seeded_twist(b.ext, seed));
        auto r = compute_obstruction(b.transitions, tw, LiftOptions{seed});
        o.require(exact_with_witness(r.h - base.h), b.name + " run " + std::to_string(k) + ": h changed class");
    }
    return runs;
}

Outcome criterion6() {
    Outcome o;
    int n = 0, instances = 0;
    for (const auto& b : build_all(finite_bundle_builders())) n += rerun(o, b, 20), ++instances;
    for (const auto& b : build_all(spin_bundle_builders())) n += rerun(o, b, 20), ++instances;
    for (const auto& b : build_all(circle_bundle_builders())) n += rerun(o, b, 20), ++instances;
    // Q/Z chases under 20 different set-theoretic sections of Q -> Q/Z.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> off(-12, 0);
    for (const auto& g : build_all(gerbe_builders())) {
        auto base = chase_pipeline(g.h, ShortExactCoefficients::exponential()).triple.omega;
        for (int k = 0; k < 20; ++k) {
            auto t = chase_pipeline(g.h, ShortExactCoefficients::exponential(Rational(off(rng), 12))).triple.omega;
            o.require(exact_with_witness(t - base), g.name + ": omega changed class");
            ++n;
        }
        ++instances;
    }
    o.detail += std::to_string(instances) + " instances x 20 randomized reruns, " + std::to_string(n) +
                " differences exact with explicit witnesses";
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    int fam[3] = {0, 0, 0}, nonzero = 0;
    for (int k = 0; k < 200; ++k) {
        auto r = xmod::random_crossed_module(rng);
        const auto& cm = r.cm;
        const std::string nm = std::to_string(k) + ":" + cm.name;
        o.require(cm.m.dim() <= 6 && cm.n.dim() <= 6, nm + ": dimension above 6");
        auto rep = xmod::analyze(cm);
        const auto& M = rep.structure.module;
        o.require(detail::ce_differential(rep.cocycle.omega3, M).is_zero(), nm + ": omega3 not a CE cocycle");
        auto other = obstruction_3cocycle(cm, rep.structure, xmod::random_section(cm, rep.structure, rng));
        auto diff = other.omega3 - rep.cocycle.omega3;
        if (diff.size() > 0 && diff.dim_v() > 0) {
            auto s = coboundary_solve(diff, M);
            o.require(s.exact() && s.witness && detail::ce_differential(*s.witness, M) == diff,
                      nm + ": section change not exact");
        }
        if (r.family == xmod::Family::Extension) {
            const bool empty = rep.cocycle.omega3.size() == 0 || rep.cocycle.omega3.dim_v() == 0;
            o.require(rep.solve.exact() && rep.solve.witness &&
                          (empty || detail::ce_differential(*rep.solve.witness, M) == rep.cocycle.omega3),
                      nm + ": extension-derived class without witness");
        }
        if (!rep.solve.exact()) {
            ++nonzero;
            o.require(rep.solve.certificate.has_value(), nm + ": nonzero class without certificate");
        }
        ++fam[static_cast<int>(r.family)];
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= 300.0, "took " + std::to_string(secs) + " s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f s", secs);
    o.detail += "200 modules (adjoint " + std::to_string(fam[0]) + ", extension " + std::to_string(fam[1]) +
                ", abelian " + std::to_string(fam[2]) + "), " + std::to_string(nonzero) +
                " nonzero classes with certificates, " + buf;
    return o;
}

Cochain bump(const Cochain& c, std::size_t i, const Rational& by) {
    Cochain out = c;
    out.set(i, c.coefficient().normalize(c.scalar(i) + by));
    return out;
}

bool has_tetrahedron_coface(const SimplicialComplex& x, const Simplex& tri) {
    for (const auto& s : x.simplices(3))
        if (std::includes(s.begin(), s.end(), tri.begin(), tri.end())) return true;
    return false;
}

Outcome criterion8() {
    Outcome o;
    std::size_t accepted = 0, rejected = 0, mutants = 0, excluded = 0;
    for (const auto& [name, t] : pipeline_outputs().items) {
        o.require(deligne_validate(t).valid(), name + ": pipeline output rejected");
        ++accepted;
        const auto& x = t.h.complex();
        const Rational dh = t.degenerate ? Rational(1) : Rational(1, 2);
        for (std::size_t i = 0; i < t.h.size(); ++i) {
            auto m = t;
            m.h = bump(t.h, i, dh);
            if (t.degenerate && !has_tetrahedron_coface(x, x.simplices(2)[i])) {
                // The mutant is again a cocycle with zero alpha: a valid degenerate triple.
                o.require(coboundary(m.h).is_zero() && deligne_validate(m).valid(),
                          name + ": excluded h mutant is not valid");
                ++excluded;
                continue;
            }
            ++mutants;
            bool rej = !deligne_validate(m).valid();
            o.require(rej, name + ": h mutant at " + format_simplex(x.simplices(2)[i]) + " accepted");
            rejected += rej ? 1 : 0;
        }
        auto mutate = [&](const Cochain DeligneTriple::*field, const Rational& by, const char* what) {
            const auto& c = t.*field;
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto m = t;
                const_cast<Cochain&>(m.*field) = bump(c, i, by);
                ++mutants;
                bool rej = !deligne_validate(m).valid();
                o.require(rej, name + ": " + what + " mutant at " + std::to_string(i) + " accepted");
                rejected += rej ? 1 : 0;
            }
        };
        mutate(&DeligneTriple::alpha, Rational(1, 3), "alpha");
        mutate(&DeligneTriple::beta, Rational(1), "beta");
        mutate(&DeligneTriple::omega, Rational(1), "omega");
    }
    o.detail += std::to_string(accepted) + "/" + std::to_string(pipeline_outputs().items.size()) +
                " outputs accepted, " + std::to_string(rejected) + "/" + std::to_string(mutants) +
                " single-simplex mutants rejected; " + std::to_string(excluded) +
                " h mutants on triangles without 3-dimensional cofaces excluded after checking they are valid";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"cohomology over Z, Z/2, Q matches universal coefficients", criterion1},
        {"lift search finds a lift iff the class is zero", criterion2},
        {"Q8 -> V4 on T^2 is nonzero, its Bockstein is 2-torsion", criterion3},
        {"Q/Z instances: routes agree at coordinate level", criterion4},
        {"finite image: rational degree-3 image vanishes with witness", criterion5},
        {"randomized sections and roots give cohomologous h", criterion6},
        {"200 random Lie crossed modules", criterion7},
        {"Deligne validator: accepts outputs, rejects perturbations", criterion8},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char t[32];
        std::snprintf(t, sizeof t, " [%.1fs]", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " -- "
                  << o.detail << t << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
