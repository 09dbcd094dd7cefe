#include "catch_amalgamated.hpp"
#include "obstructk/corpus.hpp"

using namespace obstructk;
using namespace obstructk::corpus;

namespace {

template <class T>
T build(const std::vector<Builder<T>>& bs, const std::string& name) {
    for (const auto& [n, f] : bs)
        if (n == name) return f();
    throw std::runtime_error("no builder " + name);
}

/// Every lifted triangle multiplies to the identity in the total group.
bool lifts_are_cocycle(const SimplicialComplex& x, const FiniteExtension& ext,
                       const std::map<Edge, int>& lifted) {
    const auto& g = ext.total_group();
    for (const auto& s : x.simplices(2)) {
        int p = g.mul(g.mul(lifted.at({s[0], s[1]}), lifted.at({s[1], s[2]})), g.inv(lifted.at({s[0], s[2]})));
        if (p != g.identity()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validation reports cocycle and antisymmetry violations") {
    auto ext = extensions::q8_over_v4();
    auto x = share(spaces::triangle());
    TransitionData<FiniteGroupOps> t{x, ext.base()};
    t.constant[{0, 1}] = 1;
    t.constant[{1, 2}] = 0;
    t.constant[{0, 2}] = 2;
    auto rep = validate_transition(t);
    REQUIRE_FALSE(rep.valid());
    CHECK(rep.violations.front().kind == "cocycle");
    CHECK(rep.violations.front().simplex == Simplex{0, 1, 2});
    t.constant[{0, 2}] = 1;
    CHECK(validate_transition(t).valid());
    t.constant[{1, 0}] = 2;
    rep = validate_transition(t);
    REQUIRE_FALSE(rep.valid());
    CHECK(rep.violations.front().kind == "antisymmetry");
    CHECK_THROWS_AS(compute_obstruction(t, ext), InputError);
    TransitionData<FiniteGroupOps> missing{x, ext.base()};
    missing.constant[{0, 1}] = 1;
    CHECK_FALSE(validate_transition(missing).valid());
}

TEST_CASE("Q8 over V4 on the torus: the class is the nonzero element and no lift exists") {
    auto b = build(finite_bundle_builders(), "q8-v4-torus");
    auto r = compute_obstruction(b.transitions, b.ext);
    CHECK(r.group->describe() == "Z/2");
    REQUIRE(r.class2.torsion_coords.size() == 1);
    CHECK(r.class2.torsion_coords[0] == 1);
    auto ls = brute_force_lift_search(b.transitions, b.ext);
    CHECK(ls.status == LiftSearchStatus::Exhausted);
    CHECK(ls.nodes_visited > 0);
}

TEST_CASE("a lift found by the search is a homomorphic lift of the transition data") {
    for (const auto* name : {"trivial-bundle-any", "q8-v4-torus-b-trivial", "d4-v4-rp2-reflection", "split-v4-torus"}) {
        INFO(name);
        auto b = build(finite_bundle_builders(), name);
        auto ls = brute_force_lift_search(b.transitions, b.ext);
        REQUIRE(ls.found());
        for (const auto& [e, v] : ls.lifted) CHECK(b.ext.project(v) == b.transitions.value(e.first, e.second));
        CHECK(lifts_are_cocycle(*b.transitions.complex, b.ext, ls.lifted));
        CHECK(compute_obstruction(b.transitions, b.ext).class2.is_zero());
    }
}

TEST_CASE("lift search respects its budget") {
    auto b = build(finite_bundle_builders(), "q8-v4-rp2xs1");
    auto ls = brute_force_lift_search(b.transitions, b.ext);
    CHECK(ls.status == LiftSearchStatus::Truncated);
    CHECK(ls.nodes_visited == 0);
    auto small = build(finite_bundle_builders(), "q8-v4-torus");
    CHECK(brute_force_lift_search(small.transitions, small.ext, 100).status == LiftSearchStatus::Truncated);
}

TEST_CASE("sampled circle bundle on the octahedron has Chern number one") {
    auto b = build(circle_bundle_builders(), "circle-octahedron-winding");
    REQUIRE(validate_transition(b.transitions).valid());
    auto r = compute_obstruction(b.transitions, b.ext);
    REQUIRE(r.class2.free_coords.size() == 1);
    CHECK(abs(r.class2.free_coords[0]) == 1);
    CHECK(r.constancy_report.size() == 8);
    for (const auto& rec : r.constancy_report) CHECK(rec.constant);
    auto p = oracles::fundamental_pairing(r.h);
    REQUIRE(p);
    CHECK(abs(*p) == 1);
}

TEST_CASE("section and root changes move h by a coboundary") {
    for (const auto& [name, f] : finite_bundle_builders()) {
        if (name == "q8-v4-rp2xs1") continue;
        INFO(name);
        auto b = f();
        auto base = compute_obstruction(b.transitions, b.ext);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            TwistedSection<FiniteExtension> tw(b.ext, seeded_twist(b.ext, seed));
            auto r = compute_obstruction(b.transitions, tw, LiftOptions{seed});
            CHECK(oracles::coboundary_witness(r.h - base.h));
        }
    }
    auto c = build(circle_bundle_builders(), "circle-octahedron-winding");
    auto base = compute_obstruction(c.transitions, c.ext);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        TwistedSection<CircleExtension> tw(c.ext, seeded_twist(c.ext, seed));
        auto r = compute_obstruction(c.transitions, tw, LiftOptions{seed});
        CHECK(oracles::coboundary_witness(r.h - base.h));
    }
}

TEST_CASE("sampled data with a discontinuity is rejected") {
    auto x = share(spaces::octahedron());
    auto t = winding_transitions(x);
    // Put a jump of 1/2 between the edge site and a triangle site.
    auto& m = t.sampled.at({0, 1});
    m.at(Simplex{0, 1}) = frac(m.at(Simplex{0, 1, 2}) + Rational(1, 2));
    CHECK_THROWS_AS(compute_obstruction(t, CircleExtension{}), InputError);
}

TEST_CASE("discrete fibers reject inconsistent anchors") {
    auto ext = extensions::q8_over_v4();
    CHECK_THROWS_AS(ext.nearest_lift(ext.total_group().index_of("i"), 2), DiscontinuousDataError);
}
