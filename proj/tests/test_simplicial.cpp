#include <random>

#include "catch_amalgamated.hpp"
#include "obstructk/cohomology.hpp"
#include "obstructk/oracles.hpp"
#include "obstructk/spaces.hpp"

using namespace obstructk;

namespace {

std::vector<std::pair<std::string, ComplexPtr>> all_spaces() {
    std::vector<std::pair<std::string, ComplexPtr>> out;
    for (const auto& s : spaces::catalog()) out.emplace_back(s.name, share(s.build()));
    return out;
}

Cochain random_cochain(const ComplexPtr& x, int q, const CoefficientSystem& c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    Cochain out(x, q, c);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Rational v(d(rng));
        if (c.kind() == CoefficientSystem::Kind::Rationals || c.kind() == CoefficientSystem::Kind::RationalsModIntegers)
            v /= Rational(1 + (d(rng) + 3) % 4);
        out.set(i, c.normalize(v));
    }
    return out;
}

}  // namespace

TEST_CASE("rationals print and parse as p/q") {
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("4/8") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("0.5"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK(mod_floor(Integer(-7), Integer(3)) == 2);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
}

TEST_CASE("Smith normal form satisfies U A V = D with a divisibility chain") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-4, 4), sz(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        Matrix<Integer> a(sz(rng), sz(rng));
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = d(rng) * (trial % 3 == 0 ? 2 : 1);
        auto s = smith_normal_form(a);
        CHECK(s.U * a * s.V == s.D);
        CHECK(s.U * s.U_inv == Matrix<Integer>::identity(a.rows()));
        CHECK(s.V * s.V_inv == Matrix<Integer>::identity(a.cols()));
        for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.factor(i + 1) % s.factor(i) == 0);
        for (std::size_t i = 0; i < s.rank; ++i) CHECK(s.factor(i) > 0);
        CHECK(s.rank == rank(matrix_cast<Rational>(a)));
    }
}

TEST_CASE("Smith normal form of a known matrix") {
    Matrix<Integer> a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 4;
    a(1, 0) = 6;
    a(1, 1) = 8;
    auto f = smith_normal_form(a).invariant_factors();
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 2);
    CHECK(f[1] == 4);
}

TEST_CASE("complex construction closes the simplex list and rejects repeated vertices") {
    std::vector<std::string> warnings;
    auto x = SimplicialComplex::from_simplices({}, {{2, 0, 1}}, &warnings);
    CHECK(x.count(0) == 3);
    CHECK(x.count(1) == 3);
    CHECK(x.count(2) == 1);
    CHECK(x.contains({0, 2}));
    CHECK_THROWS_AS(SimplicialComplex::from_simplices({0, 1}, {{0, 0, 1}}), InputError);
}

TEST_CASE("built-in triangulations have the expected Euler characteristics") {
    const std::map<std::string, long> chi = {{"point", 1}, {"triangle", 1}, {"circle", 0}, {"octahedron", 2},
                                             {"torus", 0}, {"rp2", 1},      {"s3", 0},     {"rp2xs1", 0}};
    for (const auto& [name, x] : all_spaces()) {
        INFO(name);
        REQUIRE(chi.count(name));
        CHECK(x->euler_characteristic() == chi.at(name));
    }
    CHECK(spaces::torus().count(0) == 7);
    CHECK(spaces::projective_plane().count(0) == 6);
    CHECK(spaces::octahedron().is_pseudomanifold());
    CHECK(spaces::projective_plane_times_circle().dimension() == 3);
}

TEST_CASE("product triangulation multiplies Euler characteristics") {
    auto p = product(spaces::circle(), spaces::circle());
    CHECK(p.euler_characteristic() == 0);
    CHECK(p.count(0) == 9);
    auto q = product(spaces::triangle(), spaces::circle());
    CHECK(q.euler_characteristic() == 0);
}

TEST_CASE("delta squared vanishes on random cochains") {
    std::mt19937_64 rng(11);
    for (const auto& [name, x] : all_spaces())
        for (const auto& c : {CoefficientSystem::integers(), CoefficientSystem::integers_mod(3),
                              CoefficientSystem::rationals(), CoefficientSystem::rationals_mod_integers()})
            for (int q = 0; q + 2 <= x->dimension(); ++q) {
                INFO(name << " " << c.name() << " " << q);
                CHECK(coboundary(coboundary(random_cochain(x, q, c, rng))).is_zero());
            }
}

TEST_CASE("named cohomology groups") {
    auto h = [](const char* space, const char* coeff, int q) {
        return cohomology_group(share(spaces::by_name(space)), CoefficientSystem::parse(coeff), q)->describe();
    };
    CHECK(h("rp2", "Z", 2) == "Z/2");
    CHECK(h("rp2", "Z", 1) == "0");
    CHECK(h("rp2", "Z/2", 1) == "Z/2");
    CHECK(h("rp2", "Q", 2) == "0");
    CHECK(h("octahedron", "Z", 2) == "Z");
    CHECK(h("torus", "Z", 1) == "Z^2");
    CHECK(h("torus", "Z/2", 2) == "Z/2");
    CHECK(h("rp2xs1", "Z", 3) == "Z/2");
    CHECK(h("rp2xs1", "Z", 2) == "Z/2");
    CHECK(h("s3", "Z", 3) == "Z");
    CHECK(h("rp2", "Q/Z", 1) == "Z/2");
    CHECK(h("rp2", "Q/Z", 2) == "0");
    CHECK(h("torus", "Q^2", 1) == "Q^4");
}

TEST_CASE("cohomology agrees with universal coefficients on every space") {
    for (const auto& [name, x] : all_spaces())
        for (const auto& c : {CoefficientSystem::integers(), CoefficientSystem::integers_mod(2),
                              CoefficientSystem::integers_mod(4), CoefficientSystem::rationals(),
                              CoefficientSystem::rationals_mod_integers()})
            for (int q = 0; q <= x->dimension() + 1; ++q) {
                INFO(name << " " << c.name() << " H^" << q);
                auto g = cohomology_group(x, c, q);
                CHECK(g->describe() == oracles::uct_cohomology(*x, c, q).describe(c.name()));
            }
}

TEST_CASE("generators classify to unit vectors and coboundaries classify to zero") {
    std::mt19937_64 rng(3);
    for (const auto& [name, x] : all_spaces())
        for (const auto& c : {CoefficientSystem::integers(), CoefficientSystem::integers_mod(2),
                              CoefficientSystem::rationals()})
            for (int q = 1; q <= x->dimension(); ++q) {
                INFO(name << " " << c.name() << " H^" << q);
                auto g = cohomology_group(x, c, q);
                for (std::size_t k = 0; k < g->generators.size(); ++k) {
                    auto cls = classify_cocycle(g->generators[k], g);
                    for (std::size_t j = 0; j < cls.torsion_coords.size(); ++j)
                        CHECK(cls.torsion_coords[j] == (j == k ? 1 : 0));
                    for (std::size_t j = 0; j < cls.free_coords.size(); ++j)
                        CHECK(cls.free_coords[j] == (j + g->torsion.size() == k ? 1 : 0));
                }
                auto b = coboundary(random_cochain(x, q - 1, c, rng));
                auto cls = classify_cocycle(b, g);
                REQUIRE(cls.is_zero());
                CHECK(coboundary(*cls.witness) == b);
            }
}

TEST_CASE("classification is additive") {
    std::mt19937_64 rng(5);
    auto x = share(spaces::projective_plane_times_circle());
    for (int q : {1, 2, 3}) {
        auto g = cohomology_group(x, CoefficientSystem::integers(), q);
        std::uniform_int_distribution<int> d(-3, 3);
        for (int trial = 0; trial < 5; ++trial) {
            Cochain a(x, q, CoefficientSystem::integers()), b = a;
            for (const auto& gen : g->generators) {
                a = a + Integer(d(rng)) * gen;
                b = b + Integer(d(rng)) * gen;
            }
            a = a + coboundary(random_cochain(x, q - 1, CoefficientSystem::integers(), rng));
            auto ca = classify_cocycle(a, g), cb = classify_cocycle(b, g), cs = classify_cocycle(a + b, g);
            for (std::size_t j = 0; j < cs.free_coords.size(); ++j)
                CHECK(cs.free_coords[j] == ca.free_coords[j] + cb.free_coords[j]);
            for (std::size_t j = 0; j < cs.torsion_coords.size(); ++j)
                CHECK(cs.torsion_coords[j] == mod_floor(ca.torsion_coords[j] + cb.torsion_coords[j], g->torsion[j]));
        }
    }
}

TEST_CASE("classifying a non-cocycle is an input error naming the simplex") {
    auto x = share(spaces::torus());
    Cochain c(x, 1, CoefficientSystem::integers());
    c.set(0, Rational(1));
    auto g = cohomology_group(x, CoefficientSystem::integers(), 1);
    CHECK_THROWS_AS(classify_cocycle(c, g), NotCocycleError);
}

TEST_CASE("octahedron generator pairs to one with the fundamental class") {
    auto x = share(spaces::octahedron());
    auto g = cohomology_group(x, CoefficientSystem::integers(), 2);
    auto p = oracles::fundamental_pairing(g->generators.at(0));
    REQUIRE(p);
    CHECK(abs(*p) == 1);
}
