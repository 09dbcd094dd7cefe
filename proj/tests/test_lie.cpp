#include <random>

#include "catch_amalgamated.hpp"
#include "obstructk/lie.hpp"

using namespace obstructk;

namespace {

bool jacobi_holds(const LieAlgebra& L) {
    const std::size_t d = L.dim();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                auto x = lin::unit(d, a), y = lin::unit(d, b), z = lin::unit(d, c);
                auto s = lin::add(lin::add(L.bracket(x, L.bracket(y, z)), L.bracket(y, L.bracket(z, x))),
                                  L.bracket(z, L.bracket(x, y)));
                if (!is_zero(s)) return false;
            }
    return true;
}

LieModule trivial_module(const LieAlgebra& g) {
    return {g, std::vector<RationalMatrix>(g.dim(), RationalMatrix(1, 1)), 1};
}

}  // namespace

TEST_CASE("built-in Lie algebras satisfy Jacobi") {
    for (const auto& L : {lie::abelian(3), lie::heisenberg(), lie::sl2(), lie::affine_line(), lie::filiform4(),
                          lie::derivation_algebra(lie::heisenberg())}) {
        INFO(L.name());
        CHECK(jacobi_holds(L));
    }
    CHECK_THROWS_AS(LieAlgebra::from_brackets("bad", 3, {{0, 1, {1, 0, 0}}, {0, 2, {0, 1, 0}}}),
                    InputError);
}

TEST_CASE("derivation algebras have the known dimensions") {
    CHECK(derivation_basis(lie::heisenberg()).size() == 6);
    CHECK(derivation_basis(lie::sl2()).size() == 3);
    CHECK(derivation_basis(lie::abelian(2)).size() == 4);
    for (const auto& D : derivation_basis(lie::heisenberg())) CHECK(lie::heisenberg().is_derivation(D));
}

TEST_CASE("CE differential squares to zero") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> d(-3, 3);
    auto cm = xmod::adjoint(lie::heisenberg());
    auto s = validate_crossed_module(cm);
    for (const auto& M : {trivial_module(lie::sl2()), s.module}) {
        for (std::size_t p = 0; p + 2 <= M.g.dim(); ++p) {
            CECochain c(M.g.dim(), M.dim_v, p);
            for (std::size_t i = 0; i < c.size(); ++i)
                for (auto& v : c.at(i)) v = d(rng);
            CHECK(ce_coboundary(ce_coboundary(c, M), M).is_zero());
        }
    }
}

TEST_CASE("the sl2 Killing 3-form is a cocycle with a non-exactness certificate") {
    auto g = lie::sl2();
    auto M = trivial_module(g);
    // Killing form of sl2 in the basis (h, e, f): K(h,h) = 8, K(e,f) = 4.
    RationalMatrix K(3, 3);
    K(0, 0) = 8;
    K(1, 2) = 4;
    K(2, 1) = 4;
    CECochain w(3, 1, 3);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& t = w.subsets()[i];
        auto br = g.bracket_basis(t[0], t[1]);
        Rational v = 0;
        for (std::size_t k = 0; k < 3; ++k) v += br[k] * K(k, t[2]);
        w.at(i) = {v};
    }
    REQUIRE_FALSE(w.is_zero());
    CHECK(ce_coboundary(w, M).is_zero());
    auto r = coboundary_solve(w, M);
    REQUIRE_FALSE(r.exact());
    REQUIRE(r.certificate);
    // The functional kills every coboundary and is nonzero on w.
    auto A = ce_matrix(M, 2);
    for (std::size_t col = 0; col < A.cols(); ++col) {
        Rational acc = 0;
        for (std::size_t row = 0; row < A.rows(); ++row) acc += (*r.certificate)[row] * A(row, col);
        CHECK(acc == 0);
    }
    Rational on_w = 0;
    auto f = w.flat();
    for (std::size_t i = 0; i < f.size(); ++i) on_w += (*r.certificate)[i] * f[i];
    CHECK(on_w != 0);
}

TEST_CASE("crossed module validation catches broken axioms") {
    auto cm = xmod::adjoint(lie::heisenberg());
    CHECK(validate_crossed_module(cm).valid());
    cm.mu(0, 0) += 1;
    auto s = validate_crossed_module(cm);
    CHECK_FALSE(s.valid());
    CHECK_THROWS_AS(xmod::analyze(cm), InputError);
}

TEST_CASE("named crossed modules") {
    auto ad = xmod::analyze(xmod::adjoint(lie::heisenberg()));
    CHECK(ad.structure.kernel.size() == 1);
    CHECK(ad.structure.coker.dim() == 4);
    CHECK(ad.solve.exact());
    auto id = xmod::analyze(xmod::identity(lie::sl2()));
    CHECK(id.structure.kernel.empty());
    CHECK(id.structure.coker.dim() == 0);
    CHECK(id.solve.exact());
}

TEST_CASE("random crossed modules: cocycle, section independence, extensions vanish") {
    std::mt19937_64 rng(2024);
    int counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 40; ++trial) {
        auto r = xmod::random_crossed_module(rng);
        INFO(r.cm.name);
        REQUIRE(r.cm.m.dim() <= 6);
        REQUIRE(r.cm.n.dim() <= 6);
        auto rep = xmod::analyze(r.cm);
        CHECK(detail::ce_differential(rep.cocycle.omega3, rep.structure.module).is_zero());
        auto other = obstruction_3cocycle(r.cm, rep.structure, xmod::random_section(r.cm, rep.structure, rng));
        auto diff = other.omega3 - rep.cocycle.omega3;
        if (diff.size() > 0 && diff.dim_v() > 0) CHECK(coboundary_solve(diff, rep.structure.module).exact());
        if (r.family == xmod::Family::Extension) {
            REQUIRE(rep.solve.witness);
            if (rep.cocycle.omega3.size() > 0 && rep.cocycle.omega3.dim_v() > 0)
                CHECK(detail::ce_differential(*rep.solve.witness, rep.structure.module) == rep.cocycle.omega3);
        }
        ++counts[static_cast<int>(r.family)];
    }
    CHECK(counts[0] > 0);
    CHECK(counts[1] > 0);
    CHECK(counts[2] > 0);
}
