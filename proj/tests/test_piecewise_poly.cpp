#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_quadrature.hpp"
#include "sbl/piecewise_poly.hpp"
#include "sbl/rng.hpp"

using namespace sbl;

namespace {

PiecewisePoly random_poly(Rng& rng, int pieces, int degree) {
    std::vector<double> breaks{0.0};
    for (int i = 0; i < pieces; ++i) breaks.push_back(breaks.back() + rng.uniform(0.1, 1.0));
    std::vector<std::vector<double>> coef;
    for (int i = 0; i < pieces; ++i) {
        std::vector<double> c;
        for (int j = 0; j <= degree; ++j) c.push_back(rng.uniform(-2.0, 2.0));
        coef.push_back(std::move(c));
    }
    return PiecewisePoly(std::move(breaks), std::move(coef));
}

}  // namespace

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(PiecewisePoly({0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly({0.5, 1.0}, {{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly({0.0, 1.0, 1.0}, {{1.0}, {2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly({0.0, 1.0}, {{1.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("evaluation conventions") {
    // x on [0,1): 1 + 2t; on [1,3]: -1 + t^2 local.
    const PiecewisePoly p({0.0, 1.0, 3.0}, {{1.0, 2.0}, {-1.0, 0.0, 1.0}});
    CHECK(p(0.0) == 1.0);
    CHECK(p(0.5) == 2.0);
    CHECK(p(1.0) == -1.0);  // right-continuous at interior breakpoints
    CHECK(p(2.0) == 0.0);
    CHECK(p(3.0) == 3.0);   // last piece owns its right endpoint
    CHECK(p(3.0001) == 0.0);
    CHECK(p(-0.0001) == 0.0);
    CHECK(p.degree() == 2);
    CHECK(p.piece_count() == 2);
}

TEST_CASE("derivative then antiderivative round-trips up to the running constant") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const PiecewisePoly p = random_poly(rng, 4, 3);
        const PiecewisePoly q = p.antiderivative().derivative();
        for (int i = 0; i <= 200; ++i) {
            const double x = p.span() * i / 200;
            CHECK(q(x) == doctest::Approx(p(x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("antiderivative is continuous and vanishes at zero") {
    Rng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const PiecewisePoly p = random_poly(rng, 5, 2);
        const PiecewisePoly f = p.antiderivative();
        CHECK(f(0.0) == 0.0);
        CHECK(f.is_continuous(1e-11 * std::max(1.0, f.sup_abs())));
    }
}

TEST_CASE("integral matches quadrature on random polys") {
    // Random pieces are discontinuous at breakpoints, which costs the
    // trapezoid oracle O(h) per jump; the symbolic integral is exact.
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const PiecewisePoly p = random_poly(rng, 3, 3);
        const double want = oracle::integral([&](double x) { return p(x); }, p.span(), 1 << 18);
        CHECK(std::fabs(p.integral() - want) < 1e-4);
    }
}

TEST_CASE("sup_abs exact for low degree") {
    // -(x - 1)^2 + 4 on [0, 3] in local coords: 3 + 2x - x^2. Max 4 at x=1.
    const PiecewisePoly p({0.0, 3.0}, {{3.0, 2.0, -1.0}});
    CHECK(p.sup_abs() == doctest::Approx(4.0));
    const PiecewisePoly lin({0.0, 2.0}, {{1.0, -3.0}});  // 1 - 3x: |min| = 5 at x=2
    CHECK(lin.sup_abs() == doctest::Approx(5.0));
}

TEST_CASE("scaled and plus_constant") {
    const PiecewisePoly p({0.0, 1.0, 2.0}, {{0.0, 1.0}, {1.0, -1.0}});
    const PiecewisePoly q = p.scaled(-2.0).plus_constant(1.0);
    for (int i = 0; i <= 40; ++i) {
        const double x = 2.0 * i / 40;
        CHECK(q(x) == doctest::Approx(-2.0 * p(x) + 1.0));
    }
}

TEST_CASE("max_interior_jump reports discontinuities") {
    const PiecewisePoly cont({0.0, 1.0, 2.0}, {{0.0, 1.0}, {1.0, -1.0}});
    CHECK(cont.max_interior_jump() == doctest::Approx(0.0));
    const PiecewisePoly jump({0.0, 1.0, 2.0}, {{0.0, 1.0}, {3.0}});
    CHECK(jump.max_interior_jump() == doctest::Approx(2.0));
    CHECK_FALSE(jump.is_continuous(1e-9));
}

TEST_CASE("min_on_grid") {
    const PiecewisePoly p({0.0, 1.0}, {{1.0, -2.0}});  // 1 - 2x
    CHECK(p.min_on_grid(100) == doctest::Approx(-1.0));
}
