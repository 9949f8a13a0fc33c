#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sbl/construction.hpp"
#include "sbl/info_theory.hpp"
#include "sbl/rng.hpp"

using namespace sbl;

TEST_CASE("kl_pm1") {
    SUBCASE("zero iff equal means") {
        Rng rng(3);
        for (int i = 0; i < 1000; ++i) {
            const double r = rng.uniform(-0.99, 0.99);
            CHECK(kl_pm1(r, r) == 0.0);
        }
        CHECK(kl_pm1(0.2, 0.200001) > 0.0);
        CHECK(kl_pm1(0.2, 0.200001) < 1e-9);
    }
    SUBCASE("direct value: kl(0.5, 0) = 0.75 ln 1.5 + 0.25 ln 0.5") {
        CHECK(kl_pm1(0.5, 0.0) == doctest::Approx(0.13081203594113696).epsilon(1e-13));
        // And the quadratic bound at this point: 0.1308 <= (4/3) * 0.25.
        CHECK(kl_pm1(0.5, 0.0) <= (4.0 / 3.0) * 0.25);
    }
    SUBCASE("degenerate second argument signals infinity") {
        CHECK(std::isinf(kl_pm1(0.5, 1.0)));
        CHECK(std::isinf(kl_pm1(0.5, -1.0)));
        CHECK(kl_pm1(1.0, 1.0) == 0.0);
    }
    SUBCASE("degenerate first argument stays finite") {
        CHECK(kl_pm1(1.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    }
    SUBCASE("out of range throws") {
        CHECK_THROWS_AS(kl_pm1(1.5, 0.0), std::domain_error);
        CHECK_THROWS_AS(kl_pm1(0.0, -1.5), std::domain_error);
    }
    SUBCASE("asymmetric in general, both directions zero only at equality") {
        CHECK(kl_pm1(0.5, 0.1) != kl_pm1(0.1, 0.5));
        CHECK(kl_pm1(0.3, 0.3) == 0.0);
        CHECK(kl_pm1(0.3, 0.30000001) > 0.0);
        CHECK(kl_pm1(0.30000001, 0.3) > 0.0);
    }
    SUBCASE("nonnegativity and the (4/3)(r1-r2)^2 bound, fuzzed") {
        Rng rng(17);
        for (int i = 0; i < 100000; ++i) {
            const double r1 = rng.uniform(-0.99, 0.99);
            const double r2 = rng.uniform(-0.5, 0.5);
            const double kl = kl_pm1(r1, r2);
            CHECK(kl >= 0.0);
            CHECK(kl <= (4.0 / 3.0) * (r1 - r2) * (r1 - r2));
        }
    }
}

TEST_CASE("pinsker_gap") {
    CHECK(pinsker_gap(0.0) == 0.0);
    CHECK(pinsker_gap(0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(pinsker_gap(-0.1), std::domain_error);
    // Chain rule: per-round divergences add, so the gap over n iid rounds is
    // sqrt(n * kl / 2).
    const double kl = kl_pm1(0.1, 0.0);
    CHECK(pinsker_gap(8 * kl) == doctest::Approx(std::sqrt(8 * kl / 2.0)));
}

TEST_CASE("epoch distinguishability") {
    SUBCASE("beta=1, T=2^14: budget 1/2, gap 1/2") {
        const EpochDistinguishability d = epoch_distinguishability(1, 1 << 14);
        CHECK(d.kl_budget == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.prob_gap == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("the gap is 1/2 for every beta and horizon by the choice of delta") {
        for (int beta = 1; beta <= 4; ++beta) {
            for (int j = 10; j <= 24; j += 2) {
                const std::int64_t T = std::int64_t{1} << j;
                try {
                    const EpochDistinguishability d = epoch_distinguishability(beta, T);
                    CHECK(d.prob_gap <= 0.5 + 1e-12);
                    CHECK(d.prob_gap == doctest::Approx(0.5).epsilon(1e-9));
                } catch (const std::domain_error&) {
                    // horizon too small for this beta; delta_for rejects it
                }
            }
        }
    }
    SUBCASE("budget is linear in T at fixed delta") {
        // Doubling T doubles the budget when delta is held fixed; compare via
        // the closed form with delta from the smaller horizon.
        const double c = growth_constant(1);
        const double delta = delta_for(1, 1 << 14);
        auto budget = [&](double T) { return 4.0 * c * c / 3.0 * delta * delta * 6.0 * delta * T; };
        CHECK(budget(2 * 16384.0) == doctest::Approx(2.0 * budget(16384.0)));
    }
}

TEST_CASE("lb_value") {
    SUBCASE("beta=1: T^{2/3}/48") {
        CHECK(lb_value(1, 1000000) == doctest::Approx(10000.0 / 48.0).epsilon(1e-12));
        CHECK(lb_value(1, 100000) == doctest::Approx(44.88405604233091).epsilon(1e-12));
    }
    SUBCASE("beta=2: (1/96) 4^{4/5} T^{3/5}") {
        const double coef = 0.031577428468966627;
        for (double T : {1e4, 1e5, 1e6}) {
            CHECK(lb_value(2, static_cast<std::int64_t>(T)) ==
                  doctest::Approx(coef * std::pow(T, 0.6)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(lb_value(0, 100), std::invalid_argument);
}
