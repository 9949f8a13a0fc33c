#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sbl/holder.hpp"
#include "sbl/reward_curve.hpp"
#include "sbl/sign_structure.hpp"

using namespace sbl;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("eval_mean") {
    SUBCASE("constant curve") {
        const RewardCurve c = RewardCurve::constant(0.3);
        CHECK(eval_mean(c, 7, 100) == 0.3);
        CHECK_THROWS_AS(eval_mean(c, 0, 100), std::domain_error);
        CHECK_THROWS_AS(eval_mean(c, 101, 100), std::domain_error);
    }
    SUBCASE("sinusoid at t/T = 1/16 with A=0.01, nu=4, phi=0") {
        const RewardCurve s = RewardCurve::sinusoidal({0.01, 4.0, 0.0, 0.01});
        // 0.01 - 0.01 sin(pi/2) = 0
        CHECK(std::fabs(eval_mean(s, 1, 16)) < 1e-17);
    }
    SUBCASE("family flat bottom, beta=2, delta=1/64") {
        const std::int64_t T = std::int64_t{1} << 28;  // makes delta_for hit 2^-6 exactly
        FamilySpec probe = FamilySpec::make(2, T);
        REQUIRE(probe.delta == doctest::Approx(1.0 / 64.0).epsilon(1e-14));
        ColorSeq colors(static_cast<std::size_t>(probe.epochs), EpochColor::bowl);
        const RewardCurve f = RewardCurve::family(FamilySpec::make(2, T, colors));
        const std::int64_t t = 3 * (T / 64);  // t/T = 3*delta, mid flat bottom
        CHECK(eval_mean(f, t, T) == doctest::Approx(-1.0 / 8192.0).epsilon(1e-13));
    }
    SUBCASE("deterministic and pure") {
        const RewardCurve s = RewardCurve::sinusoidal({0.02, 3.1, 0.4, 0.02});
        const double a = eval_mean(s, 12345, 1 << 20);
        const double b = eval_mean(s, 12345, 1 << 20);
        CHECK(a == b);
    }
}

TEST_CASE("curve bounds are enforced at construction") {
    CHECK_THROWS_AS(RewardCurve::constant(1.5), std::domain_error);
    CHECK_THROWS_AS(RewardCurve::sinusoidal({0.8, 3.0, 0.0, 0.8}), std::domain_error);
    CHECK_NOTHROW(RewardCurve::sinusoidal({0.49, 3.0, 0.0, 0.49}));
}

TEST_CASE("sample_sinusoidal_instance") {
    SUBCASE("amplitude mean matches 0.25 nu^-2 at nu = 4") {
        CHECK(0.25 / (4.0 * 4.0) == 0.015625);
    }
    SUBCASE("curve value at x = 0 equals A when phi = 0") {
        const RewardCurve s = RewardCurve::sinusoidal({0.02, 2.5, 0.0, 0.02});
        CHECK(s(0.0) == doctest::Approx(0.02).epsilon(1e-15));
    }
    SUBCASE("draw statistics and bounds") {
        Rng rng(2024);
        double amp_err_sum = 0.0;
        int n = 2000;
        for (int i = 0; i < n; ++i) {
            const BanditInstance inst = sample_sinusoidal_instance(rng, 1024);
            REQUIRE(inst.arm_count() == 2);
            const SinusoidalParams p = inst.arms[1].sinusoidal_params();
            CHECK(p.frequency >= 2.5);
            CHECK(p.frequency <= 5.0);
            CHECK(p.offset == p.amplitude);
            CHECK(inst.arms[0].constant_value() == p.amplitude);
            amp_err_sum += p.amplitude - 0.25 / (p.frequency * p.frequency);
            // Both arm curves stay in [-1, 1] on a dense grid.
            for (int g = 0; g <= 100; ++g) {
                const double x = g / 100.0;
                CHECK(std::fabs(inst.arms[0](x)) <= 1.0);
                CHECK(std::fabs(inst.arms[1](x)) <= 1.0);
            }
        }
        // A - 0.25 nu^-2 is N(0, 0.001): mean within 4 sigma/sqrt(n).
        CHECK(std::fabs(amp_err_sum / n) <= 4.0 * std::sqrt(0.001) / std::sqrt(double(n)));
    }
    SUBCASE("fine grid bound check on a few draws") {
        Rng rng(7);
        for (int i = 0; i < 5; ++i) {
            const BanditInstance inst = sample_sinusoidal_instance(rng, 64);
            for (int g = 0; g <= 10000; ++g) {
                const double x = g / 10000.0;
                REQUIRE(std::fabs(inst.arms[1](x)) <= 1.0);
            }
        }
    }
}

TEST_CASE("one_armed_view subtracts the static arm") {
    Rng rng(5);
    const BanditInstance inst = sample_sinusoidal_instance(rng, 256);
    const BanditInstance view = one_armed_view(inst);
    CHECK(view.arms[0].constant_value() == 0.0);
    for (int g = 0; g <= 50; ++g) {
        const double x = g / 50.0;
        const double gap_orig = inst.arms[1](x) - inst.arms[0](x);
        const double gap_view = view.arms[1](x) - view.arms[0](x);
        CHECK(gap_view == doctest::Approx(gap_orig).epsilon(1e-12));
    }
    // A zero shift is a no-op for every kind; nonzero shifts are only defined
    // for constant and sinusoidal arms.
    const RewardCurve fam = RewardCurve::family(FamilySpec::make(1, 1 << 14));
    CHECK_NOTHROW(one_armed_view(one_armed(fam, 1 << 14)));
    CHECK_THROWS_AS(fam.shifted(0.1), std::invalid_argument);
}

TEST_CASE("certify_holder") {
    SUBCASE("linear function is 1-Lipschitz") {
        const RewardCurve f = RewardCurve::piecewise(PiecewisePoly({0.0, 1.0}, {{0.0, 1.0}}));
        const HolderReport rep = certify_holder(f, 1, 1.0, 1000);
        CHECK(rep.pass);
        CHECK(rep.resolved);
        CHECK(rep.max_ratio_f == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.max_ratio_deriv == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("|x - 1/2| is 1-Holder but not 2-Holder") {
        const RewardCurve f = RewardCurve::piecewise(
            PiecewisePoly({0.0, 0.5, 1.0}, {{0.5, -1.0}, {0.0, 1.0}}));
        const HolderReport ok = certify_holder(f, 1, 1.0, 10000);
        CHECK(ok.pass);
        const HolderReport bad = certify_holder(f, 2, 10.0, 10000);
        CHECK_FALSE(bad.pass);
        // The second-difference ratio diverges like 2 * grid_n at the kink.
        CHECK(bad.max_ratio_deriv > 1e4);
        CHECK_FALSE(bad.resolved);
    }
    SUBCASE("mean-amplitude sinusoid: sup |mu''| = pi^2, pass at 10, fail at 9") {
        const double nu = 4.0;
        const double amp = 0.25 / (nu * nu);
        const RewardCurve f = RewardCurve::sinusoidal({amp, nu, 0.7, amp});
        const HolderReport at10 = certify_holder(f, 2, 10.0, 10000);
        CHECK(at10.pass);
        CHECK(at10.max_ratio_deriv ==
              doctest::Approx(9.869604401089358).epsilon(1e-5));  // pi^2
        const HolderReport at9 = certify_holder(f, 2, 9.0, 10000);
        CHECK_FALSE(at9.pass);
    }
    SUBCASE("sampled instances pass at L = 1.05 |A| (2 pi nu)^2") {
        Rng rng(99);
        for (int i = 0; i < 25; ++i) {
            const BanditInstance inst = sample_sinusoidal_instance(rng, 128);
            const SinusoidalParams p = inst.arms[1].sinusoidal_params();
            const double L = 1.05 * std::fabs(p.amplitude) * kTwoPi * kTwoPi * p.frequency *
                             p.frequency;
            const HolderReport rep = certify_holder(inst.arms[1], 2, L, 2000);
            INFO("A=", p.amplitude, " nu=", p.frequency);
            CHECK(rep.pass);
        }
    }
    SUBCASE("family curves certify with L = 1 + 1e-6 on the highest derivative") {
        struct Case { int beta; std::int64_t T; };
        for (const Case c : {Case{1, 1 << 14}, Case{2, 1 << 16}, Case{3, std::int64_t{1} << 30}}) {
            FamilySpec probe = FamilySpec::make(c.beta, c.T);
            ColorSeq colors(static_cast<std::size_t>(probe.epochs), EpochColor::bowl);
            colors[0] = EpochColor::red;  // mix in a transition
            const RewardCurve f = RewardCurve::family(FamilySpec::make(c.beta, c.T, colors));
            const HolderReport rep = certify_holder(f, c.beta, 1.0 + 1e-6, 8192);
            INFO("beta=", c.beta);
            CHECK(rep.pass);
        }
    }
    SUBCASE("a grid too coarse for the frequency is flagged unresolved") {
        const RewardCurve f = RewardCurve::sinusoidal({0.2, 5.0, 0.3, 0.2});
        const HolderReport rep = certify_holder(f, 1, 10.0, 14);
        CHECK_FALSE(rep.resolved);
        CHECK_FALSE(rep.pass);
    }
    CHECK_THROWS_AS(certify_holder(RewardCurve::constant(0.0), 1, 1.0, 5),
                    std::invalid_argument);
}

TEST_CASE("sign_structure") {
    SUBCASE("one-armed linear ramp: negative, crossing, then positive") {
        const RewardCurve mu = RewardCurve::piecewise(PiecewisePoly({0.0, 1.0}, {{-0.3, 1.0}}));
        const BanditInstance inst = one_armed(mu, 100);
        const SignStructure s = sign_structure(inst, 0.2, 64);
        REQUIRE(s.epoch_labels.size() == 5);
        CHECK(s.epoch_labels[0] == EpochSign::negative);
        CHECK(s.epoch_labels[1] == EpochSign::crossing);
        CHECK(s.epoch_labels[2] == EpochSign::positive);
        CHECK(s.epoch_labels[3] == EpochSign::positive);
        CHECK(s.epoch_labels[4] == EpochSign::positive);
        for (bool st : s.stationary) CHECK_FALSE(st);
        for (int d : s.stationary_distance) CHECK(d == -1);
    }
    SUBCASE("constant positive mean: all epochs positive and stationary") {
        const BanditInstance inst = one_armed(RewardCurve::constant(0.5), 100);
        const SignStructure s = sign_structure(inst, 0.2, 32);
        for (auto l : s.epoch_labels) CHECK(l == EpochSign::positive);
        for (bool st : s.stationary) CHECK(st);
        for (int d : s.stationary_distance) CHECK(d == 0);
    }
    SUBCASE("sine gap: crossings exactly at epochs containing k/5") {
        // gap = 0.05 sin(2 pi 2.5 x): amplitude -0.05 with offset 0 flips the sign.
        const RewardCurve arm1 = RewardCurve::sinusoidal({-0.05, 2.5, 0.0, 0.0});
        const BanditInstance inst = BanditInstance({RewardCurve::constant(0.0), arm1}, 1000);
        const SignStructure s = sign_structure(inst, 0.1, 50);
        REQUIRE(s.epoch_labels.size() == 10);
        const std::vector<int> crossing = {0, 2, 4, 6, 8, 9};
        for (int i = 0; i < 10; ++i) {
            const bool want = std::find(crossing.begin(), crossing.end(), i) != crossing.end();
            INFO("epoch ", i);
            CHECK((s.epoch_labels[size_t(i)] == EpochSign::crossing) == want);
        }
        // Stationary epochs are those containing the sine extrema (2k+1)/10.
        for (int i : {1, 3, 5, 7, 9}) CHECK(s.stationary[size_t(i)]);
        for (int i : {1, 3, 5, 7, 9}) CHECK(s.stationary_distance[size_t(i)] == 0);
        for (int i : {0, 2, 4, 6, 8}) CHECK(s.stationary_distance[size_t(i)] == 1);
        // Refining the grid leaves the labels unchanged.
        const SignStructure fine = sign_structure(inst, 0.1, 100);
        CHECK(fine.epoch_labels == s.epoch_labels);
        const SignStructure finer = sign_structure(inst, 0.1, 200);
        CHECK(finer.epoch_labels == s.epoch_labels);
    }
}
