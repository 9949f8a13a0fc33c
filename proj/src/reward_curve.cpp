#include "sbl/reward_curve.hpp"

#include <cmath>
#include <stdexcept>

namespace sbl {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kBoundsGrid = 4096;
constexpr double kBoundsSlack = 1e-12;
}  // namespace

RewardCurve RewardCurve::constant(double value) {
    RewardCurve c;
    c.kind_ = Kind::constant;
    c.constant_ = value;
    c.check_bounds();
    return c;
}

RewardCurve RewardCurve::sinusoidal(const SinusoidalParams& params) {
    RewardCurve c;
    c.kind_ = Kind::sinusoidal;
    c.sinusoidal_ = params;
    c.check_bounds();
    return c;
}

RewardCurve RewardCurve::piecewise(PiecewisePoly poly) {
    RewardCurve c;
    c.kind_ = Kind::piecewise;
    c.poly_ = std::make_shared<const PiecewisePoly>(std::move(poly));
    c.check_bounds();
    return c;
}

RewardCurve RewardCurve::family(FamilySpec spec) {
    RewardCurve c;
    c.kind_ = Kind::family;
    c.poly_ = std::make_shared<const PiecewisePoly>(family_poly(spec));
    c.family_spec_ = std::make_shared<const FamilySpec>(std::move(spec));
    c.check_bounds();
    return c;
}

double RewardCurve::operator()(double x) const {
    switch (kind_) {
        case Kind::constant:
            return constant_;
        case Kind::sinusoidal:
            return sinusoidal_.offset -
                   sinusoidal_.amplitude *
                       std::sin(kTwoPi * sinusoidal_.frequency * x + sinusoidal_.phase);
        case Kind::piecewise:
        case Kind::family:
            return (*poly_)(x);
    }
    return 0.0;
}

RewardCurve RewardCurve::shifted(double dc) const {
    if (dc == 0.0) return *this;
    switch (kind_) {
        case Kind::constant:
            return constant(constant_ + dc);
        case Kind::sinusoidal: {
            SinusoidalParams p = sinusoidal_;
            p.offset += dc;
            return sinusoidal(p);
        }
        default:
            throw std::invalid_argument("RewardCurve::shifted: unsupported curve kind");
    }
}

void RewardCurve::check_bounds() const {
    for (int i = 0; i <= kBoundsGrid; ++i) {
        const double x = static_cast<double>(i) / kBoundsGrid;
        const double v = (*this)(x);
        if (!(std::fabs(v) <= 1.0 + kBoundsSlack)) {
            throw std::domain_error("RewardCurve: |value| exceeds 1 on [0, 1]");
        }
    }
}

BanditInstance::BanditInstance(std::vector<RewardCurve> arms_, std::int64_t horizon_)
    : arms(std::move(arms_)), horizon(horizon_) {
    if (arms.size() < 2) throw std::invalid_argument("BanditInstance: need at least 2 arms");
    if (horizon < 1) throw std::invalid_argument("BanditInstance: horizon must be >= 1");
}

double eval_mean(const RewardCurve& curve, std::int64_t t, std::int64_t horizon) {
    if (t < 1 || t > horizon) throw std::domain_error("eval_mean: round out of [1, T]");
    return curve(static_cast<double>(t) / static_cast<double>(horizon));
}

BanditInstance one_armed(RewardCurve curve, std::int64_t horizon) {
    std::vector<RewardCurve> arms;
    arms.push_back(RewardCurve::constant(0.0));
    arms.push_back(std::move(curve));
    return BanditInstance(std::move(arms), horizon);
}

BanditInstance sample_sinusoidal_instance(Rng& rng, std::int64_t horizon) {
    const double nu = rng.uniform(2.5, 5.0);
    const double amp = rng.normal(0.25 / (nu * nu), std::sqrt(0.001));
    const double phi = rng.uniform(0.0, kTwoPi);
    std::vector<RewardCurve> arms;
    arms.push_back(RewardCurve::constant(amp));
    arms.push_back(RewardCurve::sinusoidal({amp, nu, phi, amp}));
    return BanditInstance(std::move(arms), horizon);
}

BanditInstance one_armed_view(const BanditInstance& instance) {
    if (instance.arms[0].kind() != RewardCurve::Kind::constant) {
        throw std::invalid_argument("one_armed_view: arm 0 must have a constant mean");
    }
    const double base = instance.arms[0].constant_value();
    std::vector<RewardCurve> arms;
    arms.reserve(instance.arms.size());
    for (const auto& a : instance.arms) arms.push_back(a.shifted(-base));
    return BanditInstance(std::move(arms), instance.horizon);
}

}  // namespace sbl
