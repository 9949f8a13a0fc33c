#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sbl/construction.hpp"
#include "sbl/piecewise_poly.hpp"
#include "sbl/rng.hpp"

namespace sbl {

// mu(x) = offset - amplitude * sin(2*pi*frequency*x + phase).
// The experiment family draws offset = amplitude, so the curve touches 0.
struct SinusoidalParams {
    double amplitude = 0.0;
    double frequency = 0.0;  // cycles per unit normalized time
    double phase = 0.0;      // radians
    double offset = 0.0;
};

// An evaluable mean-reward function mu: [0,1] -> [-1,1]. Immutable after
// construction; |mu| <= 1 is checked on a dense grid and violations throw.
class RewardCurve {
public:
    enum class Kind { constant, sinusoidal, piecewise, family };

    static RewardCurve constant(double value);
    static RewardCurve sinusoidal(const SinusoidalParams& params);
    static RewardCurve piecewise(PiecewisePoly poly);
    static RewardCurve family(FamilySpec spec);

    Kind kind() const { return kind_; }
    double constant_value() const { return constant_; }
    const SinusoidalParams& sinusoidal_params() const { return sinusoidal_; }
    const FamilySpec& family_spec() const { return *family_spec_; }
    const PiecewisePoly& poly() const { return *poly_; }

    double operator()(double x) const;

    // Same curve shifted by a constant; supported for constant and sinusoidal
    // kinds (used by the one-armed reduction).
    RewardCurve shifted(double dc) const;

private:
    RewardCurve() = default;
    void check_bounds() const;

    Kind kind_ = Kind::constant;
    double constant_ = 0.0;
    SinusoidalParams sinusoidal_;
    std::shared_ptr<const PiecewisePoly> poly_;
    std::shared_ptr<const FamilySpec> family_spec_;
};

struct BanditInstance {
    std::vector<RewardCurve> arms;  // index 0 first
    std::int64_t horizon = 0;

    BanditInstance(std::vector<RewardCurve> arms_, std::int64_t horizon_);
    int arm_count() const { return static_cast<int>(arms.size()); }
};

// mu(t / T) for round t in [1, T]; out-of-range rounds throw.
double eval_mean(const RewardCurve& curve, std::int64_t t, std::int64_t horizon);

// One-armed helper: [Constant(0), curve].
BanditInstance one_armed(RewardCurve curve, std::int64_t horizon);

// The random trigonometric experiment family:
//   r_0(t) = A,  r_1(t) = A - A sin(2 pi nu t / T + phi),
//   nu ~ U[2.5, 5],  A ~ N(0.25 nu^-2, 0.001),  phi ~ U[0, 2 pi].
// Negative A draws are kept; they flip the phase and stay bounded.
BanditInstance sample_sinusoidal_instance(Rng& rng, std::int64_t horizon);

// Subtracts the static arm's constant mean from every arm, yielding the
// regret-equivalent instance with r_0 = 0. Requires arm 0 to be constant.
BanditInstance one_armed_view(const BanditInstance& instance);

}  // namespace sbl
