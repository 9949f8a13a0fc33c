#pragma once

#include "sbl/reward_curve.hpp"

namespace sbl {

// Finite-difference smoothness certificate. f is beta-Holder with constant L
// when f and f^(beta-1) are both L-Lipschitz; the (beta-1)-st derivative is
// estimated by iterated central differences with step 1/grid_n.
struct HolderReport {
    int beta = 1;
    double lipschitz_bound = 0.0;  // the L being certified against
    int grid_n = 0;
    double max_ratio_f = 0.0;      // observed Lipschitz ratio of f
    double max_ratio_deriv = 0.0;  // observed Lipschitz ratio of f^(beta-1)
    bool resolved = true;          // ratios stable under grid halving
    bool pass = false;
};

// Relative tolerance applied to L when deciding pass/fail.
inline constexpr double kHolderTolerance = 1e-3;

HolderReport certify_holder(const RewardCurve& curve, int beta, double lipschitz_bound,
                            int grid_n);

}  // namespace sbl
