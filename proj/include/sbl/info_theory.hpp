#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace sbl {

// KL divergence between +-1-valued variables with means r1 and r2:
//   (1+r1)/2 ln((1+r1)/(1+r2)) + (1-r1)/2 ln((1-r1)/(1-r2)).
// Degenerate r2 with r1 != r2 yields +infinity.
inline double kl_pm1(double r1, double r2) {
    if (!(std::fabs(r1) <= 1.0) || !(std::fabs(r2) <= 1.0)) {
        throw std::domain_error("kl_pm1: means must lie in [-1, 1]");
    }
    if (r1 == r2) return 0.0;
    if (std::fabs(r2) == 1.0) return std::numeric_limits<double>::infinity();
    const double p = 0.5 * (1.0 + r1);
    const double q = 0.5 * (1.0 + r2);
    double kl = 0.0;
    if (p > 0.0) kl += p * std::log(p / q);
    if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return kl;
}

// Largest achievable event-probability gap at a given divergence:
// 2 (P[Y in E] - P[X in E])^2 <= KL(X, Y), so the gap is sqrt(kl / 2).
inline double pinsker_gap(double kl) {
    if (kl < 0.0) throw std::domain_error("pinsker_gap: kl must be >= 0");
    return std::sqrt(kl / 2.0);
}

// Per-epoch distinguishability of adjacent family members: the total KL
// budget (2^{2 beta} C_beta^2 / 3) delta^{2 beta} * 6 delta T accumulated
// over one epoch, and the probability gap it allows. The choice of
// delta(beta, T) makes the gap come out at 1/2.
struct EpochDistinguishability {
    double kl_budget = 0.0;
    double prob_gap = 0.0;
};

EpochDistinguishability epoch_distinguishability(int beta, std::int64_t horizon);

// The worst-case regret floor (1/24) 2^{-beta} C_beta^{-2beta/(2beta+1)}
// T^{(beta+1)/(2beta+1)}.
double lb_value(int beta, std::int64_t horizon);

}  // namespace sbl
