#include "sbl/info_theory.hpp"

#include "sbl/construction.hpp"

namespace sbl {

EpochDistinguishability epoch_distinguishability(int beta, std::int64_t horizon) {
    const double delta = delta_for(beta, horizon);
    const double c = growth_constant(beta);
    const double b = static_cast<double>(beta);
    EpochDistinguishability out;
    out.kl_budget = std::pow(2.0, 2.0 * b) * c * c / 3.0 * std::pow(delta, 2.0 * b) * 6.0 *
                    delta * static_cast<double>(horizon);
    out.prob_gap = pinsker_gap(out.kl_budget);
    return out;
}

double lb_value(int beta, std::int64_t horizon) {
    if (beta < 1) throw std::invalid_argument("lb_value: beta must be >= 1");
    const double c = growth_constant(beta);
    const double b = static_cast<double>(beta);
    return (1.0 / 24.0) * std::pow(2.0, -b) * std::pow(c, -2.0 * b / (2.0 * b + 1.0)) *
           std::pow(static_cast<double>(horizon), (b + 1.0) / (2.0 * b + 1.0));
}

}  // namespace sbl
