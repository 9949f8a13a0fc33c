#include "sbl/holder.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbl {

namespace {

struct Ratios {
    double f = 0.0;
    double deriv = 0.0;
    double sup = 0.0;  // max |f| on the grid, for noise floors
};

Ratios ratios_on_grid(const RewardCurve& curve, int beta, int n) {
    const double h = 1.0 / n;
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    double sup = 0.0;
    for (int i = 0; i <= n; ++i) {
        v[static_cast<std::size_t>(i)] = curve(static_cast<double>(i) * h);
        sup = std::max(sup, std::fabs(v[static_cast<std::size_t>(i)]));
    }
    Ratios r;
    r.sup = sup;
    // First differences give the Lipschitz ratio of f; iterating to order
    // beta gives the ratio of the order-(beta-1) central-difference
    // derivative estimates between adjacent windows.
    std::size_t len = v.size();
    for (int order = 1; order <= beta; ++order) {
        --len;
        double worst = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = v[i + 1] - v[i];
            worst = std::max(worst, std::fabs(v[i]));
        }
        const double ratio = worst / std::pow(h, order);
        if (order == 1) r.f = ratio;
        if (order == beta) r.deriv = ratio;
    }
    return r;
}

// Stable under refinement, or below the float noise floor of the stencil.
bool stable(double full, double half, double floor) {
    const double diff = std::fabs(full - half);
    if (diff <= 0.05 * std::max(std::fabs(full), std::fabs(half))) return true;
    return std::fabs(full) <= floor && std::fabs(half) <= floor;
}

}  // namespace

HolderReport certify_holder(const RewardCurve& curve, int beta, double lipschitz_bound,
                            int grid_n) {
    if (beta < 1) throw std::invalid_argument("certify_holder: beta must be >= 1");
    if (grid_n < 10 * beta) {
        throw std::invalid_argument("certify_holder: grid_n must be at least 10*beta");
    }

    const Ratios full = ratios_on_grid(curve, beta, grid_n);
    const Ratios half = ratios_on_grid(curve, beta, grid_n / 2);

    HolderReport rep;
    rep.beta = beta;
    rep.lipschitz_bound = lipschitz_bound;
    rep.grid_n = grid_n;
    rep.max_ratio_f = full.f;
    rep.max_ratio_deriv = full.deriv;

    // Cancellation noise of an order-m difference stencil ~ 2^m eps sup / h^m.
    const double h = 1.0 / grid_n;
    const double eps = 1e3 * 2.220446049250313e-16 * std::max(full.sup, 1e-300);
    const double floor_f = eps * std::ldexp(1.0, 1) / h;
    const double floor_d = eps * std::ldexp(1.0, beta) / std::pow(h, beta);
    rep.resolved = stable(full.f, half.f, floor_f) && stable(full.deriv, half.deriv, floor_d);

    const double limit = lipschitz_bound * (1.0 + kHolderTolerance);
    rep.pass = rep.resolved && rep.max_ratio_f <= limit && rep.max_ratio_deriv <= limit;
    return rep;
}

}  // namespace sbl
