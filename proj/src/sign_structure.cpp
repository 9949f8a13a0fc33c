#include "sbl/sign_structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbl/epoch_layout.hpp"

namespace sbl {

SignStructure sign_structure(const BanditInstance& instance, double delta, int grid_per_epoch) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("sign_structure: delta must be in (0, 1)");
    }
    if (grid_per_epoch < 2) {
        throw std::invalid_argument("sign_structure: need at least 2 grid points per epoch");
    }
    const RewardCurve& arm0 = instance.arms[0];
    const RewardCurve& arm1 = instance.arms[1];
    const EpochLayout layout(instance.horizon, delta);
    const int m = layout.epoch_count();
    const double T = static_cast<double>(instance.horizon);

    // Full grid: epoch i contributes points on [x_i, x_{i+1}) closed on the
    // left; the final point 1.0 belongs to the last epoch.
    std::vector<double> xs;
    std::vector<int> epoch_of_point;
    xs.reserve(static_cast<std::size_t>(m) * grid_per_epoch + 1);
    for (int i = 0; i < m; ++i) {
        const double lo = static_cast<double>(layout.boundaries()[static_cast<std::size_t>(i)]) / T;
        const double hi =
            static_cast<double>(layout.boundaries()[static_cast<std::size_t>(i) + 1]) / T;
        for (int k = 0; k < grid_per_epoch; ++k) {
            xs.push_back(lo + (hi - lo) * k / grid_per_epoch);
            epoch_of_point.push_back(i);
        }
    }
    xs.push_back(1.0);
    epoch_of_point.push_back(m - 1);

    std::vector<double> gap(xs.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gap[i] = arm1(xs[i]) - arm0(xs[i]);
        scale = std::max(scale, std::fabs(gap[i]));
    }
    const double ztol = 1e-12 * std::max(scale, 1.0);

    SignStructure out;
    out.epoch_labels.assign(static_cast<std::size_t>(m), EpochSign::positive);
    out.stationary.assign(static_cast<std::size_t>(m), false);

    // Sign labels.
    std::vector<bool> has_pos(static_cast<std::size_t>(m), false);
    std::vector<bool> has_neg(static_cast<std::size_t>(m), false);
    std::vector<bool> has_zero(static_cast<std::size_t>(m), false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto e = static_cast<std::size_t>(epoch_of_point[i]);
        if (std::fabs(gap[i]) <= ztol) has_zero[e] = true;
        else if (gap[i] > 0.0) has_pos[e] = true;
        else has_neg[e] = true;
    }
    for (int i = 0; i < m; ++i) {
        const auto e = static_cast<std::size_t>(i);
        if (has_zero[e] || (has_pos[e] && has_neg[e])) out.epoch_labels[e] = EpochSign::crossing;
        else if (has_neg[e]) out.epoch_labels[e] = EpochSign::negative;
    }

    // Stationarity from the grid derivative; exact ties count as stationary.
    std::vector<double> dg(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        dg[i] = (gap[i + 1] - gap[i]) / (xs[i + 1] - xs[i]);
    }
    const double dtol = 1e-12 * std::max(scale, 1.0);
    for (std::size_t i = 0; i < dg.size(); ++i) {
        const auto e = static_cast<std::size_t>(epoch_of_point[i]);
        if (std::fabs(dg[i]) <= dtol) out.stationary[e] = true;
        if (i > 0 && dg[i - 1] * dg[i] < 0.0) out.stationary[e] = true;
    }

    // Distances.
    out.stationary_distance.assign(static_cast<std::size_t>(m), -1);
    std::vector<int> stationary_idx;
    for (int i = 0; i < m; ++i) {
        if (out.stationary[static_cast<std::size_t>(i)]) stationary_idx.push_back(i);
    }
    if (!stationary_idx.empty()) {
        for (int i = 0; i < m; ++i) {
            int best = m;
            for (int s : stationary_idx) best = std::min(best, std::abs(i - s));
            out.stationary_distance[static_cast<std::size_t>(i)] = best;
        }
    }
    return out;
}

}  // namespace sbl
