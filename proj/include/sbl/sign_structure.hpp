#pragma once

#include <vector>

#include "sbl/reward_curve.hpp"

namespace sbl {

enum class EpochSign { positive, negative, crossing };

// Sign/stationarity classification of the arm-1 advantage g = mu_1 - mu_0
// over the floor-based epoch layout. A crossing epoch has a sign change (or a
// zero) of g on the evaluation grid; a stationary epoch contains a grid point
// where the grid derivative of g vanishes or changes sign.
struct SignStructure {
    std::vector<EpochSign> epoch_labels;
    std::vector<bool> stationary;
    // Index distance to the nearest stationary epoch; -1 when none exists.
    std::vector<int> stationary_distance;
};

SignStructure sign_structure(const BanditInstance& instance, double delta, int grid_per_epoch);

}  // namespace sbl
