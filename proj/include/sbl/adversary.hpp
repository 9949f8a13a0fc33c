#pragma once

#include <cstdint>

#include "sbl/construction.hpp"
#include "sbl/policies.hpp"

namespace sbl {

// Greedy adaptive adversary over the bowl/red family: epoch by epoch it
// estimates the epoch regret under both colors with paired rollouts sharing
// reward noise, then fixes the color with the larger estimate.
struct AdversaryConfig {
    int beta = 1;
    std::int64_t horizon = 0;
    int rollouts_per_decision = 64;  // R, paired per color
    int eval_rollouts = 64;          // fresh-seed estimate of the final sequence
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct FamilyRegretEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

// Mean-based total regret of the policy on the family instance with the given
// colors, over n fresh rollouts seeded from master_seed.
FamilyRegretEstimate evaluate_colors(const ColorSeq& colors, const PolicySpec& policy, int beta,
                                     std::int64_t horizon, int rollouts,
                                     std::uint64_t master_seed);

struct AdversaryResult {
    ColorSeq colors;
    double estimated_regret = 0.0;
    double stderr_of_mean = 0.0;
    double lower_bound = 0.0;   // lb_value(beta, T)
    double ratio = 0.0;         // estimated_regret / lower_bound
};

AdversaryResult greedy_adversary(const PolicySpec& policy, const AdversaryConfig& config);

}  // namespace sbl
