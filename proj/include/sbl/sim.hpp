#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbl/policies.hpp"
#include "sbl/reward_curve.hpp"
#include "sbl/rng.hpp"

namespace sbl {

// One +-1 reward draw with the requested mean: +1 with probability (1+r)/2.
int draw_reward(Rng& rng, double mean);

// (master_seed, trial_index) fully determine all randomness of a run: the
// trial stream is splitmix64_at(master_seed, trial_index), consumed in round
// order by the selected arm only. Two policies replayed against the same
// (master_seed, trial_index) therefore share reward noise.
struct RunConfig {
    std::uint64_t master_seed = 0;
    std::int64_t trial_index = 0;
    const BanditInstance* instance = nullptr;
    PolicySpec policy;
    bool record_trajectory = false;
};

struct RegretReport {
    double realized_regret = 0.0;          // sum r*(t) - Y_t
    double mean_regret = 0.0;              // sum r*(t) - r_{A_t}(t)
    std::vector<double> per_epoch;         // mean-based, sums to mean_regret
    std::vector<std::int64_t> pulls;       // per arm
    std::int64_t clean_violations = -1;    // filled only when a scan ran
    // Trajectory of the played arm, only when record_trajectory is set.
    std::vector<double> traj_means;
    std::vector<int> traj_draws;
};

// Per-arm mean rewards r_a(t) tabulated for t = 1..T (index t-1). Lets many
// trials of one instance skip repeated curve evaluation.
struct MeansTable {
    std::vector<std::vector<double>> per_arm;
    std::int64_t horizon = 0;
};

MeansTable tabulate_means(const BanditInstance& instance);

RegretReport run_episode(const RunConfig& config);
RegretReport run_episode(const RunConfig& config, const MeansTable& table);

// Interval concentration scan over a recorded trajectory; stores the
// two-sided violation count in clean_violations. Needs record_trajectory.
void scan_trajectory(RegretReport& report, double log_T, std::optional<int> k_arms = {});

std::string to_json_string(const RegretReport& report);

struct MonteCarloResult {
    double mean = 0.0;
    std::optional<double> stderr_of_mean;  // absent when n_trials < 2
    std::vector<double> per_trial;         // mean_regret, ascending trial order
};

// Trials run in parallel; trial i uses trial_index = i and results aggregate
// in ascending order, so output is identical for any worker count.
MonteCarloResult monte_carlo(const RunConfig& base, int n_trials,
                             const MeansTable* table = nullptr);

MonteCarloResult summarize(const std::vector<double>& values);

// Monte-Carlo check of the stopped-sum identity E[sum Z] = E[sum r] over the
// first epoch of a one-armed instance under the be1 stopping rule.
struct WaldProbe {
    double mean_z = 0.0;
    double mean_r = 0.0;
    double se_z = 0.0;
    double se_r = 0.0;
    std::int64_t trials = 0;
    double combined_se() const;
};

WaldProbe wald_probe(const BanditInstance& instance, const BEConfig& config, int n_trials,
                     std::uint64_t master_seed);

}  // namespace sbl
