#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sbl/epoch_layout.hpp"
#include "sbl/reward_curve.hpp"

namespace sbl {

// Budgeted Exploration parameters: exploration budget B, epoch length Delta
// (normalized time), and the number of arms including the static one.
struct BEConfig {
    double budget = 1.0;   // B
    double delta = 1.0;    // Delta
    int arms = 2;          // k

    BEConfig(double budget_, double delta_, int arms_ = 2);
};

enum class ParamStyle { theoretical, experiment };

// Parameter schedules. Experiment style: (B, Delta) = (T^{1/3}, T^{-1/3}) for
// beta = 1 and (T^{2/5}, T^{-1/5}) for beta = 2. Theoretical style restores
// the L and log corrections. k > 2 uses the k-armed schedule
// Delta = k^{-3/5} T^{-2/5} (ln T)^{1/5} (ln k)^{1/5}, B = sqrt(Delta T ln T ln k / k).
BEConfig default_params(int beta, std::int64_t horizon, double lipschitz, int arms,
                        ParamStyle style);

enum class BEPhase { explore, commit };

// Per-epoch exploration state shared by the one-, two- and k-armed steppers.
struct BEState {
    int epoch_index = -1;
    BEPhase phase = BEPhase::explore;
    std::vector<double> cum_reward;   // within-epoch, per arm
    std::vector<std::int64_t> pulls;  // within-epoch, per arm
    std::vector<int> active;          // surviving arms (bek), ascending
    int committed_arm = -1;
    int last_arm = -1;
    std::int64_t next_round = 1;      // expected t of the next call
    double pair_first_reward = 0.0;   // be2: Z_0 of the open pair
    double pair_diff_sum = 0.0;       // be2: running sum of (Z_0 - Z_1)
    std::size_t rr_pos = 0;           // bek: cursor into active
};

// One call per round, t strictly advancing by 1; last_reward is the realized
// reward of the previous call's arm (absent on the first call). Out-of-order
// rounds throw. Each stepper resets its state at epoch boundaries.

// Algorithm: play arm 1 until the within-epoch cumulative reward drops to
// -B or below, then arm 0 for the rest of the epoch.
int be1_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward);

// Two-armed variant: alternate 0,1,0,1,...; after each completed pair update
// D = sum(Z_0 - Z_1) and commit to the within-epoch leader once |D| > B.
int be2_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward);

// k-armed variant: round-robin the active set; after each completed cycle
// eliminate arms trailing the best cumulative reward by more than B.
int bek_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward);

// Uniform stepper interface for the simulation engine.
class Policy {
public:
    virtual ~Policy() = default;
    virtual int step(std::int64_t t, std::optional<double> last_reward) = 0;
    virtual void reset() = 0;
};

std::unique_ptr<Policy> make_be1(const BEConfig& config, std::int64_t horizon);
std::unique_ptr<Policy> make_be2(const BEConfig& config, std::int64_t horizon);
std::unique_ptr<Policy> make_bek(const BEConfig& config, std::int64_t horizon);
// Plays argmax_a r_a(t) with ties to the lowest index (simulation only).
std::unique_ptr<Policy> make_oracle(const BanditInstance& instance);
std::unique_ptr<Policy> make_fixed_arm(int arm);

// JSON-serializable policy description:
//   {"policy": "be1"|"be2"|"bek"|"oracle"|"fixed", "B":..., "Delta":..., "k":..., "arm":...}
struct PolicySpec {
    std::string policy;
    std::optional<double> budget;
    std::optional<double> delta;
    std::optional<int> arms;
    std::optional<int> arm;

    static PolicySpec be1(double budget, double delta);
    static PolicySpec be2(double budget, double delta);
    static PolicySpec bek(double budget, double delta, int arms);
    static PolicySpec oracle();
    static PolicySpec fixed(int arm);

    std::string to_json_string() const;
    static PolicySpec from_json_string(const std::string& text);
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const BanditInstance& instance);

}  // namespace sbl
