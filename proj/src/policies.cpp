#include "sbl/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sbl {

BEConfig::BEConfig(double budget_, double delta_, int arms_)
    : budget(budget_), delta(delta_), arms(arms_) {
    if (!(budget > 0.0)) throw std::invalid_argument("BEConfig: budget must be positive");
    if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("BEConfig: delta in (0, 1]");
    if (arms < 2) throw std::invalid_argument("BEConfig: need at least 2 arms");
}

BEConfig default_params(int beta, std::int64_t horizon, double lipschitz, int arms,
                        ParamStyle style) {
    if (horizon < 16) throw std::invalid_argument("default_params: horizon must be >= 16");
    const double T = static_cast<double>(horizon);
    const double logT = std::log(T);
    double budget = 0.0;
    double delta = 0.0;
    if (arms > 2) {
        const double k = static_cast<double>(arms);
        const double logk = std::log(k);
        delta = std::pow(k, -0.6) * std::pow(T, -0.4) * std::pow(logT, 0.2) * std::pow(logk, 0.2);
        budget = std::sqrt(delta * T * logT * logk / k);
    } else {
        if (beta != 1 && beta != 2) {
            throw std::invalid_argument("default_params: beta must be 1 or 2");
        }
        const double L = lipschitz;
        if (style == ParamStyle::experiment) {
            if (beta == 1) {
                budget = std::pow(T, 1.0 / 3.0);
                delta = std::pow(T, -1.0 / 3.0);
            } else {
                budget = std::pow(T, 2.0 / 5.0);
                delta = std::pow(T, -1.0 / 5.0);
            }
        } else {
            if (!(L > 0.0)) throw std::invalid_argument("default_params: L must be positive");
            if (beta == 1) {
                delta = std::pow(L, -2.0 / 3.0) * std::pow(T, -1.0 / 3.0) * std::pow(logT, 1.0 / 3.0);
                budget = std::pow(L, -1.0 / 3.0) * std::pow(T, 1.0 / 3.0) * std::pow(logT, 2.0 / 3.0);
            } else {
                delta = std::pow(L, -2.0 / 5.0) * std::pow(T, -1.0 / 5.0) * std::pow(logT, 1.0 / 5.0);
                budget = std::pow(L, -1.0 / 5.0) * std::pow(T, 2.0 / 5.0) * std::pow(logT, 3.0 / 5.0);
            }
        }
    }
    if (delta >= 1.0 || budget >= delta * T) {
        throw std::invalid_argument("default_params: degenerate epoch (Delta >= 1 or B >= Delta*T)");
    }
    return BEConfig(budget, delta, arms);
}

namespace {

// Shared prologue: validate the round counter, reset state at epoch
// boundaries, and hand back the previous reward when it belongs to the
// current epoch. Returns true when a reset happened.
bool advance_round(BEState& state, const EpochLayout& layout, std::int64_t t,
                   const std::optional<double>& last_reward, int arms) {
    if (t != state.next_round) throw std::logic_error("policy step: rounds must advance by 1");
    if (t < 1 || t > layout.horizon()) throw std::logic_error("policy step: round out of range");
    if (t > 1 && !last_reward.has_value()) {
        throw std::logic_error("policy step: missing reward for the previous round");
    }
    state.next_round = t + 1;
    const int epoch = layout.epoch_of(t);
    if (epoch != state.epoch_index) {
        state.epoch_index = epoch;
        state.phase = BEPhase::explore;
        state.cum_reward.assign(static_cast<std::size_t>(arms), 0.0);
        state.pulls.assign(static_cast<std::size_t>(arms), 0);
        state.active.resize(static_cast<std::size_t>(arms));
        for (int a = 0; a < arms; ++a) state.active[static_cast<std::size_t>(a)] = a;
        state.committed_arm = -1;
        state.last_arm = -1;
        state.pair_first_reward = 0.0;
        state.pair_diff_sum = 0.0;
        state.rr_pos = 0;
        return true;
    }
    return false;
}

void record_reward(BEState& state, double reward) {
    const auto a = static_cast<std::size_t>(state.last_arm);
    state.cum_reward[a] += reward;
    state.pulls[a] += 1;
}

}  // namespace

int be1_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward) {
    const bool fresh = advance_round(state, layout, t, last_reward, 2);
    if (!fresh && state.last_arm >= 0) {
        record_reward(state, *last_reward);
        if (state.phase == BEPhase::explore && state.last_arm == 1 &&
            state.cum_reward[1] <= -config.budget) {
            state.phase = BEPhase::commit;
            state.committed_arm = 0;
        }
    }
    state.last_arm = state.phase == BEPhase::explore ? 1 : state.committed_arm;
    return state.last_arm;
}

int be2_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward) {
    const bool fresh = advance_round(state, layout, t, last_reward, 2);
    if (!fresh && state.last_arm >= 0) {
        record_reward(state, *last_reward);
        if (state.phase == BEPhase::explore) {
            if (state.last_arm == 0) {
                state.pair_first_reward = *last_reward;
            } else {
                state.pair_diff_sum += state.pair_first_reward - *last_reward;
                if (std::fabs(state.pair_diff_sum) > config.budget) {
                    state.phase = BEPhase::commit;
                    // Leader by within-epoch cumulative reward; the strict
                    // trigger rules out ties, arm 0 if one ever appeared.
                    state.committed_arm = state.cum_reward[1] > state.cum_reward[0] ? 1 : 0;
                }
            }
        }
    }
    if (state.phase == BEPhase::commit) {
        state.last_arm = state.committed_arm;
    } else {
        const std::int64_t offset = t - layout.epoch_start(state.epoch_index);
        state.last_arm = static_cast<int>(offset & 1);
    }
    return state.last_arm;
}

int bek_step(BEState& state, const BEConfig& config, const EpochLayout& layout, std::int64_t t,
             std::optional<double> last_reward) {
    const bool fresh = advance_round(state, layout, t, last_reward, config.arms);
    if (!fresh && state.last_arm >= 0) {
        record_reward(state, *last_reward);
        if (state.phase == BEPhase::explore && state.last_arm == state.active.back()) {
            // A round-robin cycle just completed; all active arms share the
            // same pull count here.
            double best = state.cum_reward[static_cast<std::size_t>(state.active.front())];
            for (int a : state.active) {
                best = std::max(best, state.cum_reward[static_cast<std::size_t>(a)]);
            }
            std::vector<int> survivors;
            survivors.reserve(state.active.size());
            for (int a : state.active) {
                if (best - state.cum_reward[static_cast<std::size_t>(a)] <= config.budget) {
                    survivors.push_back(a);
                }
            }
            state.active = std::move(survivors);
            state.rr_pos = 0;
            if (state.active.size() == 1) {
                state.phase = BEPhase::commit;
                state.committed_arm = state.active.front();
            }
        }
    }
    if (state.phase == BEPhase::commit) {
        state.last_arm = state.committed_arm;
    } else {
        state.last_arm = state.active[state.rr_pos];
        state.rr_pos = (state.rr_pos + 1) % state.active.size();
    }
    return state.last_arm;
}

namespace {

template <int (*StepFn)(BEState&, const BEConfig&, const EpochLayout&, std::int64_t,
                        std::optional<double>)>
class BeStepperPolicy final : public Policy {
public:
    BeStepperPolicy(const BEConfig& config, std::int64_t horizon)
        : config_(config), layout_(horizon, config.delta) {}

    int step(std::int64_t t, std::optional<double> last_reward) override {
        return StepFn(state_, config_, layout_, t, last_reward);
    }
    void reset() override { state_ = BEState{}; }

private:
    BEConfig config_;
    EpochLayout layout_;
    BEState state_;
};

class OraclePolicy final : public Policy {
public:
    explicit OraclePolicy(const BanditInstance& instance) : instance_(&instance) {}

    int step(std::int64_t t, std::optional<double>) override {
        int best = 0;
        double best_mean = eval_mean(instance_->arms[0], t, instance_->horizon);
        for (int a = 1; a < instance_->arm_count(); ++a) {
            const double m = eval_mean(instance_->arms[static_cast<std::size_t>(a)], t,
                                       instance_->horizon);
            if (m > best_mean) {
                best_mean = m;
                best = a;
            }
        }
        return best;
    }
    void reset() override {}

private:
    const BanditInstance* instance_;
};

class FixedArmPolicy final : public Policy {
public:
    explicit FixedArmPolicy(int arm) : arm_(arm) {
        if (arm < 0) throw std::invalid_argument("fixed_arm: arm index must be >= 0");
    }
    int step(std::int64_t, std::optional<double>) override { return arm_; }
    void reset() override {}

private:
    int arm_;
};

}  // namespace

std::unique_ptr<Policy> make_be1(const BEConfig& config, std::int64_t horizon) {
    return std::make_unique<BeStepperPolicy<&be1_step>>(config, horizon);
}
std::unique_ptr<Policy> make_be2(const BEConfig& config, std::int64_t horizon) {
    return std::make_unique<BeStepperPolicy<&be2_step>>(config, horizon);
}
std::unique_ptr<Policy> make_bek(const BEConfig& config, std::int64_t horizon) {
    return std::make_unique<BeStepperPolicy<&bek_step>>(config, horizon);
}
std::unique_ptr<Policy> make_oracle(const BanditInstance& instance) {
    return std::make_unique<OraclePolicy>(instance);
}
std::unique_ptr<Policy> make_fixed_arm(int arm) {
    return std::make_unique<FixedArmPolicy>(arm);
}

PolicySpec PolicySpec::be1(double budget, double delta) {
    return {.policy = "be1", .budget = budget, .delta = delta, .arms = {}, .arm = {}};
}
PolicySpec PolicySpec::be2(double budget, double delta) {
    return {.policy = "be2", .budget = budget, .delta = delta, .arms = {}, .arm = {}};
}
PolicySpec PolicySpec::bek(double budget, double delta, int arms) {
    return {.policy = "bek", .budget = budget, .delta = delta, .arms = arms, .arm = {}};
}
PolicySpec PolicySpec::oracle() {
    return {.policy = "oracle", .budget = {}, .delta = {}, .arms = {}, .arm = {}};
}
PolicySpec PolicySpec::fixed(int arm) {
    return {.policy = "fixed", .budget = {}, .delta = {}, .arms = {}, .arm = arm};
}

std::string PolicySpec::to_json_string() const {
    nlohmann::json j;
    j["policy"] = policy;
    if (budget) j["B"] = *budget;
    if (delta) j["Delta"] = *delta;
    if (arms) j["k"] = *arms;
    if (arm) j["arm"] = *arm;
    return j.dump();
}

PolicySpec PolicySpec::from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PolicySpec spec;
    spec.policy = j.at("policy").get<std::string>();
    if (j.contains("B")) spec.budget = j["B"].get<double>();
    if (j.contains("Delta")) spec.delta = j["Delta"].get<double>();
    if (j.contains("k")) spec.arms = j["k"].get<int>();
    if (j.contains("arm")) spec.arm = j["arm"].get<int>();
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "policy" && key != "B" && key != "Delta" && key != "k" && key != "arm") {
            throw std::invalid_argument("PolicySpec: unknown key '" + key + "'");
        }
    }
    return spec;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const BanditInstance& instance) {
    if (spec.policy == "oracle") return make_oracle(instance);
    if (spec.policy == "fixed") {
        if (!spec.arm) throw std::invalid_argument("make_policy: fixed needs 'arm'");
        if (*spec.arm >= instance.arm_count()) {
            throw std::invalid_argument("make_policy: fixed arm out of range");
        }
        return make_fixed_arm(*spec.arm);
    }
    if (!spec.budget || !spec.delta) {
        throw std::invalid_argument("make_policy: BE policies need 'B' and 'Delta'");
    }
    if (spec.policy == "be1" || spec.policy == "be2") {
        if (instance.arm_count() != 2) {
            throw std::invalid_argument("make_policy: be1/be2 need exactly 2 arms");
        }
        const BEConfig config(*spec.budget, *spec.delta, 2);
        return spec.policy == "be1" ? make_be1(config, instance.horizon)
                                    : make_be2(config, instance.horizon);
    }
    if (spec.policy == "bek") {
        const int k = spec.arms.value_or(instance.arm_count());
        if (k != instance.arm_count()) {
            throw std::invalid_argument("make_policy: bek arm count mismatch");
        }
        return make_bek(BEConfig(*spec.budget, *spec.delta, k), instance.horizon);
    }
    throw std::invalid_argument("make_policy: unknown policy '" + spec.policy + "'");
}

}  // namespace sbl
