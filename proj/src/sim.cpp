#include "sbl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sbl/clean_event.hpp"
#include "sbl/epoch_layout.hpp"
#include "sbl/parallel.hpp"

namespace sbl {

int draw_reward(Rng& rng, double mean) {
    if (!(std::fabs(mean) <= 1.0)) throw std::domain_error("draw_reward: |mean| must be <= 1");
    return rng.uniform01() < 0.5 * (1.0 + mean) ? 1 : -1;
}

MeansTable tabulate_means(const BanditInstance& instance) {
    MeansTable table;
    table.horizon = instance.horizon;
    table.per_arm.resize(instance.arms.size());
    const double T = static_cast<double>(instance.horizon);
    for (std::size_t a = 0; a < instance.arms.size(); ++a) {
        auto& col = table.per_arm[a];
        col.resize(static_cast<std::size_t>(instance.horizon));
        for (std::int64_t t = 1; t <= instance.horizon; ++t) {
            col[static_cast<std::size_t>(t - 1)] = instance.arms[a](static_cast<double>(t) / T);
        }
    }
    return table;
}

namespace {

template <class MeansFn>
RegretReport simulate(const RunConfig& config, MeansFn&& mean_of) {
    const BanditInstance& inst = *config.instance;
    const int arms = inst.arm_count();
    const std::int64_t T = inst.horizon;

    auto policy = make_policy(config.policy, inst);
    Rng rng(splitmix64_at(config.master_seed, static_cast<std::uint64_t>(config.trial_index)));

    // Per-epoch attribution follows the policy's own layout when it has one.
    std::optional<EpochLayout> layout;
    if (config.policy.delta) layout.emplace(T, *config.policy.delta);

    RegretReport rep;
    rep.pulls.assign(static_cast<std::size_t>(arms), 0);
    rep.per_epoch.assign(layout ? static_cast<std::size_t>(layout->epoch_count()) : 1, 0.0);
    if (config.record_trajectory) {
        rep.traj_means.reserve(static_cast<std::size_t>(T));
        rep.traj_draws.reserve(static_cast<std::size_t>(T));
    }

    int epoch = 0;
    std::int64_t epoch_end = layout ? layout->epoch_end(0) : T;
    std::optional<double> last;
    for (std::int64_t t = 1; t <= T; ++t) {
        if (t > epoch_end) {
            ++epoch;
            epoch_end = layout->epoch_end(epoch);
        }
        const int arm = policy->step(t, last);
        if (arm < 0 || arm >= arms) throw std::runtime_error("run_episode: arm out of range");

        double best = mean_of(0, t);
        for (int a = 1; a < arms; ++a) best = std::max(best, mean_of(a, t));
        const double played = mean_of(arm, t);
        const int z = draw_reward(rng, played);

        rep.realized_regret += best - z;
        rep.mean_regret += best - played;
        rep.per_epoch[static_cast<std::size_t>(epoch)] += best - played;
        rep.pulls[static_cast<std::size_t>(arm)] += 1;
        if (config.record_trajectory) {
            rep.traj_means.push_back(played);
            rep.traj_draws.push_back(z);
        }
        last = static_cast<double>(z);
    }
    return rep;
}

}  // namespace

RegretReport run_episode(const RunConfig& config) {
    if (config.instance == nullptr) throw std::invalid_argument("run_episode: missing instance");
    const BanditInstance& inst = *config.instance;
    const double T = static_cast<double>(inst.horizon);
    return simulate(config, [&](int a, std::int64_t t) {
        return inst.arms[static_cast<std::size_t>(a)](static_cast<double>(t) / T);
    });
}

RegretReport run_episode(const RunConfig& config, const MeansTable& table) {
    if (config.instance == nullptr) throw std::invalid_argument("run_episode: missing instance");
    if (table.horizon != config.instance->horizon ||
        table.per_arm.size() != config.instance->arms.size()) {
        throw std::invalid_argument("run_episode: means table does not match the instance");
    }
    return simulate(config, [&](int a, std::int64_t t) {
        return table.per_arm[static_cast<std::size_t>(a)][static_cast<std::size_t>(t - 1)];
    });
}

void scan_trajectory(RegretReport& report, double log_T, std::optional<int> k_arms) {
    if (report.traj_means.empty()) {
        throw std::invalid_argument("scan_trajectory: no recorded trajectory");
    }
    const CleanScanResult res =
        clean_event_scan(report.traj_means, report.traj_draws, log_T, k_arms);
    report.clean_violations = res.two_sided;
}

std::string to_json_string(const RegretReport& report) {
    nlohmann::json j;
    j["realized_regret"] = report.realized_regret;
    j["mean_regret"] = report.mean_regret;
    j["per_epoch"] = report.per_epoch;
    j["pulls"] = report.pulls;
    if (report.clean_violations >= 0) j["clean_violations"] = report.clean_violations;
    return j.dump();
}

MonteCarloResult summarize(const std::vector<double>& values) {
    MonteCarloResult out;
    out.per_trial = values;
    const auto n = static_cast<double>(values.size());
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / n;
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.stderr_of_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return out;
}

MonteCarloResult monte_carlo(const RunConfig& base, int n_trials, const MeansTable* table) {
    if (n_trials < 1) throw std::invalid_argument("monte_carlo: need at least one trial");
    std::vector<double> values(static_cast<std::size_t>(n_trials));
    parallel_for(static_cast<std::size_t>(n_trials), [&](std::size_t i) {
        RunConfig cfg = base;
        cfg.trial_index = static_cast<std::int64_t>(i);
        cfg.record_trajectory = false;
        const RegretReport rep = table ? run_episode(cfg, *table) : run_episode(cfg);
        values[i] = rep.mean_regret;
    });
    return summarize(values);
}

double WaldProbe::combined_se() const { return std::sqrt(se_z * se_z + se_r * se_r); }

WaldProbe wald_probe(const BanditInstance& instance, const BEConfig& config, int n_trials,
                     std::uint64_t master_seed) {
    if (n_trials < 1) throw std::invalid_argument("wald_probe: need at least one trial");
    const EpochLayout layout(instance.horizon, config.delta);
    const std::int64_t n_epoch = layout.epoch_end(0);
    const double T = static_cast<double>(instance.horizon);
    const RewardCurve& arm1 = instance.arms[1];

    std::vector<double> means(static_cast<std::size_t>(n_epoch));
    for (std::int64_t t = 1; t <= n_epoch; ++t) {
        means[static_cast<std::size_t>(t - 1)] = arm1(static_cast<double>(t) / T);
    }

    std::vector<double> zs(static_cast<std::size_t>(n_trials));
    std::vector<double> rs(static_cast<std::size_t>(n_trials));
    parallel_for(static_cast<std::size_t>(n_trials), [&](std::size_t i) {
        Rng rng(splitmix64_at(master_seed, i));
        double sum_z = 0.0;
        double sum_r = 0.0;
        for (std::int64_t t = 1; t <= n_epoch; ++t) {
            const double r = means[static_cast<std::size_t>(t - 1)];
            sum_z += draw_reward(rng, r);
            sum_r += r;
            if (sum_z <= -config.budget) break;  // the stopping round is included
        }
        zs[i] = sum_z;
        rs[i] = sum_r;
    });

    const MonteCarloResult mz = summarize(zs);
    const MonteCarloResult mr = summarize(rs);
    WaldProbe probe;
    probe.mean_z = mz.mean;
    probe.mean_r = mr.mean;
    probe.se_z = mz.stderr_of_mean.value_or(0.0);
    probe.se_r = mr.stderr_of_mean.value_or(0.0);
    probe.trials = n_trials;
    return probe;
}

}  // namespace sbl
