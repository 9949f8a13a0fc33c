#include "sbl/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbl/info_theory.hpp"
#include "sbl/parallel.hpp"
#include "sbl/sim.hpp"

namespace sbl {

void AdversaryConfig::validate() const {
    if (rollouts_per_decision < 10) {
        throw std::invalid_argument("AdversaryConfig: need at least 10 rollouts per decision");
    }
    if (eval_rollouts < 2) {
        throw std::invalid_argument("AdversaryConfig: need at least 2 evaluation rollouts");
    }
    delta_for(beta, horizon);  // throws when the horizon is too short
}

namespace {

// Round window of construction epoch j (1-based): x in [6 delta (j-1), 6 delta j).
struct EpochWindow {
    std::int64_t first = 0;
    std::int64_t last = 0;
};

EpochWindow epoch_window(const FamilySpec& spec, int j) {
    const double x_lo = 6.0 * spec.delta * (j - 1);
    const double x_hi = 6.0 * spec.delta * j;
    EpochWindow w;
    w.first = static_cast<std::int64_t>(std::floor(x_lo * static_cast<double>(spec.horizon))) + 1;
    w.last = static_cast<std::int64_t>(std::floor(x_hi * static_cast<double>(spec.horizon)));
    w.last = std::min(w.last, spec.horizon);
    return w;
}

// One rollout through round `until`, accumulating mean-based regret over
// [window.first, window.last]. The optimum is max(0, mu); arm 0 is the zero
// arm of the one-armed family instance.
double rollout(const BanditInstance& instance, const std::vector<double>& arm1_means,
               const PolicySpec& policy_spec, std::int64_t until, EpochWindow window,
               std::uint64_t seed) {
    auto policy = make_policy(policy_spec, instance);
    Rng rng(seed);
    std::optional<double> last;
    double regret = 0.0;
    for (std::int64_t t = 1; t <= until; ++t) {
        const int arm = policy->step(t, last);
        const double mu = arm1_means[static_cast<std::size_t>(t - 1)];
        const double played = arm == 0 ? 0.0 : mu;
        const int z = draw_reward(rng, played);
        if (t >= window.first && t <= window.last) {
            regret += std::max(0.0, mu) - played;
        }
        last = static_cast<double>(z);
    }
    return regret;
}

struct Variant {
    BanditInstance instance;
    std::vector<double> arm1_means;
};

Variant make_variant(int beta, std::int64_t horizon, ColorSeq colors) {
    BanditInstance inst = one_armed(RewardCurve::family(FamilySpec::make(beta, horizon,
                                                                         std::move(colors))),
                                    horizon);
    MeansTable table = tabulate_means(inst);
    return Variant{std::move(inst), std::move(table.per_arm[1])};
}

}  // namespace

FamilyRegretEstimate evaluate_colors(const ColorSeq& colors, const PolicySpec& policy, int beta,
                                     std::int64_t horizon, int rollouts,
                                     std::uint64_t master_seed) {
    if (rollouts < 2) throw std::invalid_argument("evaluate_colors: need at least 2 rollouts");
    const Variant v = make_variant(beta, horizon, colors);
    const EpochWindow whole{1, horizon};
    std::vector<double> values(static_cast<std::size_t>(rollouts));
    parallel_for(values.size(), [&](std::size_t i) {
        values[i] = rollout(v.instance, v.arm1_means, policy, horizon, whole,
                            splitmix64_at(master_seed, i));
    });
    const MonteCarloResult mc = summarize(values);
    return {mc.mean, mc.stderr_of_mean.value_or(0.0)};
}

AdversaryResult greedy_adversary(const PolicySpec& policy, const AdversaryConfig& config) {
    config.validate();
    const FamilySpec base = FamilySpec::make(config.beta, config.horizon);
    const int m = base.epochs;
    const int reps = config.rollouts_per_decision;

    ColorSeq prefix;
    prefix.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        ColorSeq red_colors = prefix;
        red_colors.push_back(EpochColor::red);
        ColorSeq bowl_colors = prefix;
        bowl_colors.push_back(EpochColor::bowl);
        const Variant red = make_variant(config.beta, config.horizon, red_colors);
        const Variant bowl = make_variant(config.beta, config.horizon, bowl_colors);
        const EpochWindow window = epoch_window(base, j);

        // Paired rollouts: both colors replay the same uniform stream.
        const std::uint64_t epoch_seed =
            splitmix64_at(config.master_seed, static_cast<std::uint64_t>(j));
        std::vector<double> reg_red(static_cast<std::size_t>(reps));
        std::vector<double> reg_bowl(static_cast<std::size_t>(reps));
        parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
            const std::uint64_t seed = splitmix64_at(epoch_seed, r);
            reg_red[r] = rollout(red.instance, red.arm1_means, policy, window.last, window, seed);
            reg_bowl[r] =
                rollout(bowl.instance, bowl.arm1_means, policy, window.last, window, seed);
        });
        const double mean_red = summarize(reg_red).mean;
        const double mean_bowl = summarize(reg_bowl).mean;
        // Ties break to red.
        prefix.push_back(mean_bowl > mean_red ? EpochColor::bowl : EpochColor::red);
    }

    AdversaryResult result;
    result.colors = prefix;
    const FamilyRegretEstimate est =
        evaluate_colors(prefix, policy, config.beta, config.horizon, config.eval_rollouts,
                        splitmix64_at(config.master_seed, 0));
    result.estimated_regret = est.mean;
    result.stderr_of_mean = est.stderr_of_mean;
    result.lower_bound = lb_value(config.beta, config.horizon);
    result.ratio = result.estimated_regret / result.lower_bound;
    return result;
}

}  // namespace sbl
