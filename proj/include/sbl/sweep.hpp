#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sbl {

// Horizon sweep over the random sinusoidal family. Each tuning names a BE
// parameter schedule evaluated per horizon:
//   "nonsmooth" -> (B, Delta) = (T^{1/3}, T^{-1/3})
//   "smooth"    -> (B, Delta) = (T^{2/5}, T^{-1/5})
//   "oracle"    -> clairvoyant baseline (zero mean regret)
// All tunings at a given T run on the same sampled instances with shared
// reward noise, via the one-armed view of each instance.
struct SweepConfig {
    std::vector<std::int64_t> horizons;  // strictly increasing
    std::vector<std::string> tunings;
    int instances_per_horizon = 100;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct SweepRow {
    std::string policy;
    std::int64_t horizon = 0;
    double budget = 0.0;
    double delta = 0.0;
    int n_trials = 0;
    double mean_regret = 0.0;
    double stderr_of_mean = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

// CSV schema: policy,T,B,Delta,n_trials,mean_regret,stderr. Doubles are
// written with 17 significant digits so a round-trip parse is exact.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct SlopeFit {
    std::string policy;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// OLS of log2(mean_regret) on log2(T) for one policy's rows. Needs >= 3
// rows, all with positive mean regret (the offending row is named otherwise).
SlopeFit fit_slope(std::span<const SweepRow> rows);

// Groups rows by policy (output sorted by policy name).
std::vector<SlopeFit> fit_slopes(std::span<const SweepRow> rows);

// Self-contained log-log scatter with the fitted lines.
void write_svg_scatter(std::span<const SweepRow> rows, std::span<const SlopeFit> fits,
                       std::ostream& out);

}  // namespace sbl
