#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace sbl {

// Interval concentration scan. For every round pair (t, t') with
// t' - t >= 2 * log_T, the deviation sum D = sum_{s=t}^{t'} (Z_s - r_s) is
// compared against sqrt(6 * log_T * (t' - t)); with k_arms set the factor
// becomes 6 * (log k / k) * log_T. The definition is one-sided (D > bound);
// proofs use both tails, so the scan reports both counts.
struct CleanScanResult {
    std::int64_t one_sided = 0;
    std::int64_t two_sided = 0;
    std::int64_t pairs_scanned = 0;
};

// O(T^2) pairs over prefix sums; refuses series longer than 4096 rounds
// (this is a test-scale tool).
CleanScanResult clean_event_scan(std::span<const double> means, std::span<const int> draws,
                                 double log_T, std::optional<int> k_arms = {});

}  // namespace sbl
