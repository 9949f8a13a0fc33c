#include "sbl/clean_event.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbl {

CleanScanResult clean_event_scan(std::span<const double> means, std::span<const int> draws,
                                 double log_T, std::optional<int> k_arms) {
    if (means.size() != draws.size()) {
        throw std::invalid_argument("clean_event_scan: means/draws must align");
    }
    const auto n = static_cast<std::int64_t>(means.size());
    if (n > 4096) throw std::invalid_argument("clean_event_scan: series longer than 4096 rounds");
    if (!(log_T > 0.0)) throw std::invalid_argument("clean_event_scan: log_T must be positive");

    double factor = 6.0 * log_T;
    if (k_arms) {
        if (*k_arms < 2) throw std::invalid_argument("clean_event_scan: k_arms must be >= 2");
        factor = 6.0 * std::log(static_cast<double>(*k_arms)) / static_cast<double>(*k_arms) * log_T;
    }

    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] +
            (draws[static_cast<std::size_t>(i)] - means[static_cast<std::size_t>(i)]);
    }

    CleanScanResult result;
    const auto min_gap = static_cast<std::int64_t>(std::ceil(2.0 * log_T));
    for (std::int64_t t = 1; t <= n; ++t) {
        for (std::int64_t tp = t + min_gap; tp <= n; ++tp) {
            // Sum over s = t..t' inclusive; the bound uses (t' - t) as printed.
            const double dev = prefix[static_cast<std::size_t>(tp)] -
                               prefix[static_cast<std::size_t>(t) - 1];
            const double bound = std::sqrt(factor * static_cast<double>(tp - t));
            ++result.pairs_scanned;
            if (dev > bound) ++result.one_sided;
            if (std::fabs(dev) > bound) ++result.two_sided;
        }
    }
    return result;
}

}  // namespace sbl
