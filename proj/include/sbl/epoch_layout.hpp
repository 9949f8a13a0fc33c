#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sbl {

// Floor-based partition of rounds {1, ..., T} into m = ceil(1/Delta) epochs
// with boundaries t_i = floor(i * T / m). Epoch i (0-based) covers rounds
// t_i + 1 .. t_{i+1}; the last epoch may be shorter than the others.
class EpochLayout {
public:
    EpochLayout(std::int64_t horizon, double delta) : horizon_(horizon) {
        if (horizon < 1) throw std::invalid_argument("EpochLayout: horizon must be >= 1");
        if (!(delta > 0.0) || delta > 1.0) {
            throw std::invalid_argument("EpochLayout: delta must be in (0, 1]");
        }
        const auto m = static_cast<std::int64_t>(std::ceil(1.0 / delta));
        if (m > horizon) {
            throw std::invalid_argument("EpochLayout: more epochs than rounds");
        }
        boundaries_.resize(static_cast<std::size_t>(m) + 1);
        for (std::int64_t i = 0; i <= m; ++i) {
            boundaries_[static_cast<std::size_t>(i)] = (i * horizon) / m;
        }
    }

    std::int64_t horizon() const { return horizon_; }
    int epoch_count() const { return static_cast<int>(boundaries_.size()) - 1; }
    const std::vector<std::int64_t>& boundaries() const { return boundaries_; }

    std::int64_t epoch_start(int i) const { return boundaries_[static_cast<std::size_t>(i)] + 1; }
    std::int64_t epoch_end(int i) const { return boundaries_[static_cast<std::size_t>(i) + 1]; }
    std::int64_t epoch_length(int i) const { return epoch_end(i) - epoch_start(i) + 1; }

    // Epoch index of round t in [1, T].
    int epoch_of(std::int64_t t) const {
        const auto m = static_cast<std::int64_t>(epoch_count());
        // t_i = floor(i*T/m) < t <= floor((i+1)*T/m); start from the uniform
        // guess and walk (boundaries are within one round of i*T/m).
        std::int64_t i = (t - 1) * m / horizon_;
        if (i >= m) i = m - 1;
        while (i > 0 && t <= boundaries_[static_cast<std::size_t>(i)]) --i;
        while (i + 1 < m && t > boundaries_[static_cast<std::size_t>(i) + 1]) ++i;
        return static_cast<int>(i);
    }

private:
    std::int64_t horizon_;
    std::vector<std::int64_t> boundaries_;
};

}  // namespace sbl
