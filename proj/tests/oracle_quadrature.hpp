#pragma once

// Test-only numerical oracles, independent of the symbolic anti-derivative
// path in sbl::PiecewisePoly. Integration is done by aligned trapezoid
// cumulative sums over a dyadic grid, which is exact (up to roundoff) for
// piecewise-linear integrands whose kinks sit on grid points.

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Integral of f over [0, span] by the composite trapezoid rule on n panels.
inline double integral(const std::function<double(double)>& f, double span, int n = 1 << 20) {
    const double h = span / n;
    double sum = 0.5 * (f(0.0) + f(span));
    for (int i = 1; i < n; ++i) sum += f(h * i);
    return sum * h;
}

// Values of the level-`levels` anti-derivative of f on the grid i*span/n,
// each level vanishing at 0. Returned vector has n+1 entries.
inline std::vector<double> iterated_antiderivative(const std::function<double(double)>& f,
                                                   double span, int levels, int n = 1 << 20) {
    const double h = span / n;
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = f(h * i);
    for (int l = 0; l < levels; ++l) {
        double acc = 0.0;
        double prev = v[0];
        v[0] = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double cur = v[static_cast<std::size_t>(i)];
            acc += 0.5 * (prev + cur) * h;
            prev = cur;
            v[static_cast<std::size_t>(i)] = acc;
        }
    }
    return v;
}

}  // namespace oracle
