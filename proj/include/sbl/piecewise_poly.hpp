#pragma once

#include <cstddef>
#include <vector>

namespace sbl {

// Exact piecewise polynomial over a strictly increasing breakpoint grid
// 0 = b_0 < b_1 < ... < b_n = span. Piece i holds ascending-power
// coefficients in local coordinates: p_i(x) = sum_j c_{i,j} (x - b_i)^j on
// [b_i, b_{i+1}). Evaluation outside [0, span] returns 0 (compact support).
// All calculus below is coefficient arithmetic; no quadrature anywhere.
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<double> breakpoints,
                  std::vector<std::vector<double>> pieces);

    static PiecewisePoly constant(double value, double span);

    double span() const { return breakpoints_.back(); }
    std::size_t piece_count() const { return pieces_.size(); }
    int degree() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& piece(std::size_t i) const { return pieces_[i]; }

    // Right-continuous on interior breakpoints; x == span evaluates the last
    // piece at its right endpoint.
    double operator()(double x) const;

    PiecewisePoly derivative() const;

    // Single integration level; the result vanishes at 0 and is continuous.
    PiecewisePoly antiderivative() const;

    // Integral over the full support, computed symbolically.
    double integral() const;

    PiecewisePoly scaled(double factor) const;
    PiecewisePoly plus_constant(double c) const;

    // sup |p| over [0, span]. Exact for piece degree <= 2, dense per-piece
    // sampling beyond that.
    double sup_abs() const;

    // min p over a uniform grid of n+1 points spanning [0, span].
    double min_on_grid(int n) const;

    // Largest value jump across interior breakpoints (0 when continuous).
    double max_interior_jump() const;
    bool is_continuous(double tol) const { return max_interior_jump() <= tol; }

private:
    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> pieces_;

    double eval_piece(std::size_t i, double local_x) const;
    std::size_t locate(double x) const;
};

}  // namespace sbl
