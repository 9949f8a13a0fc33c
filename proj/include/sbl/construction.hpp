#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbl/piecewise_poly.hpp"

namespace sbl {

// +-1 weights whose every dyadic block sums to zero. Built by the recursion
// nu^0 = (1), nu^k = nu^{k-1} concat -nu^{k-1}.
struct NeutralVec {
    int k = 0;
    std::vector<int> entries;  // length 2^k
};

NeutralVec neutralizing_vector(int k);  // 0 <= k <= 30

// Triangular bump min(x, w - x) on [0, w], two linear pieces.
PiecewisePoly pyramid(double w);

// Side-by-side weighted copies of `base`: cell i of width base.span() carries
// weights[i] * base(x - i * base.span()).
PiecewisePoly flock(const PiecewisePoly& base, std::span<const int> weights);
PiecewisePoly flock(const PiecewisePoly& base, const NeutralVec& weights);

// Iterated symbolic integration; each level vanishes at 0. Degree grows by
// `levels` and is capped at 16.
PiecewisePoly anti_derivative(const PiecewisePoly& f, int levels);

// Monotone transition of height C_beta * eps^beta on [0, eps] with vanishing
// derivatives of order 1..beta-1 at both endpoints and a 1-Lipschitz highest
// derivative. beta = 1 is the linear ramp x.
PiecewisePoly bump(int beta, double eps);

// C_beta(eps) = bump(beta, eps)(eps) / eps^beta; independent of eps by the
// homogeneity of the construction.
double growth_constant(int beta, double eps = 1.0);

// Epoch half-width delta(beta, T) = (2^{2(beta+1)} C_beta^2 T)^{-1/(2beta+1)}.
// Throws when delta >= 1/6 (fewer than one full epoch would fit).
double delta_for(int beta, std::int64_t horizon);

enum class EpochColor { red, bowl };
using ColorSeq = std::vector<EpochColor>;

ColorSeq parse_colors(const std::string& s);      // "rbrb..." -> ColorSeq
std::string format_colors(const ColorSeq& colors);

// A lower-bound instance: epochs of length 6*delta, each either a constant at
// +h (red) or a descend/flat/ascend bowl reaching -h (bowl), h = C_beta/2 *
// (2 delta)^beta. The residual tail beyond m epochs is red.
struct FamilySpec {
    int beta = 1;
    std::int64_t horizon = 0;
    double delta = 0.0;
    int epochs = 0;  // m = floor(1 / (6 delta))
    ColorSeq colors;
    double c_beta = 0.0;

    // colors may be shorter than m (red-padded) or empty (all red).
    static FamilySpec make(int beta, std::int64_t horizon, ColorSeq colors = {});
};

// The member curve as an exact piecewise polynomial over [0, 1].
PiecewisePoly family_poly(const FamilySpec& spec);

// Symbolic verification of the bump construction.
struct ConstructionReport {
    int beta = 0;
    double eps = 0.0;
    double height = 0.0;                       // g(eps)
    std::vector<double> endpoint_deriv_lo;     // |g^(j)(0)|,   j = 1..beta-1
    std::vector<double> endpoint_deriv_hi;     // |g^(j)(eps)|
    double min_derivative = 0.0;               // min g' on a dense grid
    double lipschitz_highest = 0.0;            // Lip(g^(beta-1)) = sup |g^(beta)|
    bool neutral_blocks_ok = false;            // dyadic block sums of nu^{beta-2}
    bool endpoints_ok = false;
    bool monotone_ok = false;
    bool lipschitz_ok = false;
    bool pass = false;
};

ConstructionReport verify_construction(int beta, double eps);

}  // namespace sbl
