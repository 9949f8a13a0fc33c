#include "sbl/construction.hpp"

#include <cmath>
#include <stdexcept>

namespace sbl {

namespace {
constexpr int kDegreeCap = 16;
}  // namespace

NeutralVec neutralizing_vector(int k) {
    if (k < 0 || k > 30) throw std::invalid_argument("neutralizing_vector: k must be in [0, 30]");
    NeutralVec v;
    v.k = k;
    v.entries.assign(std::size_t{1} << k, 1);
    for (int level = 0; level < k; ++level) {
        const std::size_t half = std::size_t{1} << level;
        for (std::size_t i = 0; i < half; ++i) v.entries[half + i] = -v.entries[i];
    }
    return v;
}

PiecewisePoly pyramid(double w) {
    if (!(w > 0.0)) throw std::domain_error("pyramid: width must be positive");
    // min(x, w - x): ascending branch x, descending branch (w/2) - t in local
    // coordinates t = x - w/2.
    return PiecewisePoly({0.0, w / 2.0, w}, {{0.0, 1.0}, {w / 2.0, -1.0}});
}

PiecewisePoly flock(const PiecewisePoly& base, std::span<const int> weights) {
    if (weights.empty()) throw std::invalid_argument("flock: empty weight vector");
    const double w = base.span();
    const auto& bp = base.breakpoints();
    std::vector<double> breaks;
    std::vector<std::vector<double>> pieces;
    breaks.reserve(weights.size() * base.piece_count() + 1);
    pieces.reserve(weights.size() * base.piece_count());
    breaks.push_back(0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double shift = static_cast<double>(i) * w;
        for (std::size_t p = 0; p < base.piece_count(); ++p) {
            // Local coordinates survive the shift untouched.
            std::vector<double> c = base.piece(p);
            for (auto& v : c) v *= static_cast<double>(weights[i]);
            pieces.push_back(std::move(c));
            breaks.push_back(shift + bp[p + 1]);
        }
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

PiecewisePoly flock(const PiecewisePoly& base, const NeutralVec& weights) {
    return flock(base, std::span<const int>(weights.entries));
}

PiecewisePoly anti_derivative(const PiecewisePoly& f, int levels) {
    if (levels < 0) throw std::invalid_argument("anti_derivative: negative level");
    if (f.degree() + levels > kDegreeCap) {
        throw std::domain_error("anti_derivative: degree cap exceeded");
    }
    PiecewisePoly out = f;
    for (int l = 0; l < levels; ++l) out = out.antiderivative();
    return out;
}

PiecewisePoly bump(int beta, double eps) {
    if (beta < 1) throw std::invalid_argument("bump: beta must be >= 1");
    if (!(eps > 0.0)) throw std::domain_error("bump: eps must be positive");
    if (beta == 1) {
        // The flock construction needs beta >= 2; the ramp satisfies all four
        // bump properties for beta = 1, with C_1 = 1.
        return PiecewisePoly({0.0, eps}, {{0.0, 1.0}});
    }
    const int k = beta - 2;
    const double w = eps / static_cast<double>(std::int64_t{1} << k);
    const PiecewisePoly base = flock(pyramid(w), neutralizing_vector(k));
    return anti_derivative(base, beta - 1);
}

double growth_constant(int beta, double eps) {
    const PiecewisePoly g = bump(beta, eps);
    return g(eps) / std::pow(eps, static_cast<double>(beta));
}

double delta_for(int beta, std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("delta_for: horizon must be >= 1");
    const double c = growth_constant(beta);
    const double base = std::pow(2.0, 2.0 * (beta + 1)) * c * c * static_cast<double>(horizon);
    const double delta = std::pow(base, -1.0 / (2.0 * beta + 1.0));
    if (delta >= 1.0 / 6.0) {
        throw std::domain_error(
            "delta_for: delta >= 1/6 leaves no room for a full epoch; increase the horizon");
    }
    return delta;
}

ColorSeq parse_colors(const std::string& s) {
    ColorSeq out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == 'r' || c == 'R') out.push_back(EpochColor::red);
        else if (c == 'b' || c == 'B') out.push_back(EpochColor::bowl);
        else throw std::invalid_argument("parse_colors: expected only 'r'/'b'");
    }
    return out;
}

std::string format_colors(const ColorSeq& colors) {
    std::string s;
    s.reserve(colors.size());
    for (auto c : colors) s.push_back(c == EpochColor::red ? 'r' : 'b');
    return s;
}

FamilySpec FamilySpec::make(int beta, std::int64_t horizon, ColorSeq colors) {
    FamilySpec spec;
    spec.beta = beta;
    spec.horizon = horizon;
    spec.delta = delta_for(beta, horizon);
    spec.epochs = static_cast<int>(std::floor(1.0 / (6.0 * spec.delta)));
    spec.c_beta = growth_constant(beta);
    if (static_cast<int>(colors.size()) > spec.epochs) {
        throw std::invalid_argument("FamilySpec: more colors than epochs");
    }
    colors.resize(static_cast<std::size_t>(spec.epochs), EpochColor::red);
    spec.colors = std::move(colors);
    return spec;
}

PiecewisePoly family_poly(const FamilySpec& spec) {
    const double delta = spec.delta;
    const double h = 0.5 * spec.c_beta * std::pow(2.0 * delta, static_cast<double>(spec.beta));
    const PiecewisePoly g = bump(spec.beta, 2.0 * delta);

    std::vector<double> breaks{0.0};
    std::vector<std::vector<double>> pieces;
    auto append = [&](const PiecewisePoly& part, double sign, double offset, double upto) {
        // Shifted copy of sign * part + offset, appended after the current end.
        const double start = breaks.back();
        const auto& bp = part.breakpoints();
        for (std::size_t p = 0; p < part.piece_count(); ++p) {
            std::vector<double> c = part.piece(p);
            for (auto& v : c) v *= sign;
            c[0] += offset;
            pieces.push_back(std::move(c));
            breaks.push_back(start + bp[p + 1]);
        }
        breaks.back() = upto;  // pin the segment end against float drift
    };

    for (int j = 0; j < spec.epochs; ++j) {
        const double x0 = 6.0 * delta * j;
        if (spec.colors[static_cast<std::size_t>(j)] == EpochColor::red) {
            pieces.push_back({h});
            breaks.push_back(x0 + 6.0 * delta);
        } else {
            append(g, -1.0, h, x0 + 2.0 * delta);          // descend: h - g(x - x0)
            pieces.push_back({-h});                        // flat bottom
            breaks.push_back(x0 + 4.0 * delta);
            append(g, 1.0, -h, x0 + 6.0 * delta);          // ascend: g(...) - h
        }
    }
    // Residual tail is red. A sliver below 1e-9 is absorbed into the last
    // piece: its polynomial extends smoothly (endpoint derivatives vanish).
    const double tail = 1.0 - breaks.back();
    if (tail > 1e-9) {
        pieces.push_back({h});
        breaks.push_back(1.0);
    } else {
        breaks.back() = 1.0;
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

ConstructionReport verify_construction(int beta, double eps) {
    if (beta < 1 || beta > 8) throw std::invalid_argument("verify_construction: beta in [1, 8]");
    ConstructionReport rep;
    rep.beta = beta;
    rep.eps = eps;

    const PiecewisePoly g = bump(beta, eps);
    rep.height = g(eps);
    const double scale = std::fabs(rep.height);

    PiecewisePoly d = g;
    rep.endpoints_ok = true;
    for (int j = 1; j <= beta - 1; ++j) {
        d = d.derivative();
        const double lo = std::fabs(d(0.0));
        const double hi = std::fabs(d(eps));
        rep.endpoint_deriv_lo.push_back(lo);
        rep.endpoint_deriv_hi.push_back(hi);
        if (lo > 1e-10 * scale || hi > 1e-10 * scale) rep.endpoints_ok = false;
        if (j == beta - 1) {
            rep.lipschitz_highest = d.derivative().sup_abs();
        }
    }
    if (beta == 1) {
        // g^{(0)} = g itself; its Lipschitz constant is sup |g'| = 1.
        rep.lipschitz_highest = g.derivative().sup_abs();
    }
    rep.lipschitz_ok = std::fabs(rep.lipschitz_highest - 1.0) <= 1e-10;

    rep.min_derivative = g.derivative().min_on_grid(10000);
    rep.monotone_ok = rep.min_derivative >= -1e-10;

    rep.neutral_blocks_ok = true;
    if (beta >= 2) {
        const NeutralVec nu = neutralizing_vector(beta - 2);
        for (int level = 1; level <= nu.k; ++level) {
            const std::size_t width = std::size_t{1} << level;
            for (std::size_t start = 0; start < nu.entries.size(); start += width) {
                long sum = 0;
                for (std::size_t i = 0; i < width; ++i) sum += nu.entries[start + i];
                if (sum != 0) rep.neutral_blocks_ok = false;
            }
        }
    }

    rep.pass = rep.endpoints_ok && rep.monotone_ok && rep.lipschitz_ok && rep.neutral_blocks_ok;
    return rep;
}

}  // namespace sbl
