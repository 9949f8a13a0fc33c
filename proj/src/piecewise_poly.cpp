#include "sbl/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbl {

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints,
                             std::vector<std::vector<double>> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breakpoints_.size() < 2) {
        throw std::invalid_argument("PiecewisePoly: need at least two breakpoints");
    }
    if (breakpoints_.front() != 0.0) {
        throw std::invalid_argument("PiecewisePoly: support must start at 0");
    }
    if (pieces_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("PiecewisePoly: piece/breakpoint count mismatch");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw std::invalid_argument("PiecewisePoly: breakpoints must strictly increase");
        }
    }
    for (auto& c : pieces_) {
        if (c.empty()) c.push_back(0.0);
    }
}

PiecewisePoly PiecewisePoly::constant(double value, double span) {
    if (!(span > 0.0)) throw std::invalid_argument("PiecewisePoly: span must be positive");
    return PiecewisePoly({0.0, span}, {{value}});
}

int PiecewisePoly::degree() const {
    std::size_t d = 0;
    for (const auto& c : pieces_) d = std::max(d, c.size() - 1);
    return static_cast<int>(d);
}

double PiecewisePoly::eval_piece(std::size_t i, double local_x) const {
    const auto& c = pieces_[i];
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * local_x + c[j];
    return v;
}

std::size_t PiecewisePoly::locate(double x) const {
    // Last piece owns its right endpoint.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    if (i == 0) return 0;
    if (i > pieces_.size()) return pieces_.size() - 1;
    return i - 1;
}

double PiecewisePoly::operator()(double x) const {
    if (x < 0.0 || x > span()) return 0.0;
    const std::size_t i = locate(x);
    return eval_piece(i, x - breakpoints_[i]);
}

PiecewisePoly PiecewisePoly::derivative() const {
    std::vector<std::vector<double>> out(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& c = pieces_[i];
        if (c.size() <= 1) {
            out[i] = {0.0};
            continue;
        }
        out[i].resize(c.size() - 1);
        for (std::size_t j = 1; j < c.size(); ++j) {
            out[i][j - 1] = c[j] * static_cast<double>(j);
        }
    }
    return PiecewisePoly(breakpoints_, std::move(out));
}

PiecewisePoly PiecewisePoly::antiderivative() const {
    std::vector<std::vector<double>> out(pieces_.size());
    double running = 0.0;  // value carried across breakpoints; F(0) = 0
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& c = pieces_[i];
        auto& a = out[i];
        a.resize(c.size() + 1);
        a[0] = running;
        for (std::size_t j = 0; j < c.size(); ++j) {
            a[j + 1] = c[j] / static_cast<double>(j + 1);
        }
        const double width = breakpoints_[i + 1] - breakpoints_[i];
        double v = 0.0;
        for (std::size_t j = a.size(); j-- > 0;) v = v * width + a[j];
        running = v;
    }
    return PiecewisePoly(breakpoints_, std::move(out));
}

double PiecewisePoly::integral() const {
    const PiecewisePoly f = antiderivative();
    return f(f.span());
}

PiecewisePoly PiecewisePoly::scaled(double factor) const {
    std::vector<std::vector<double>> out = pieces_;
    for (auto& c : out) {
        for (auto& v : c) v *= factor;
    }
    return PiecewisePoly(breakpoints_, std::move(out));
}

PiecewisePoly PiecewisePoly::plus_constant(double c0) const {
    std::vector<std::vector<double>> out = pieces_;
    for (auto& c : out) c[0] += c0;
    return PiecewisePoly(breakpoints_, std::move(out));
}

double PiecewisePoly::sup_abs() const {
    double best = 0.0;
    auto consider = [&](double v) { best = std::max(best, std::fabs(v)); };
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double width = breakpoints_[i + 1] - breakpoints_[i];
        const auto& c = pieces_[i];
        consider(eval_piece(i, 0.0));
        consider(eval_piece(i, width));
        const std::size_t deg = c.size() - 1;
        if (deg == 2) {
            // Interior vertex of the parabola, when it lands in the piece.
            if (c[2] != 0.0) {
                const double t = -c[1] / (2.0 * c[2]);
                if (t > 0.0 && t < width) consider(eval_piece(i, t));
            }
        } else if (deg > 2) {
            const int samples = 64 * static_cast<int>(deg);
            for (int s = 1; s < samples; ++s) {
                consider(eval_piece(i, width * s / samples));
            }
        }
    }
    return best;
}

double PiecewisePoly::min_on_grid(int n) const {
    if (n < 1) throw std::invalid_argument("min_on_grid: need n >= 1");
    double best = (*this)(0.0);
    const double s = span();
    for (int i = 1; i <= n; ++i) {
        best = std::min(best, (*this)(s * i / n));
    }
    return best;
}

double PiecewisePoly::max_interior_jump() const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const double width = breakpoints_[i + 1] - breakpoints_[i];
        const double left = eval_piece(i, width);
        const double right = pieces_[i + 1][0];
        worst = std::max(worst, std::fabs(left - right));
    }
    return worst;
}

}  // namespace sbl
