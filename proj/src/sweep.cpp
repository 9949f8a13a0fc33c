#include "sbl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sbl/parallel.hpp"
#include "sbl/sim.hpp"

namespace sbl {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool known_tuning(const std::string& t) {
    return t == "nonsmooth" || t == "smooth" || t == "oracle";
}

}  // namespace

void SweepConfig::validate() const {
    if (horizons.empty()) throw std::invalid_argument("SweepConfig: no horizons");
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i) {
        if (!(horizons[i] < horizons[i + 1])) {
            throw std::invalid_argument("SweepConfig: horizons must strictly increase");
        }
    }
    if (instances_per_horizon < 2) {
        throw std::invalid_argument("SweepConfig: need at least 2 instances per horizon");
    }
    if (tunings.empty()) throw std::invalid_argument("SweepConfig: no tunings");
    for (const auto& t : tunings) {
        if (!known_tuning(t)) throw std::invalid_argument("SweepConfig: unknown tuning '" + t + "'");
    }
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<SweepRow> rows;
    rows.reserve(config.horizons.size() * config.tunings.size());

    for (const std::int64_t T : config.horizons) {
        const std::uint64_t seed_T =
            splitmix64_at(config.master_seed, static_cast<std::uint64_t>(T));
        // Fresh instances per horizon; every tuning sees the same draw. The
        // sampler stream is tagged so it never collides with a trial stream.
        Rng instance_rng(splitmix64_at(seed_T, 0x696e7374u));
        const auto n = static_cast<std::size_t>(config.instances_per_horizon);
        std::vector<BanditInstance> instances;
        std::vector<BanditInstance> views;
        instances.reserve(n);
        views.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            instances.push_back(sample_sinusoidal_instance(instance_rng, T));
            views.push_back(one_armed_view(instances.back()));
        }

        for (const auto& tuning : config.tunings) {
            SweepRow row;
            row.policy = tuning;
            row.horizon = T;
            row.n_trials = config.instances_per_horizon;

            PolicySpec spec;
            const BanditInstance* targets = nullptr;
            if (tuning == "oracle") {
                spec = PolicySpec::oracle();
                targets = instances.data();
            } else {
                const int beta = tuning == "smooth" ? 2 : 1;
                const BEConfig params = default_params(beta, T, 1.0, 2, ParamStyle::experiment);
                spec = PolicySpec::be1(params.budget, params.delta);
                row.budget = params.budget;
                row.delta = params.delta;
                targets = views.data();
            }

            std::vector<double> regrets(n);
            parallel_for(n, [&](std::size_t i) {
                RunConfig run;
                run.master_seed = seed_T;  // trial i shares noise across tunings
                run.trial_index = static_cast<std::int64_t>(i);
                run.instance = targets + i;
                run.policy = spec;
                regrets[i] = run_episode(run).mean_regret;
            });
            const MonteCarloResult mc = summarize(regrets);
            row.mean_regret = mc.mean;
            row.stderr_of_mean = mc.stderr_of_mean.value_or(0.0);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "policy,T,B,Delta,n_trials,mean_regret,stderr\n";
    for (const auto& r : rows) {
        out << r.policy << ',' << r.horizon << ',' << fmt_double(r.budget) << ','
            << fmt_double(r.delta) << ',' << r.n_trials << ',' << fmt_double(r.mean_regret)
            << ',' << fmt_double(r.stderr_of_mean) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "policy,T,B,Delta,n_trials,mean_regret,stderr") {
        throw std::invalid_argument("read_sweep_csv: bad or missing header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw std::invalid_argument("read_sweep_csv: bad row: " + line);
        SweepRow r;
        r.policy = fields[0];
        r.horizon = std::stoll(fields[1]);
        r.budget = std::strtod(fields[2].c_str(), nullptr);
        r.delta = std::strtod(fields[3].c_str(), nullptr);
        r.n_trials = std::stoi(fields[4]);
        r.mean_regret = std::strtod(fields[5].c_str(), nullptr);
        r.stderr_of_mean = std::strtod(fields[6].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

SlopeFit fit_slope(std::span<const SweepRow> rows) {
    if (rows.size() < 3) throw std::invalid_argument("fit_slope: need at least 3 rows");
    for (const auto& r : rows) {
        if (!(r.mean_regret > 0.0)) {
            throw std::invalid_argument("fit_slope: nonpositive mean_regret at policy=" +
                                        r.policy + " T=" + std::to_string(r.horizon));
        }
    }
    const auto n = static_cast<double>(rows.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& r : rows) {
        sx += std::log2(static_cast<double>(r.horizon));
        sy += std::log2(r.mean_regret);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log2(static_cast<double>(r.horizon)) - mx;
        const double dy = std::log2(r.mean_regret) - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_slope: horizons must not repeat");
    SlopeFit fit;
    fit.policy = rows.front().policy;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

std::vector<SlopeFit> fit_slopes(std::span<const SweepRow> rows) {
    std::map<std::string, std::vector<SweepRow>> groups;
    for (const auto& r : rows) groups[r.policy].push_back(r);
    std::vector<SlopeFit> fits;
    fits.reserve(groups.size());
    for (const auto& [policy, group] : groups) {
        (void)policy;
        fits.push_back(fit_slope(group));
    }
    return fits;
}

void write_svg_scatter(std::span<const SweepRow> rows, std::span<const SlopeFit> fits,
                       std::ostream& out) {
    const int W = 640, H = 480, M = 56;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : rows) {
        if (!(r.mean_regret > 0.0)) continue;
        const double x = std::log2(static_cast<double>(r.horizon));
        const double y = std::log2(r.mean_regret);
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    const double xpad = 0.05 * (xmax - xmin + 1e-9);
    const double ypad = 0.05 * (ymax - ymin + 1e-9);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
    auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\""
        << H - M << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">log2 T</text>\n";
    out << "<text x=\"14\" y=\"" << H / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << H / 2
        << ")\">log2 mean regret</text>\n";

    std::map<std::string, std::size_t> color_of;
    for (const auto& r : rows) {
        if (!(r.mean_regret > 0.0)) continue;
        const auto it = color_of.emplace(r.policy, color_of.size()).first;
        const char* color = palette[it->second % 5];
        out << "<circle cx=\"" << px(std::log2(static_cast<double>(r.horizon))) << "\" cy=\""
            << py(std::log2(r.mean_regret)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    int label = 0;
    for (const auto& f : fits) {
        const auto it = color_of.find(f.policy);
        const char* color = palette[(it == color_of.end() ? 0 : it->second) % 5];
        const double x0 = xmin + xpad, x1 = xmax - xpad;
        out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(f.intercept + f.slope * x0)
            << "\" x2=\"" << px(x1) << "\" y2=\"" << py(f.intercept + f.slope * x1)
            << "\" stroke=\"" << color << "\" stroke-dasharray=\"5,3\"/>\n";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: slope %.3f (r2 %.3f)", f.policy.c_str(), f.slope,
                      f.r_squared);
        out << "<text x=\"" << M + 8 << "\" y=\"" << M + 16 + 16 * label++
            << "\" font-size=\"12\" fill=\"" << color << "\">" << buf << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace sbl
