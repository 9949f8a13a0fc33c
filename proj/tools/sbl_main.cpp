// Command-line driver for the smooth-bandit simulation library.
//
// Subcommands: sweep | slope | adversary | construct | certify | clean-scan.
// JSON-config subcommands take the config path as the single positional
// argument; --seed overrides the config's master_seed. Exit codes: 0 on
// success, 2 on configuration errors, 3 on numeric failures.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "sbl/adversary.hpp"
#include "sbl/clean_event.hpp"
#include "sbl/construction.hpp"
#include "sbl/holder.hpp"
#include "sbl/info_theory.hpp"
#include "sbl/parallel.hpp"
#include "sbl/sim.hpp"
#include "sbl/sweep.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const std::string& path, const std::vector<std::string>& allowed_keys) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    std::string unknown;
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed_keys.begin(), allowed_keys.end(), key) == allowed_keys.end()) {
            unknown += unknown.empty() ? key : ", " + key;
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys in " + path + ": " + unknown);
    }
    return j;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        auto out = open_output(out_path);
        out << text;
    }
}

sbl::RewardCurve curve_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return sbl::RewardCurve::constant(j.at("value").get<double>());
    if (kind == "sinusoidal") {
        sbl::SinusoidalParams p;
        p.amplitude = j.at("A").get<double>();
        p.frequency = j.at("nu").get<double>();
        p.phase = j.value("phi", 0.0);
        p.offset = j.contains("offset") ? j["offset"].get<double>() : p.amplitude;
        return sbl::RewardCurve::sinusoidal(p);
    }
    if (kind == "family") {
        const int beta = j.at("beta").get<int>();
        const auto T = j.at("T").get<std::int64_t>();
        sbl::ColorSeq colors;
        if (j.contains("colors")) colors = sbl::parse_colors(j["colors"].get<std::string>());
        return sbl::RewardCurve::family(sbl::FamilySpec::make(beta, T, colors));
    }
    throw ConfigError("unknown curve kind: " + kind);
}

void write_curve_csv(const std::function<double(double)>& f, int samples, std::ostream& out) {
    out << "x,value\n";
    char buf[64];
    for (int i = 0; i <= samples; ++i) {
        const double x = static_cast<double>(i) / samples;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, f(x));
        out << buf;
    }
}

json report_to_json(const sbl::ConstructionReport& rep) {
    json j;
    j["beta"] = rep.beta;
    j["eps"] = rep.eps;
    j["height"] = rep.height;
    j["endpoint_derivatives_at_0"] = rep.endpoint_deriv_lo;
    j["endpoint_derivatives_at_eps"] = rep.endpoint_deriv_hi;
    j["min_derivative"] = rep.min_derivative;
    j["lipschitz_highest"] = rep.lipschitz_highest;
    j["neutral_blocks_ok"] = rep.neutral_blocks_ok;
    j["endpoints_ok"] = rep.endpoints_ok;
    j["monotone_ok"] = rep.monotone_ok;
    j["lipschitz_ok"] = rep.lipschitz_ok;
    j["pass"] = rep.pass;
    return j;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  std::optional<std::uint64_t> seed, const std::string& svg_path) {
    const json j = load_config(config_path, {"horizons", "tunings", "instances_per_T",
                                             "master_seed"});
    sbl::SweepConfig cfg;
    cfg.horizons = j.at("horizons").get<std::vector<std::int64_t>>();
    cfg.tunings = j.at("tunings").get<std::vector<std::string>>();
    cfg.instances_per_horizon = j.value("instances_per_T", 100);
    cfg.master_seed = j.value("master_seed", std::uint64_t{1});
    if (seed) cfg.master_seed = *seed;
    cfg.validate();

    auto out = open_output(out_path);  // fail before any simulation starts
    const auto rows = sbl::run_sweep(cfg);
    sbl::write_sweep_csv(rows, out);
    if (!svg_path.empty()) {
        auto svg = open_output(svg_path);
        // Only power-law-fittable groups get a line (oracle rows sit at 0).
        std::map<std::string, std::vector<sbl::SweepRow>> groups;
        for (const auto& r : rows) groups[r.policy].push_back(r);
        std::vector<sbl::SlopeFit> fits;
        for (const auto& [policy, group] : groups) {
            (void)policy;
            const bool positive = std::all_of(group.begin(), group.end(),
                                              [](const auto& r) { return r.mean_regret > 0.0; });
            if (positive && group.size() >= 3) fits.push_back(sbl::fit_slope(group));
        }
        sbl::write_svg_scatter(rows, fits, svg);
    }
    return 0;
}

int run_slope_cmd(const std::string& csv_path, const std::string& out_path) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("cannot open CSV file: " + csv_path);
    const auto rows = sbl::read_sweep_csv(in);
    json out = json::array();
    for (const auto& fit : sbl::fit_slopes(rows)) {
        out.push_back({{"policy", fit.policy},
                       {"slope", fit.slope},
                       {"intercept", fit.intercept},
                       {"r_squared", fit.r_squared}});
    }
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

int run_adversary_cmd(const std::string& config_path, const std::string& out_path,
                      std::optional<std::uint64_t> seed) {
    const json j = load_config(config_path,
                               {"beta", "T", "policy", "rollouts_per_decision", "eval_rollouts",
                                "master_seed"});
    sbl::AdversaryConfig cfg;
    cfg.beta = j.at("beta").get<int>();
    cfg.horizon = j.at("T").get<std::int64_t>();
    cfg.rollouts_per_decision = j.value("rollouts_per_decision", 64);
    cfg.eval_rollouts = j.value("eval_rollouts", 64);
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    if (seed) cfg.master_seed = *seed;
    const sbl::PolicySpec policy = sbl::PolicySpec::from_json_string(j.at("policy").dump());

    const sbl::AdversaryResult res = sbl::greedy_adversary(policy, cfg);
    json out;
    out["colors"] = sbl::format_colors(res.colors);
    out["estimated_regret"] = res.estimated_regret;
    out["stderr"] = res.stderr_of_mean;
    out["lb_value"] = res.lower_bound;
    out["ratio"] = res.ratio;
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

int run_construct_cmd(int beta, std::int64_t horizon, const std::string& colors, double eps,
                      int samples, const std::string& out_path, const std::string& report_path) {
    std::string verify_json = report_to_json(sbl::verify_construction(beta, eps)).dump(2) + "\n";
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        if (horizon > 0) {
            sbl::ColorSeq seq;
            if (!colors.empty()) seq = sbl::parse_colors(colors);
            const sbl::FamilySpec spec = sbl::FamilySpec::make(beta, horizon, seq);
            const sbl::PiecewisePoly poly = sbl::family_poly(spec);
            write_curve_csv([&](double x) { return poly(x); }, samples, out);
        } else {
            const sbl::PiecewisePoly g = sbl::bump(beta, eps);
            write_curve_csv([&](double x) { return g(x * eps); }, samples, out);
        }
    }
    emit(report_path, verify_json);
    return 0;
}

int run_certify_cmd(const std::string& config_path, const std::string& out_path) {
    const json j = load_config(config_path, {"curve", "beta", "L", "grid_n"});
    const sbl::RewardCurve curve = curve_from_json(j.at("curve"));
    const sbl::HolderReport rep = sbl::certify_holder(curve, j.at("beta").get<int>(),
                                                      j.at("L").get<double>(),
                                                      j.value("grid_n", 10000));
    json out;
    out["beta"] = rep.beta;
    out["L"] = rep.lipschitz_bound;
    out["grid_n"] = rep.grid_n;
    out["max_ratio_f"] = rep.max_ratio_f;
    out["max_ratio_deriv"] = rep.max_ratio_deriv;
    out["resolved"] = rep.resolved;
    out["pass"] = rep.pass;
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

int run_clean_scan_cmd(const std::string& config_path, const std::string& out_path,
                       std::optional<std::uint64_t> seed) {
    const json j = load_config(config_path, {"T", "trials", "mu", "log_T", "k", "master_seed"});
    const auto T = j.at("T").get<std::int64_t>();
    const int trials = j.value("trials", 1000);
    const double mu = j.value("mu", 0.0);
    const double log_T = j.contains("log_T") ? j["log_T"].get<double>()
                                             : std::log(static_cast<double>(T));
    std::optional<int> k_arms;
    if (j.contains("k")) k_arms = j["k"].get<int>();
    std::uint64_t master = j.value("master_seed", std::uint64_t{0});
    if (seed) master = *seed;

    std::vector<double> means(static_cast<std::size_t>(T), mu);
    std::vector<std::int64_t> one(static_cast<std::size_t>(trials));
    std::vector<std::int64_t> two(static_cast<std::size_t>(trials));
    sbl::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        sbl::Rng rng(sbl::splitmix64_at(master, i));
        std::vector<int> draws(static_cast<std::size_t>(T));
        for (auto& z : draws) z = sbl::draw_reward(rng, mu);
        const sbl::CleanScanResult res = sbl::clean_event_scan(means, draws, log_T, k_arms);
        one[i] = res.one_sided;
        two[i] = res.two_sided;
    });
    std::int64_t viol_one = 0, viol_two = 0, total_one = 0, total_two = 0;
    for (int i = 0; i < trials; ++i) {
        total_one += one[static_cast<std::size_t>(i)];
        total_two += two[static_cast<std::size_t>(i)];
        viol_one += one[static_cast<std::size_t>(i)] > 0;
        viol_two += two[static_cast<std::size_t>(i)] > 0;
    }
    json out;
    out["T"] = T;
    out["trials"] = trials;
    out["log_T"] = log_T;
    out["violating_trials_one_sided"] = viol_one;
    out["violating_trials_two_sided"] = viol_two;
    out["violations_one_sided"] = total_one;
    out["violations_two_sided"] = total_two;
    out["violating_fraction_two_sided"] = static_cast<double>(viol_two) / trials;
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth non-stationary bandit simulation lab"};
    app.require_subcommand(1);

    std::string config_path, out_path, svg_path, report_path, colors, csv_path;
    std::optional<std::uint64_t> seed;
    int beta = 2;
    std::int64_t horizon = 0;
    double eps = 1.0;
    int samples = 1024;

    auto* sweep = app.add_subcommand("sweep", "horizon sweep over sinusoidal instances");
    sweep->add_option("config", config_path, "JSON config")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--seed", seed, "override master_seed");
    sweep->add_option("--svg", svg_path, "optional SVG scatter path");

    auto* slope = app.add_subcommand("slope", "fit log-log slopes from a sweep CSV");
    slope->add_option("csv", csv_path, "input CSV from sweep")->required();
    slope->add_option("--out", out_path, "output JSON path (stdout if omitted)");

    auto* adversary = app.add_subcommand("adversary", "greedy lower-bound adversary");
    adversary->add_option("config", config_path, "JSON config")->required();
    adversary->add_option("--out", out_path, "output JSON path (stdout if omitted)");
    adversary->add_option("--seed", seed, "override master_seed");

    auto* construct = app.add_subcommand("construct", "emit bump/family curve samples");
    construct->add_option("--beta", beta, "smoothness order")->required();
    construct->add_option("--T", horizon, "horizon; with it the family curve is emitted");
    construct->add_option("--colors", colors, "epoch colors, e.g. rbrb");
    construct->add_option("--eps", eps, "bump width when no horizon is given");
    construct->add_option("--samples", samples, "CSV sample count");
    construct->add_option("--out", out_path, "curve CSV path");
    construct->add_option("--report", report_path, "verification JSON path (stdout if omitted)");

    auto* certify = app.add_subcommand("certify", "finite-difference Holder certificate");
    certify->add_option("config", config_path, "JSON config")->required();
    certify->add_option("--out", out_path, "output JSON path (stdout if omitted)");

    auto* clean = app.add_subcommand("clean-scan", "interval concentration scan");
    clean->add_option("config", config_path, "JSON config")->required();
    clean->add_option("--out", out_path, "output JSON path (stdout if omitted)");
    clean->add_option("--seed", seed, "override master_seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) return run_sweep_cmd(config_path, out_path, seed, svg_path);
        if (slope->parsed()) return run_slope_cmd(csv_path, out_path);
        if (adversary->parsed()) return run_adversary_cmd(config_path, out_path, seed);
        if (construct->parsed()) {
            return run_construct_cmd(beta, horizon, colors, eps, samples, out_path, report_path);
        }
        if (certify->parsed()) return run_certify_cmd(config_path, out_path);
        if (clean->parsed()) return run_clean_scan_cmd(config_path, out_path, seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
