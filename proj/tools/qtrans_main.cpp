// qtrans: closed-form sweeps, threshold reports and Monte Carlo validation
// for microwave-optical transduction based entanglement distribution.
//
// Exit codes: 0 success, 1 a simulate run tripped a statistical flag,
// 2 usage or config errors.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtrans/qtrans.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_statistical_flag = 1;
constexpr int exit_usage = 2;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

struct SweepOptions {
    qtrans::SweepSpec spec;
    std::vector<std::string> strategy_names;
    std::string detector_name = "counter";
    double det_eff = 1.0;
    std::string out_path;
};

void add_grid_flags(CLI::App* cmd, qtrans::SweepSpec& spec) {
    cmd->add_option("--cmin", spec.c_min, "cooperativity grid minimum (log-spaced)")
        ->capture_default_str();
    cmd->add_option("--cmax", spec.c_max, "cooperativity grid maximum")->capture_default_str();
    cmd->add_option("--cpoints", spec.c_points, "cooperativity grid points")->capture_default_str();
    cmd->add_option("--zeta-o", spec.zeta_o, "optical extraction ratio")->capture_default_str();
    cmd->add_option("--zeta-m", spec.zeta_m, "microwave extraction ratio")->capture_default_str();
}

int run_sweep(SweepOptions& opt) {
    if (!opt.strategy_names.empty()) {
        opt.spec.strategies.clear();
        for (const auto& name : opt.strategy_names) {
            const auto k = qtrans::parse_strategy(name);
            if (!k) throw CLI::ValidationError("--strategy", "unknown strategy '" + name + "'");
            opt.spec.strategies.push_back(*k);
        }
    }
    const auto kind = qtrans::parse_detector_kind(opt.detector_name);
    if (!kind) throw CLI::ValidationError("--detector", "expected 'counter' or 'spd'");
    opt.spec.detector = {*kind, opt.det_eff};

    const auto rows = qtrans::evaluate_sweep(opt.spec);
    auto out = open_output(opt.out_path);
    qtrans::write_sweep_csv(out, rows);
    std::cout << "wrote " << rows.size() << " rows to " << opt.out_path << "\n";
    return exit_ok;
}

int run_clicks(SweepOptions& opt) {
    const auto rows = qtrans::evaluate_clicks(opt.spec, opt.det_eff);
    auto out = open_output(opt.out_path);
    qtrans::write_clicks_csv(out, rows);
    std::cout << "wrote " << rows.size() << " rows to " << opt.out_path << "\n";
    return exit_ok;
}

int run_thresholds(int n_clients, const std::string& out_path) {
    const auto rep = qtrans::compute_thresholds(n_clients);
    if (out_path.empty()) {
        qtrans::write_thresholds(std::cout, rep);
    } else {
        auto out = open_output(out_path);
        qtrans::write_thresholds(out, rep);
    }
    return exit_ok;
}

struct SimulateOptions {
    std::string config_path;
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_base;
    std::string sample_path;
};

int run_simulate(const SimulateOptions& opt) {
    if (!opt.sample_path.empty()) {
        auto out = open_output(opt.sample_path);
        qtrans::write_network_config(out, qtrans::sample_network_config());
        std::cout << "wrote sample config to " << opt.sample_path << "\n";
        return exit_ok;
    }
    if (opt.config_path.empty())
        throw CLI::ValidationError("--config", "a config file is required");

    qtrans::NetworkConfig cfg = qtrans::load_network_config(opt.config_path);
    if (opt.seed_given) cfg.rng_seed = opt.seed;

    const qtrans::TrialReport rep = qtrans::run_trials(cfg, opt.trials);
    const qtrans::ComparisonTable table = qtrans::compare_report(cfg, rep);

    if (!opt.out_base.empty()) {
        auto text = open_output(opt.out_base + ".txt");
        qtrans::write_report_text(text, cfg, rep, table);
        auto json = open_output(opt.out_base + ".json");
        json << qtrans::report_to_json(cfg, rep, table).dump(2) << "\n";
    }
    qtrans::write_report_text(std::cout, cfg, rep, table);
    return table.any_flagged ? exit_statistical_flag : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "models of microwave-optical quantum transduction for multipartite "
        "entanglement distribution"};
    app.require_subcommand(1);

    // sweep
    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand(
        "sweep",
        "Evaluate the per-link ebit distribution probability and capacity bound of each "
        "strategy over a cooperativity x link-length grid (CSV). Rows within 1e-3 of "
        "probability 1/2 are marked in the contour_half column, tracing the p = 1/2 "
        "operative contour of the probability surfaces.");
    add_grid_flags(sweep, sweep_opt.spec);
    sweep->add_option("--lmin", sweep_opt.spec.l_min, "link length grid minimum, km")
        ->capture_default_str();
    sweep->add_option("--lmax", sweep_opt.spec.l_max, "link length grid maximum, km")
        ->capture_default_str();
    sweep->add_option("--lpoints", sweep_opt.spec.l_points, "link length grid points")
        ->capture_default_str();
    sweep->add_option("--att-length", sweep_opt.spec.attenuation_length_km,
                      "fiber attenuation length, km")
        ->capture_default_str();
    sweep->add_option("--strategy", sweep_opt.strategy_names,
                      "strategy (dmd, vanilla-tmd, ie-tmd, ies-tmd); repeatable, default all");
    sweep->add_option("--detector", sweep_opt.detector_name, "detector kind for ies-tmd rows")
        ->capture_default_str();
    sweep->add_option("--det-eff", sweep_opt.det_eff, "detector efficiency")->capture_default_str();
    sweep->add_option("--out", sweep_opt.out_path, "output CSV path")->required();

    // thresholds
    int thr_n = 3;
    std::string thr_out;
    auto* thresholds = app.add_subcommand(
        "thresholds",
        "Print the closed-form cooperativity thresholds (12 significant digits): the "
        "intrinsic-EPR point where eta = 1/2, the single-link DMD one-way-capacity "
        "threshold, and the n-client DMD threshold solved numerically.");
    thresholds->add_option("--n", thr_n, "client count for the state-level DMD threshold")
        ->capture_default_str();
    thresholds->add_option("--out", thr_out, "write the report to a file instead of stdout");

    // clicks
    SweepOptions clicks_opt;
    clicks_opt.det_eff = 0.25;
    auto* clicks = app.add_subcommand(
        "clicks",
        "Tabulate mid-point heralding click probabilities against cooperativity (CSV): "
        "photon-counter clicks 2(eta - eta^2), ideal and efficiency-limited "
        "single-photon-detector clicks, and the genuine-herald fraction.");
    add_grid_flags(clicks, clicks_opt.spec);
    clicks->add_option("--det-eff", clicks_opt.det_eff,
                       "efficiency of the realistic single-photon detector")
        ->capture_default_str();
    clicks->add_option("--out", clicks_opt.out_path, "output CSV path")->required();

    // simulate
    SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand(
        "simulate",
        "Run the Monte Carlo engine from a config file, compare empirical rates against "
        "the closed forms, and write the report as text and JSON. Exits 1 if any link "
        "deviates beyond 3 binomial sigma.");
    simulate->add_option("--config", sim_opt.config_path, "network config file");
    simulate->add_option("--trials", sim_opt.trials, "number of trials")->capture_default_str();
    auto* seed_opt = simulate->add_option("--seed", sim_opt.seed, "override the config seed");
    simulate->add_option("--out", sim_opt.out_base,
                         "report base path; writes <base>.txt and <base>.json");
    simulate->add_option("--write-sample-config", sim_opt.sample_path,
                         "write a documented sample config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*sweep) return run_sweep(sweep_opt);
        if (*thresholds) return run_thresholds(thr_n, thr_out);
        if (*clicks) return run_clicks(clicks_opt);
        sim_opt.seed_given = seed_opt->count() > 0;
        return run_simulate(sim_opt);
    } catch (const qtrans::config_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
