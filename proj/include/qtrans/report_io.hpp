#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "qtrans/detail/fmt.hpp"
#include "qtrans/montecarlo.hpp"

namespace qtrans {

// Human-readable simulate report. Byte-stable for a fixed (config, trials,
// seed) triple: fixed ordering, locale-independent numbers, no timestamps.
inline void write_report_text(std::ostream& out, const NetworkConfig& cfg, const TrialReport& rep,
                              const ComparisonTable& table) {
    using detail::format_sig;
    out << "simulation report\n";
    out << "strategy: " << to_string(cfg.strategy) << "\n";
    out << "clients: " << cfg.n_clients << "\n";
    out << "trials: " << rep.trials << "\n";
    out << "seed: " << cfg.rng_seed << "\n";
    out << "max_attempts_per_epr: " << cfg.max_attempts_per_epr << "\n";
    if (cfg.strategy == StrategyKind::ies_tmd) {
        out << "detector: " << to_string(cfg.detector.kind)
            << " eta_d=" << format_sig(cfg.detector.efficiency) << "\n";
        out << "ies_view: " << to_string(cfg.ies_view) << "\n";
    }
    out << "\nper-link (per-attempt rates):\n";
    for (const auto& row : table.links) {
        const std::size_t i = static_cast<std::size_t>(row.link_index);
        out << "link " << (row.link_index + 1) << ": analytic " << format_sig(row.analytic)
            << " empirical " << format_sig(row.empirical) << " |dev| "
            << format_sig(row.abs_deviation) << " 3sigma " << format_sig(3.0 * row.binomial_sigma)
            << " attempts " << rep.per_link_attempts[i] << " established "
            << rep.per_link_successes[i] << " wilson95 [" << format_sig(rep.per_link_wilson_95[i].lo)
            << ", " << format_sig(rep.per_link_wilson_95[i].hi) << "] "
            << (row.flagged ? "FLAG" : "ok") << "\n";
    }
    out << "\nstate_success_rate: " << format_sig(rep.state_success_rate) << "\n";
    out << "state_wilson95: [" << format_sig(rep.state_wilson_95.lo) << ", "
        << format_sig(rep.state_wilson_95.hi) << "]\n";
    out << "mean_attempts_per_epr: " << format_sig(rep.mean_attempts_per_epr) << "\n";
    out << "herald: counter_clicks=" << rep.herald_stats.counter_clicks
        << " spd_clicks=" << rep.herald_stats.spd_clicks
        << " false_heralds=" << rep.herald_stats.false_heralds << "\n";
    out << "exhausted_rounds: " << rep.exhausted_count << "\n";
    out << "verdict: " << (table.any_flagged ? "statistical-flag" : "ok") << "\n";
}

inline nlohmann::ordered_json report_to_json(const NetworkConfig& cfg, const TrialReport& rep,
                                             const ComparisonTable& table) {
    nlohmann::ordered_json j;
    j["strategy"] = to_string(cfg.strategy);
    j["clients"] = cfg.n_clients;
    j["trials"] = rep.trials;
    j["seed"] = cfg.rng_seed;
    j["max_attempts_per_epr"] = cfg.max_attempts_per_epr;
    if (cfg.strategy == StrategyKind::ies_tmd) {
        j["detector"] = to_string(cfg.detector.kind);
        j["detector_efficiency"] = cfg.detector.efficiency;
        j["ies_view"] = to_string(cfg.ies_view);
    }
    auto links = nlohmann::ordered_json::array();
    for (const auto& row : table.links) {
        const std::size_t i = static_cast<std::size_t>(row.link_index);
        nlohmann::ordered_json lj;
        lj["link"] = row.link_index + 1;
        lj["analytic"] = row.analytic;
        lj["empirical"] = row.empirical;
        lj["abs_deviation"] = row.abs_deviation;
        lj["binomial_sigma"] = row.binomial_sigma;
        lj["attempts"] = rep.per_link_attempts[i];
        lj["established"] = rep.per_link_successes[i];
        lj["wilson95"] = {rep.per_link_wilson_95[i].lo, rep.per_link_wilson_95[i].hi};
        lj["flagged"] = row.flagged;
        links.push_back(lj);
    }
    j["links"] = links;
    j["state_success_rate"] = rep.state_success_rate;
    j["state_wilson95"] = {rep.state_wilson_95.lo, rep.state_wilson_95.hi};
    j["mean_attempts_per_epr"] = rep.mean_attempts_per_epr;
    j["herald"] = {{"counter_clicks", rep.herald_stats.counter_clicks},
                   {"spd_clicks", rep.herald_stats.spd_clicks},
                   {"false_heralds", rep.herald_stats.false_heralds}};
    j["exhausted_rounds"] = rep.exhausted_count;
    j["any_flagged"] = table.any_flagged;
    return j;
}

}  // namespace qtrans
