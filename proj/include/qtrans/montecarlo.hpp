#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrans/herald.hpp"
#include "qtrans/qubits.hpp"
#include "qtrans/rng.hpp"
#include "qtrans/strategies.hpp"

namespace qtrans {

// How IES attempts are sampled. `photon` follows each generated optical
// photon through fiber loss and detection, which exposes false heralds
// (a double generation that loses one photon looks like a genuine click).
// `formula` draws the closed-form herald probability directly.
enum class IesView { photon, formula };

inline const char* to_string(IesView v) { return v == IesView::photon ? "photon" : "formula"; }

inline std::optional<IesView> parse_ies_view(std::string_view s) {
    if (s == "photon") return IesView::photon;
    if (s == "formula") return IesView::formula;
    return std::nullopt;
}

// Star network: one orchestrator, n_clients links.
struct NetworkConfig {
    int n_clients = 1;
    std::vector<LinkConfig> links;  // one per client
    StrategyKind strategy = StrategyKind::vanilla_tmd;
    DetectorModel detector{};  // IES-TMD only
    int max_attempts_per_epr = 100000;
    std::uint64_t rng_seed = 0;
    IesView ies_view = IesView::photon;
    bool sequential = false;  // wall-clock accounting only; statistics are identical

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

inline void validate(const NetworkConfig& cfg) {
    if (cfg.n_clients < 1) throw std::invalid_argument("network: need at least one client");
    if (static_cast<int>(cfg.links.size()) != cfg.n_clients)
        throw std::invalid_argument("network: links must match n_clients");
    if (cfg.max_attempts_per_epr < 1) throw std::invalid_argument("network: max_attempts_per_epr >= 1");
    for (const auto& l : cfg.links) validate(l);
    validate(cfg.detector);
}

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const WilsonInterval&, const WilsonInterval&) = default;
};

// 95% Wilson score interval; always contains the point estimate (the
// degenerate endpoints are widened to it, guarding against rounding).
inline WilsonInterval wilson_interval_95(std::int64_t successes, std::int64_t n) {
    if (n <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double phat = static_cast<double>(successes) / static_cast<double>(n);
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::min(std::max(0.0, center - half), phat), std::max(std::min(1.0, center + half), phat)};
}

struct HeraldStats {
    std::int64_t counter_clicks = 0;
    std::int64_t spd_clicks = 0;
    std::int64_t false_heralds = 0;

    friend bool operator==(const HeraldStats&, const HeraldStats&) = default;
};

struct TrialReport {
    std::int64_t trials = 0;
    // per-attempt success rates: one Bernoulli estimate per link
    std::vector<double> per_link_success_rate;
    double state_success_rate = 0.0;
    // attempts per established EPR, pooled over links; 0 if nothing was
    // established
    double mean_attempts_per_epr = 0.0;
    HeraldStats herald_stats;
    std::vector<WilsonInterval> per_link_wilson_95;
    WilsonInterval state_wilson_95;

    // raw tallies behind the rates
    std::vector<std::int64_t> per_link_successes;
    std::vector<std::int64_t> per_link_attempts;
    std::int64_t state_successes = 0;
    std::int64_t attempts_total = 0;
    std::int64_t established_total = 0;
    std::int64_t exhausted_count = 0;  // link rounds that hit max_attempts

    friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

namespace detail_mc {

// Everything one link needs per attempt, precomputed once.
struct LinkPlan {
    StrategyKind strategy = StrategyKind::vanilla_tmd;
    IesView view = IesView::photon;
    DetectorModel detector{};

    // staged Bernoulli probabilities (dmd / vanilla / ie)
    double p_generate = 0.0;  // eta_up, or S(eta) for intrinsic generation
    double p_fiber = 0.0;     // full-length survival
    double p_down = 0.0;      // client down-conversion

    // ies
    double p_no = 0.0, p_single = 0.0, p_double = 0.0;  // exact generation classes
    double p_mid_survival = 0.0;                        // half-length survival per photon
    double p_yield = 0.0;                               // S(eta), distillable fraction

    double analytic = 0.0;  // per-attempt establishment probability
};

inline LinkPlan make_plan(const NetworkConfig& cfg, int link_index) {
    const LinkConfig& link = cfg.links[static_cast<std::size_t>(link_index)];
    LinkPlan plan;
    plan.strategy = cfg.strategy;
    plan.view = cfg.ies_view;
    plan.detector = cfg.detector;

    switch (cfg.strategy) {
        case StrategyKind::dmd:
        case StrategyKind::vanilla_tmd:
            plan.p_generate = efficiency(link.orchestrator);
            plan.p_fiber = survival(link.link);
            plan.p_down = efficiency(link.client);
            plan.analytic = plan.p_generate * plan.p_fiber * plan.p_down;
            break;
        case StrategyKind::ie_tmd: {
            ReducedParams gen = link.orchestrator;
            gen.cooperativity = std::min(gen.cooperativity, intrinsic_epr_cooperativity());
            plan.p_generate = binary_entropy(efficiency(gen));
            plan.p_fiber = survival(link.link);
            plan.p_down = efficiency(link.client);
            plan.analytic = plan.p_generate * plan.p_fiber * plan.p_down;
            break;
        }
        case StrategyKind::ies_tmd: {
            const double eta = efficiency(link.orchestrator);
            const HeraldDistribution dist = ies_swap_enumerate(eta, eta, cfg.detector);
            plan.p_no = dist.p_no_click;
            plan.p_single = dist.p_single_click;
            plan.p_double = dist.p_double_photon;
            plan.p_mid_survival = survival(link.link, 0.5);
            plan.p_yield = binary_entropy(eta);
            plan.analytic =
                plan.p_single * plan.p_mid_survival * cfg.detector.efficiency * plan.p_yield;
            break;
        }
    }
    return plan;
}

struct AttemptResult {
    bool established = false;
    bool reported_click = false;
    bool false_herald = false;
};

inline AttemptResult sample_attempt(const LinkPlan& plan, SplitMix64& rng) {
    AttemptResult res;
    switch (plan.strategy) {
        case StrategyKind::dmd:
        case StrategyKind::vanilla_tmd:
        case StrategyKind::ie_tmd:
            res.established = rng.bernoulli(plan.p_generate) && rng.bernoulli(plan.p_fiber) &&
                              rng.bernoulli(plan.p_down);
            return res;
        case StrategyKind::ies_tmd:
            break;
    }

    if (plan.view == IesView::formula) {
        // genuine single-photon heralds only; double generations are folded
        // into the miss probability
        const bool herald =
            rng.bernoulli(plan.p_single * plan.p_mid_survival * plan.detector.efficiency);
        res.reported_click = herald;
        res.established = herald && rng.bernoulli(plan.p_yield);
        return res;
    }

    // photon-level view
    const double r = rng.next_double();
    int generated = 0;
    if (r >= plan.p_no) generated = r < plan.p_no + plan.p_single ? 1 : 2;
    int arrived = 0;
    for (int i = 0; i < generated; ++i) arrived += rng.bernoulli(plan.p_mid_survival) ? 1 : 0;
    int detected = 0;
    for (int i = 0; i < arrived; ++i) detected += rng.bernoulli(plan.detector.efficiency) ? 1 : 0;

    const bool reported = plan.detector.kind == DetectorKind::photon_counter ? detected == 1
                                                                             : detected >= 1;
    const bool genuine = generated == 1 && detected == 1;
    res.reported_click = reported;
    res.false_herald = reported && !genuine;
    res.established = genuine && rng.bernoulli(plan.p_yield);
    return res;
}

}  // namespace detail_mc

// Per-attempt establishment probability the simulator is expected to
// converge to. For IES this folds in the detector efficiency; the other
// strategies involve no detector.
inline double analytic_link_probability(const NetworkConfig& cfg, int link_index) {
    validate(cfg);
    if (link_index < 0 || link_index >= cfg.n_clients)
        throw std::out_of_range("analytic_link_probability: bad link index");
    return detail_mc::make_plan(cfg, link_index).analytic;
}

// DMD: one simultaneous attempt across all links per trial; the state
// survives only if every link succeeds. TMD variants: each link retries
// until established or max_attempts_per_epr is exhausted.
inline TrialReport run_trials(const NetworkConfig& cfg, std::int64_t trials) {
    validate(cfg);
    if (trials < 1) throw std::invalid_argument("run_trials: need at least one trial");

    const int n = cfg.n_clients;
    std::vector<detail_mc::LinkPlan> plans;
    plans.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) plans.push_back(detail_mc::make_plan(cfg, i));

    TrialReport rep;
    rep.trials = trials;
    rep.per_link_successes.assign(static_cast<std::size_t>(n), 0);
    rep.per_link_attempts.assign(static_cast<std::size_t>(n), 0);

    const bool one_shot = cfg.strategy == StrategyKind::dmd;
    const bool counter = cfg.detector.kind == DetectorKind::photon_counter;

    for (std::int64_t t = 0; t < trials; ++t) {
        bool all_ok = true;
        for (int i = 0; i < n; ++i) {
            const auto& plan = plans[static_cast<std::size_t>(i)];
            const std::size_t si = static_cast<std::size_t>(i);

            // a zero-probability link never establishes; skip the draws but
            // keep the attempt accounting identical
            if (!one_shot && plan.analytic == 0.0 &&
                (plan.strategy != StrategyKind::ies_tmd || plan.view == IesView::formula) &&
                plan.p_single * plan.p_mid_survival * plan.detector.efficiency == 0.0) {
                rep.per_link_attempts[si] += cfg.max_attempts_per_epr;
                rep.exhausted_count += 1;
                all_ok = false;
                continue;
            }

            SplitMix64 rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(t)));
            bool established = false;
            const int budget = one_shot ? 1 : cfg.max_attempts_per_epr;
            for (int attempt = 0; attempt < budget; ++attempt) {
                rep.per_link_attempts[si] += 1;
                const auto res = detail_mc::sample_attempt(plan, rng);
                if (res.reported_click) {
                    if (counter)
                        rep.herald_stats.counter_clicks += 1;
                    else
                        rep.herald_stats.spd_clicks += 1;
                }
                if (res.false_herald) rep.herald_stats.false_heralds += 1;
                if (res.established) {
                    established = true;
                    rep.per_link_successes[si] += 1;
                    break;
                }
            }
            if (established) {
                rep.established_total += 1;
            } else {
                all_ok = false;
                if (!one_shot) rep.exhausted_count += 1;
            }
        }
        if (all_ok) rep.state_successes += 1;
    }

    rep.per_link_success_rate.resize(static_cast<std::size_t>(n));
    rep.per_link_wilson_95.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t si = static_cast<std::size_t>(i);
        rep.attempts_total += rep.per_link_attempts[si];
        rep.per_link_success_rate[si] =
            rep.per_link_attempts[si] > 0
                ? static_cast<double>(rep.per_link_successes[si]) / rep.per_link_attempts[si]
                : 0.0;
        rep.per_link_wilson_95[si] =
            wilson_interval_95(rep.per_link_successes[si], rep.per_link_attempts[si]);
    }
    rep.state_success_rate = static_cast<double>(rep.state_successes) / trials;
    rep.state_wilson_95 = wilson_interval_95(rep.state_successes, trials);
    rep.mean_attempts_per_epr =
        rep.established_total > 0
            ? static_cast<double>(rep.attempts_total) / rep.established_total
            : 0.0;
    return rep;
}

struct LinkComparison {
    int link_index = 0;
    double analytic = 0.0;
    double empirical = 0.0;
    double abs_deviation = 0.0;
    double binomial_sigma = 0.0;
    bool flagged = false;  // outside the 99.7% (3 sigma) binomial interval
};

struct ComparisonTable {
    std::vector<LinkComparison> links;
    bool any_flagged = false;
};

// Compares an existing run against the closed forms.
inline ComparisonTable compare_report(const NetworkConfig& cfg, const TrialReport& rep) {
    validate(cfg);
    ComparisonTable table;
    for (int i = 0; i < cfg.n_clients; ++i) {
        const std::size_t si = static_cast<std::size_t>(i);
        LinkComparison row;
        row.link_index = i;
        row.analytic = analytic_link_probability(cfg, i);
        row.empirical = rep.per_link_success_rate[si];
        row.abs_deviation = std::abs(row.empirical - row.analytic);
        const auto attempts = rep.per_link_attempts[si];
        row.binomial_sigma =
            attempts > 0 ? std::sqrt(row.analytic * (1.0 - row.analytic) / attempts) : 0.0;
        row.flagged = row.abs_deviation > 3.0 * row.binomial_sigma;
        table.any_flagged = table.any_flagged || row.flagged;
        table.links.push_back(row);
    }
    return table;
}

inline ComparisonTable empirical_vs_analytic(const NetworkConfig& cfg, std::int64_t trials) {
    if (trials < 10000)
        throw std::invalid_argument("empirical_vs_analytic: needs at least 10^4 trials");
    return compare_report(cfg, run_trials(cfg, trials));
}

// Runs one distribution round under `cfg` and, if every link delivered its
// EPR, teleports `multipartite` over the n ideal pairs; returns the fidelity
// against the intended state. Throws distribution_incomplete_error when any
// link failed its round.
inline double teleport_after_distribution(const NetworkConfig& cfg, const PureState& multipartite,
                                          std::uint64_t seed) {
    validate(cfg);
    if (multipartite.n_qubits() != cfg.n_clients)
        throw resource_mismatch_error(
            "teleport_after_distribution: state must carry one ebit per client");

    for (int i = 0; i < cfg.n_clients; ++i) {
        const auto plan = detail_mc::make_plan(cfg, i);
        SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(i), 0));
        const int budget = cfg.strategy == StrategyKind::dmd ? 1 : cfg.max_attempts_per_epr;
        bool established = false;
        if (plan.analytic > 0.0) {
            for (int attempt = 0; attempt < budget && !established; ++attempt)
                established = detail_mc::sample_attempt(plan, rng).established;
        }
        if (!established)
            throw distribution_incomplete_error("teleport_after_distribution: link " +
                                                std::to_string(i + 1) + " failed its round");
    }

    const PureState delivered =
        teleport(multipartite, cfg.n_clients,
                 substream_seed(seed, static_cast<std::uint64_t>(cfg.n_clients), 1));
    return fidelity(multipartite, delivered);
}

}  // namespace qtrans
