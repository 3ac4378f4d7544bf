#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrans/detail/fmt.hpp"
#include "qtrans/detector.hpp"
#include "qtrans/strategies.hpp"
#include "qtrans/transducer.hpp"

namespace qtrans {

// Grid specification for the closed-form sweeps. A single-point axis
// (points = 1) pins that variable to its min value.
struct SweepSpec {
    double c_min = 1e-5;  // default grid covers the experimentally reported
    double c_max = 10.0;  // cooperativities (1e-5..1e-3) up to past the peak
    int c_points = 61;
    double l_min = 0.0;
    double l_max = 100.0;
    int l_points = 21;
    double zeta_o = 1.0;
    double zeta_m = 1.0;
    double attenuation_length_km = 22.0;
    std::vector<StrategyKind> strategies{all_strategies.begin(), all_strategies.end()};
    DetectorModel detector{};
};

inline void validate(const SweepSpec& s) {
    if (s.c_points < 1 || s.l_points < 1) throw std::domain_error("sweep: grids must be non-empty");
    if (s.c_points >= 2 && !(s.c_min < s.c_max)) throw std::domain_error("sweep: need c_min < c_max");
    if (s.l_points >= 2 && !(s.l_min < s.l_max)) throw std::domain_error("sweep: need l_min < l_max");
    if (!(s.c_min > 0.0)) throw std::domain_error("sweep: cooperativity grid is log-spaced, c_min > 0");
    if (!(s.l_min >= 0.0)) throw std::domain_error("sweep: link lengths must be >= 0");
    if (!(s.attenuation_length_km > 0.0)) throw std::domain_error("sweep: attenuation length > 0");
    if (s.strategies.empty()) throw std::domain_error("sweep: strategy set must be non-empty");
    validate(s.detector);
}

inline std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    g.front() = lo;
    if (points == 1) return g;
    const double ratio = std::log(hi / lo);
    for (int i = 1; i < points - 1; ++i)
        g[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i / (points - 1));
    g.back() = hi;
    return g;
}

inline std::vector<double> linear_spaced(double lo, double hi, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    g.front() = lo;
    if (points == 1) return g;
    for (int i = 1; i < points - 1; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

// One CSV row of a sweep.
struct OutputRecord {
    StrategyKind strategy = StrategyKind::vanilla_tmd;
    double cooperativity = 0.0;
    double length_km = 0.0;
    double zeta_o = 1.0;
    double zeta_m = 1.0;
    double eta = 0.0;          // conversion efficiency at this operating point
    double probability = 0.0;  // per-link ebit distribution probability
    double capacity_bound = 0.0;
    std::string extra;     // detector kind for ies-tmd rows
    bool contour_half = false;  // probability within 1e-3 of 1/2
};

// Cartesian product over (strategy, C, l); symmetric hardware at both ends.
inline std::vector<OutputRecord> evaluate_sweep(const SweepSpec& spec) {
    validate(spec);
    const auto c_grid = log_spaced(spec.c_min, spec.c_max, spec.c_points);
    const auto l_grid = linear_spaced(spec.l_min, spec.l_max, spec.l_points);

    std::vector<OutputRecord> rows;
    rows.reserve(spec.strategies.size() * c_grid.size() * l_grid.size());
    for (StrategyKind kind : spec.strategies) {
        for (double c : c_grid) {
            const double eta = efficiency(ReducedParams{c, spec.zeta_o, spec.zeta_m});
            for (double l : l_grid) {
                const LinkConfig cfg = symmetric_link(c, spec.zeta_o, spec.zeta_m,
                                                      FiberLink{l, spec.attenuation_length_km});
                OutputRecord row;
                row.strategy = kind;
                row.cooperativity = c;
                row.length_km = l;
                row.zeta_o = spec.zeta_o;
                row.zeta_m = spec.zeta_m;
                row.eta = eta;
                row.probability = ebit_prob(kind, cfg);
                row.capacity_bound = capacity_bound(kind, cfg);
                if (kind == StrategyKind::ies_tmd) row.extra = to_string(spec.detector.kind);
                row.contour_half = std::abs(row.probability - 0.5) <= 1e-3;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<OutputRecord>& rows) {
    using detail::format_sig;
    out << "strategy,cooperativity,length_km,zeta_o,zeta_m,eta,probability,capacity_bound,extra,"
           "contour_half\n";
    for (const auto& r : rows) {
        out << to_string(r.strategy) << ',' << format_sig(r.cooperativity) << ','
            << format_sig(r.length_km) << ',' << format_sig(r.zeta_o) << ','
            << format_sig(r.zeta_m) << ',' << format_sig(r.eta) << ','
            << format_sig(r.probability) << ',' << format_sig(r.capacity_bound) << ','
            << r.extra << ',' << (r.contour_half ? "true" : "false") << '\n';
    }
}

// One CSV row of the heralding-click sweep (zero-length links: the click
// statistics are detector-side quantities).
struct ClickRecord {
    double cooperativity = 0.0;
    double eta = 0.0;
    double counter_click_prob = 0.0;    // 2(eta - eta^2), heralds entanglement
    double spd_click_prob_ideal = 0.0;  // 2 eta - eta^2
    double spd_click_prob_real = 0.0;   // per-photon detection at eta_d
    double genuine_herald_fraction = 0.0;
};

inline std::vector<ClickRecord> evaluate_clicks(const SweepSpec& spec, double detector_efficiency) {
    validate(spec);
    if (!(detector_efficiency >= 0.0 && detector_efficiency <= 1.0))
        throw std::domain_error("clicks: detector efficiency outside [0,1]");
    const auto c_grid = log_spaced(spec.c_min, spec.c_max, spec.c_points);

    std::vector<ClickRecord> rows;
    rows.reserve(c_grid.size());
    const DetectorModel ideal{DetectorKind::single_photon_detector, 1.0};
    const DetectorModel real{DetectorKind::single_photon_detector, detector_efficiency};
    for (double c : c_grid) {
        ClickRecord row;
        row.cooperativity = c;
        row.eta = efficiency(ReducedParams{c, spec.zeta_o, spec.zeta_m});
        row.counter_click_prob = ies_counter_click_prob(row.eta);
        row.spd_click_prob_ideal = ies_spd_click_prob(row.eta, ideal);
        row.spd_click_prob_real = ies_spd_click_prob(row.eta, real);
        row.genuine_herald_fraction = row.eta > 0.0 ? ies_herald_fidelity_fraction(row.eta) : 1.0;
        rows.push_back(row);
    }
    return rows;
}

inline void write_clicks_csv(std::ostream& out, const std::vector<ClickRecord>& rows) {
    using detail::format_sig;
    out << "cooperativity,eta,counter_click_prob,spd_click_prob_ideal,spd_click_prob_real,"
           "genuine_herald_fraction\n";
    for (const auto& r : rows) {
        out << format_sig(r.cooperativity) << ',' << format_sig(r.eta) << ','
            << format_sig(r.counter_click_prob) << ',' << format_sig(r.spd_click_prob_ideal) << ','
            << format_sig(r.spd_click_prob_real) << ',' << format_sig(r.genuine_herald_fraction)
            << '\n';
    }
}

// Closed-form operating thresholds plus the n-client DMD threshold solved
// numerically (symmetric hardware, unit extraction, zero-length links).
struct ThresholdReport {
    double epr_cooperativity = 0.0;      // eta = 1/2 point, 3 - 2 sqrt(2)
    double dmd_link_threshold = 0.0;     // exact radical, eta^2 = 1/2
    int n_clients = 1;
    double dmd_state_threshold = 0.0;    // solves (eta^2)^n = 1/2 by bisection
};

inline ThresholdReport compute_thresholds(int n_clients) {
    if (n_clients < 1) throw std::domain_error("thresholds: need n >= 1");
    ThresholdReport rep;
    rep.epr_cooperativity = intrinsic_epr_cooperativity();
    rep.dmd_link_threshold = dmd_cooperativity_threshold();
    rep.n_clients = n_clients;

    // (eta(C)^2)^n - 1/2 is monotone increasing on (0, 1]
    auto f = [n_clients](double c) {
        const double eta = efficiency(ReducedParams{c, 1.0, 1.0});
        return std::pow(eta * eta, n_clients) - 0.5;
    };
    double lo = 1e-12, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    rep.dmd_state_threshold = 0.5 * (lo + hi);
    return rep;
}

inline void write_thresholds(std::ostream& out, const ThresholdReport& rep) {
    using detail::format_sig;
    out << "epr_cooperativity " << format_sig(rep.epr_cooperativity, 12) << "\n";
    out << "dmd_link_threshold " << format_sig(rep.dmd_link_threshold, 12) << "\n";
    out << "dmd_state_threshold n=" << rep.n_clients << " "
        << format_sig(rep.dmd_state_threshold, 12) << "\n";
}

}  // namespace qtrans
