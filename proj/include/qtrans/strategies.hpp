#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "qtrans/channel.hpp"
#include "qtrans/detector.hpp"
#include "qtrans/transducer.hpp"

namespace qtrans {

// The four distribution schemes. DMD converts the multipartite ebits
// themselves; the TMD variants distribute EPR pairs and teleport.
enum class StrategyKind { dmd, vanilla_tmd, ie_tmd, ies_tmd };

inline constexpr std::array<StrategyKind, 4> all_strategies{
    StrategyKind::dmd, StrategyKind::vanilla_tmd, StrategyKind::ie_tmd, StrategyKind::ies_tmd};

inline const char* to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::dmd: return "dmd";
        case StrategyKind::vanilla_tmd: return "vanilla-tmd";
        case StrategyKind::ie_tmd: return "ie-tmd";
        case StrategyKind::ies_tmd: return "ies-tmd";
    }
    return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view s) {
    for (StrategyKind k : all_strategies)
        if (s == to_string(k)) return k;
    return std::nullopt;
}

// One orchestrator-client pair: transducer operating points at both ends
// plus the fiber between them.
struct LinkConfig {
    ReducedParams orchestrator;  // up-conversion / intrinsic-generation side
    ReducedParams client;        // down-conversion side
    FiberLink link;

    friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

inline void validate(const LinkConfig& cfg) {
    validate(cfg.orchestrator);
    validate(cfg.client);
    validate(cfg.link);
}

// Identical hardware at both ends; the common assumption in the surveys.
inline LinkConfig symmetric_link(double cooperativity, double zeta_o, double zeta_m, FiberLink link) {
    const ReducedParams r{cooperativity, zeta_o, zeta_m};
    return LinkConfig{r, r, link};
}

// p = eta_up * eta_down * exp(-l/L): up-conversion, fiber survival and
// down-conversion as independent events. Shared by DMD and vanilla TMD.
inline double ebit_prob_vanilla(const LinkConfig& cfg) {
    validate(cfg);
    return efficiency(cfg.orchestrator) * efficiency(cfg.client) * survival(cfg.link);
}

// p = S(eta_gen) * eta_down * exp(-l/L). The generation side is evaluated at
// min{C, C_epr}: pushing the cooperativity past the intrinsic-EPR point only
// unbalances the generated pair, so an operator would detune the pump
// instead. The client still wants maximal conversion efficiency.
inline double ebit_prob_ie(const LinkConfig& cfg) {
    validate(cfg);
    ReducedParams gen = cfg.orchestrator;
    gen.cooperativity = std::min(gen.cooperativity, intrinsic_epr_cooperativity());
    return binary_entropy(efficiency(gen)) * efficiency(cfg.client) * survival(cfg.link);
}

// p = S(eta) * 2(eta - eta^2) * exp(-l/(2L)): distillable fraction of the
// source pairs, single-generation herald probability, and photon survival
// to the mid-point detectors. Both transducers share eta.
inline double ebit_prob_ies(double eta, const FiberLink& link) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("ebit_prob_ies: efficiency outside [0,1]");
    return binary_entropy(eta) * 2.0 * (eta - eta * eta) * survival(link, 0.5);
}

inline double ebit_prob(StrategyKind kind, const LinkConfig& cfg) {
    switch (kind) {
        case StrategyKind::dmd:
        case StrategyKind::vanilla_tmd:
            return ebit_prob_vanilla(cfg);
        case StrategyKind::ie_tmd:
            return ebit_prob_ie(cfg);
        case StrategyKind::ies_tmd:
            return ebit_prob_ies(efficiency(cfg.orchestrator), cfg.link);
    }
    throw std::invalid_argument("ebit_prob: unknown strategy");
}

// All n ebits of a persistency-1 state must survive one simultaneous
// attempt.
inline double dmd_state_success_prob(double p_link, int n_clients) {
    if (!(p_link >= 0.0 && p_link <= 1.0))
        throw std::domain_error("dmd_state_success_prob: probability outside [0,1]");
    if (n_clients < 1) throw std::domain_error("dmd_state_success_prob: need n >= 1");
    return std::pow(p_link, n_clients);
}

// DMD must deliver the state unaltered: one-way capacity max{0, 2p-1}.
// TMD pairs can be regenerated on loss: two-way capacity p.
inline double capacity_bound(StrategyKind kind, const LinkConfig& cfg) {
    const ErasureChannel ch{ebit_prob(kind, cfg)};
    return kind == StrategyKind::dmd ? one_way_capacity(ch) : two_way_capacity(ch);
}

// Cooperativity below which a symmetric zero-length DMD link has zero
// one-way capacity: the lower root of eta(C)^2 = 1/2,
// C = 2 sqrt(2) - 2 sqrt(2 - sqrt(2)) - 1.
inline double dmd_cooperativity_threshold() {
    return 2.0 * std::sqrt(2.0) - 2.0 * std::sqrt(2.0 - std::sqrt(2.0)) - 1.0;
}

// Probability that exactly one of the two transducers emits an optical
// photon: 2(eta - eta^2). A photon counter heralds on this and discards
// double generations.
inline double ies_counter_click_prob(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("ies_counter_click_prob: efficiency outside [0,1]");
    return 2.0 * (eta - eta * eta);
}

// How a sub-unit detector efficiency folds into the SPD click probability.
// per_photon treats every arriving photon as independently seen with
// probability eta_d; scaled_click just scales the ideal 2 eta - eta^2.
enum class SpdCombination { per_photon, scaled_click };

inline double ies_spd_click_prob(double eta, const DetectorModel& detector,
                                 SpdCombination combination = SpdCombination::per_photon) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("ies_spd_click_prob: efficiency outside [0,1]");
    validate(detector);
    const double ed = detector.efficiency;
    if (combination == SpdCombination::scaled_click) return ed * (2.0 * eta - eta * eta);
    return 2.0 * eta * (1.0 - eta) * ed + eta * eta * (1.0 - (1.0 - ed) * (1.0 - ed));
}

// Fraction of SPD clicks that herald genuine entanglement:
// 2(eta - eta^2) / (2 eta - eta^2) = 2(1-eta)/(2-eta). Undefined at eta = 0
// (no clicks at all).
inline double ies_herald_fidelity_fraction(double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::domain_error("ies_herald_fidelity_fraction: needs eta in (0,1]");
    return 2.0 * (1.0 - eta) / (2.0 - eta);
}

}  // namespace qtrans
