#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qtrans/herald.hpp"
#include "qtrans/rng.hpp"
#include "qtrans/strategies.hpp"

using namespace qtrans;

namespace {

LinkConfig random_link(SplitMix64& rng) {
    const double c_up = std::exp(rng.next_double() * 20.0 - 14.0);    // ~1e-6..4e2
    const double c_down = std::exp(rng.next_double() * 20.0 - 14.0);
    LinkConfig cfg;
    cfg.orchestrator = {c_up, rng.next_double(), rng.next_double()};
    cfg.client = {c_down, rng.next_double(), rng.next_double()};
    cfg.link = {200.0 * rng.next_double(), 22.0};
    return cfg;
}

}  // namespace

TEST_CASE("vanilla ebit distribution probability", "[strategies]") {
    CHECK(ebit_prob_vanilla(symmetric_link(1.0, 1.0, 1.0, {0.0, 22.0})) == 1.0);
    CHECK_THAT(ebit_prob_vanilla(symmetric_link(1.0, 1.0, 1.0, {22.0, 22.0})),
               Catch::Matchers::WithinAbs(0.36787944117144233, 1e-15));

    // both efficiencies at 1/sqrt2: the p = 1/2 contour at zero length
    const double c = cooperativity_for_efficiency(1.0 / std::sqrt(2.0), 1.0, 1.0, Branch::lower);
    CHECK_THAT(ebit_prob_vanilla(symmetric_link(c, 1.0, 1.0, {0.0, 22.0})),
               Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("intrinsic-entanglement ebit distribution probability", "[strategies]") {
    const double c_th = intrinsic_epr_cooperativity();

    // generation side saturates at the EPR point, client at unit efficiency
    LinkConfig cfg = symmetric_link(c_th, 1.0, 1.0, {0.0, 22.0});
    cfg.client.cooperativity = 1.0;
    CHECK_THAT(ebit_prob_ie(cfg), Catch::Matchers::WithinAbs(1.0, 1e-12));

    // clamping: any C above the EPR point gives the same generation factor
    LinkConfig above = cfg;
    above.orchestrator.cooperativity = 5.0;
    CHECK(ebit_prob_ie(above) == ebit_prob_ie(cfg));

    CHECK(ebit_prob_ie(symmetric_link(0.0, 1.0, 1.0, {0.0, 22.0})) == 0.0);
    CHECK_THAT(ebit_prob_ie(symmetric_link(c_th, 1.0, 1.0, {0.0, 22.0})),
               Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("swap-based ebit distribution probability", "[strategies]") {
    CHECK(ebit_prob_ies(0.5, {0.0, 22.0}) == 0.5);
    CHECK(ebit_prob_ies(0.0, {0.0, 22.0}) == 0.0);
    CHECK(ebit_prob_ies(1.0, {0.0, 22.0}) == 0.0);
    // half-length attenuation: 0.5 * exp(-1/2)
    CHECK_THAT(ebit_prob_ies(0.5, {22.0, 22.0}),
               Catch::Matchers::WithinAbs(0.30326532985631671, 1e-15));
}

TEST_CASE("strategy dispatch", "[strategies]") {
    SplitMix64 rng(0xd15c0u);
    for (int i = 0; i < 200; ++i) {
        const LinkConfig cfg = random_link(rng);
        CHECK(ebit_prob(StrategyKind::dmd, cfg) == ebit_prob(StrategyKind::vanilla_tmd, cfg));
        // the swap strategy runs identical hardware at both ends, pinned to
        // the orchestrator operating point
        CHECK(ebit_prob(StrategyKind::ies_tmd, cfg) ==
              ebit_prob_ies(efficiency(cfg.orchestrator), cfg.link));
    }
    // any strategy dies with the fiber
    const LinkConfig far = symmetric_link(1.0, 1.0, 1.0, {1e6, 22.0});
    for (StrategyKind k : all_strategies) CHECK(ebit_prob(k, far) == 0.0);
}

TEST_CASE("probabilities stay inside [0,1] across the parameter space",
          "[strategies][property]") {
    SplitMix64 rng(0x90b1u);
    for (int i = 0; i < 10000; ++i) {
        const LinkConfig cfg = random_link(rng);
        for (StrategyKind k : all_strategies) {
            const double p = ebit_prob(k, cfg);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("every strategy decays strictly with link length", "[strategies][property]") {
    SplitMix64 rng(0x10adu);
    for (int i = 0; i < 300; ++i) {
        // keep efficiencies strictly inside (0,1) so the prefactor is nonzero
        const double c = std::exp(rng.next_double() * 6.0 - 5.0);
        const LinkConfig near = symmetric_link(c, 1.0, 1.0, {10.0 * rng.next_double(), 22.0});
        LinkConfig fari = near;
        fari.link.length_km = near.link.length_km + 1.0 + 10.0 * rng.next_double();
        for (StrategyKind k : all_strategies) {
            const double p_near = ebit_prob(k, near);
            const double p_far = ebit_prob(k, fari);
            if (p_near > 0.0) CHECK(p_far < p_near);
        }
    }
}

TEST_CASE("intrinsic generation beats the double conversion at low cooperativity",
          "[strategies][property]") {
    SplitMix64 rng(0x1e5u);
    for (int i = 0; i < 500; ++i) {
        const double c = intrinsic_epr_cooperativity() * rng.next_double();
        const LinkConfig cfg = symmetric_link(c, 1.0, 1.0, {0.0, 22.0});
        CHECK(ebit_prob_ie(cfg) >= ebit_prob_vanilla(cfg));
    }
}

TEST_CASE("swap probability never exceeds one half", "[strategies][property]") {
    SplitMix64 rng(0x3e8u);
    for (int i = 0; i < 1000; ++i) {
        const double eta = rng.next_double();
        const FiberLink link{100.0 * rng.next_double(), 22.0};
        CHECK(ebit_prob_ies(eta, link) <= 0.5);
    }
}

TEST_CASE("state-level probability for direct distribution", "[strategies]") {
    CHECK(dmd_state_success_prob(0.5, 3) == 0.125);
    CHECK(dmd_state_success_prob(0.7, 1) == 0.7);
    CHECK(dmd_state_success_prob(1.0, 9) == 1.0);
    CHECK_THROWS_AS(dmd_state_success_prob(0.5, 0), std::domain_error);
}

TEST_CASE("capacity bounds", "[strategies]") {
    // exactly at the one-way threshold: p = 1/2 up to rounding
    const double c_star = dmd_cooperativity_threshold();
    const LinkConfig at = symmetric_link(c_star, 1.0, 1.0, {0.0, 22.0});
    CHECK(capacity_bound(StrategyKind::dmd, at) <= 1e-12);
    LinkConfig above = symmetric_link(c_star + 1e-6, 1.0, 1.0, {0.0, 22.0});
    CHECK(capacity_bound(StrategyKind::dmd, above) > 1e-9);

    // two-way capacity equals the probability itself
    const LinkConfig weak = symmetric_link(1.0, 1.0, 1.0, {22.0 * std::log(100.0), 22.0});
    CHECK_THAT(capacity_bound(StrategyKind::vanilla_tmd, weak),
               Catch::Matchers::WithinAbs(0.01, 1e-12));

    SplitMix64 rng(0xcab1u);
    for (int i = 0; i < 500; ++i) {
        const LinkConfig cfg = random_link(rng);
        const double p = ebit_prob_vanilla(cfg);
        CHECK(capacity_bound(StrategyKind::vanilla_tmd, cfg) == p);
        const double one_way = capacity_bound(StrategyKind::dmd, cfg);
        if (p > 0.5)
            CHECK(one_way > 0.0);
        else
            CHECK(one_way == 0.0);
    }
}

TEST_CASE("counter click probability", "[strategies]") {
    CHECK(ies_counter_click_prob(0.5) == 0.5);
    CHECK(ies_counter_click_prob(0.0) == 0.0);
    CHECK(ies_counter_click_prob(1.0) == 0.0);
    CHECK_THAT(ies_counter_click_prob(0.25), Catch::Matchers::WithinAbs(0.375, 1e-15));
}

TEST_CASE("counter clicks cross-checked against the swap enumeration",
          "[strategies][property]") {
    SplitMix64 rng(0xfadeu);
    for (int i = 0; i < 50; ++i) {
        const double eta = rng.next_double();
        const auto dist = ies_swap_enumerate(eta, eta);
        CHECK(std::abs(ies_counter_click_prob(eta) - dist.p_single_click) < 1e-12);
    }
}

TEST_CASE("single-photon-detector click probability", "[strategies]") {
    const DetectorModel ideal{DetectorKind::single_photon_detector, 1.0};
    CHECK(ies_spd_click_prob(0.5, ideal) == 0.75);
    CHECK(ies_spd_click_prob(1.0, ideal) == 1.0);
    CHECK(ies_spd_click_prob(0.5, {DetectorKind::single_photon_detector, 0.0}) == 0.0);
    CHECK_THAT(ies_spd_click_prob(0.5, {DetectorKind::single_photon_detector, 0.25}),
               Catch::Matchers::WithinAbs(0.234375, 1e-15));

    // the alternative scaled model stays available behind the flag
    CHECK(ies_spd_click_prob(0.5, {DetectorKind::single_photon_detector, 0.25},
                             SpdCombination::scaled_click) == 0.25 * 0.75);

    SplitMix64 rng(0x5bdu);
    for (int i = 0; i < 50; ++i) {
        const double eta = rng.next_double();
        const double ed = rng.next_double();
        const DetectorModel det{DetectorKind::single_photon_detector, ed};
        const auto dist = ies_swap_enumerate(eta, eta, det);
        CHECK(std::abs(ies_spd_click_prob(eta, det) - dist.p_reported_herald) < 1e-12);
        // decomposition: ideal SPD = counter + double-generation share
        CHECK(std::abs(ies_spd_click_prob(eta, ideal) -
                       (ies_counter_click_prob(eta) + eta * eta)) < 1e-15);
    }
}

TEST_CASE("genuine-herald fraction", "[strategies]") {
    CHECK_THAT(ies_herald_fidelity_fraction(0.5), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
    CHECK(ies_herald_fidelity_fraction(1.0) == 0.0);
    CHECK_THAT(ies_herald_fidelity_fraction(1e-12), Catch::Matchers::WithinAbs(1.0, 1e-11));
    CHECK_THROWS_AS(ies_herald_fidelity_fraction(0.0), std::domain_error);

    const DetectorModel ideal{DetectorKind::single_photon_detector, 1.0};
    SplitMix64 rng(0x222u);
    for (int i = 0; i < 100; ++i) {
        const double eta = 0.01 + 0.98 * rng.next_double();
        const double via_clicks = ies_counter_click_prob(eta) / ies_spd_click_prob(eta, ideal);
        CHECK(std::abs(ies_herald_fidelity_fraction(eta) - via_clicks) < 1e-12);
    }
}

TEST_CASE("strategy names round-trip", "[strategies]") {
    for (StrategyKind k : all_strategies) CHECK(parse_strategy(to_string(k)) == k);
    CHECK_FALSE(parse_strategy("bogus").has_value());
}
