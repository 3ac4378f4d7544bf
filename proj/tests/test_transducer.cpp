#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qtrans/rng.hpp"
#include "qtrans/transducer.hpp"

using namespace qtrans;

namespace {

// random hardware with extraction ratios in (0,1] and a wide pump range
PhysicalParams random_params(SplitMix64& rng) {
    PhysicalParams p;
    p.total_loss_optical = std::exp(rng.next_double() * 14.0);  // ~1..1e6
    p.total_loss_microwave = std::exp(rng.next_double() * 14.0);
    p.coupling_rate_optical_ext = p.total_loss_optical * (0.05 + 0.95 * rng.next_double());
    p.coupling_rate_microwave_ext = p.total_loss_microwave * (0.05 + 0.95 * rng.next_double());
    p.electro_optic_coupling = std::exp(rng.next_double() * 6.0 - 3.0);
    // cooperativity anywhere in ~1e-6..1e4
    const double c = std::exp(rng.next_double() * 23.0 - 14.0);
    p.mean_pump_photons = c * p.total_loss_optical * p.total_loss_microwave /
                          (4.0 * p.electro_optic_coupling * p.electro_optic_coupling);
    return p;
}

PhysicalParams unit_extraction_params(double cooperativity) {
    // gamma_o = gamma_m = 1, g = 1/2, <n> g^2 = C/4
    return PhysicalParams{1.0, 1.0, 1.0, 1.0, 0.5, cooperativity};
}

}  // namespace

TEST_CASE("efficiency from hardware rates", "[transducer]") {
    // unit losses, ideal extraction, <n> g^2 = 1/4 is the conversion peak
    CHECK(efficiency_physical(PhysicalParams{1, 1, 1, 1, 0.5, 1.0}) == 1.0);

    // no pump, no conversion
    CHECK(efficiency_physical(PhysicalParams{1, 1, 1, 1, 0.5, 0.0}) == 0.0);

    // zeta_o = zeta_m = 0.9 at C = 1: direct evaluation of the reduced form
    // gives 4 * 0.9 * 0.9 * 1 / 4 = 0.81
    const PhysicalParams lossy{0.9, 0.9, 1, 1, 0.5, 1.0};
    CHECK_THAT(efficiency_physical(lossy), Catch::Matchers::WithinAbs(0.81, 1e-15));

    CHECK_THROWS_AS(efficiency_physical(PhysicalParams{1, 1, 1, 1, -0.5, 1}), std::domain_error);
    CHECK_THROWS_AS(efficiency_physical(PhysicalParams{1.5, 1, 1, 1, 0.5, 1}), std::domain_error);
    CHECK_THROWS_AS(efficiency_physical(PhysicalParams{1, 1, 1, 1, 0.5, -1}), std::domain_error);
}

TEST_CASE("reduction to cooperativity and extraction ratios", "[transducer]") {
    const ReducedParams peak = reduce(PhysicalParams{1, 1, 1, 1, 0.5, 1.0});
    CHECK(peak.cooperativity == 1.0);
    CHECK(peak.extraction_optical == 1.0);
    CHECK(peak.extraction_microwave == 1.0);

    const double c_th = 3.0 - 2.0 * std::sqrt(2.0);
    const ReducedParams r = reduce(unit_extraction_params(c_th));
    CHECK_THAT(r.cooperativity, Catch::Matchers::WithinAbs(0.1715728752538097, 1e-15));

    CHECK_THROWS_AS(reduce(PhysicalParams{1, 1, 0, 1, 0.5, 1}), std::domain_error);
}

TEST_CASE("reduced-form efficiency", "[transducer]") {
    CHECK(efficiency(ReducedParams{1.0, 1.0, 1.0}) == 1.0);
    CHECK(efficiency(ReducedParams{0.0, 1.0, 1.0}) == 0.0);
    CHECK_THAT(efficiency(ReducedParams{intrinsic_epr_cooperativity(), 1.0, 1.0}),
               Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THROWS_AS(efficiency(ReducedParams{-0.1, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(efficiency(ReducedParams{1.0, 1.2, 1.0}), std::domain_error);
}

TEST_CASE("hardware and reduced forms agree", "[transducer][property]") {
    SplitMix64 rng(0x7a512u);
    for (int i = 0; i < 1000; ++i) {
        const PhysicalParams p = random_params(rng);
        const double direct = efficiency_physical(p);
        const double reduced = efficiency(reduce(p));
        const double scale = std::max({direct, reduced, 1e-300});
        CHECK(std::abs(direct - reduced) / scale < 1e-12);
    }
}

TEST_CASE("efficiency only depends on the operating point", "[transducer][property]") {
    SplitMix64 rng(0x9c1eu);
    for (int i = 0; i < 200; ++i) {
        PhysicalParams p = random_params(rng);
        const double eta = efficiency_physical(p);
        const double k = std::exp(rng.next_double() * 8.0 - 4.0);
        PhysicalParams scaled = p;
        scaled.total_loss_optical *= k;
        scaled.total_loss_microwave *= k;
        scaled.coupling_rate_optical_ext *= k;
        scaled.coupling_rate_microwave_ext *= k;
        scaled.mean_pump_photons *= k * k;  // scales <n> g^2 by k^2
        const double scale = std::max(eta, 1e-300);
        CHECK(std::abs(efficiency_physical(scaled) - eta) / scale < 1e-12);
    }
}

TEST_CASE("efficiency rises to the C = 1 peak and falls past it", "[transducer]") {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double c = static_cast<double>(i) / 200.0;
        const double eta = efficiency(ReducedParams{c, 1.0, 1.0});
        CHECK(eta > prev);
        prev = eta;
    }
    CHECK(prev == 1.0);
    for (int i = 1; i <= 200; ++i) {
        const double c = 1.0 + static_cast<double>(i) * 0.25;
        const double eta = efficiency(ReducedParams{c, 1.0, 1.0});
        CHECK(eta < prev);
        prev = eta;
    }
}

TEST_CASE("cooperativity solved back from a target efficiency", "[transducer]") {
    const double c_th = cooperativity_for_efficiency(0.5, 1.0, 1.0, Branch::lower);
    CHECK_THAT(c_th, Catch::Matchers::WithinAbs(3.0 - 2.0 * std::sqrt(2.0), 1e-14));

    CHECK_THAT(cooperativity_for_efficiency(1.0, 1.0, 1.0, Branch::lower),
               Catch::Matchers::WithinAbs(1.0, 1e-14));
    CHECK_THAT(cooperativity_for_efficiency(1.0, 1.0, 1.0, Branch::upper),
               Catch::Matchers::WithinAbs(1.0, 1e-14));

    // eta^2 = 1/2 point: 2 sqrt(2) - 2 sqrt(2 - sqrt(2)) - 1
    const double c_half_sq = cooperativity_for_efficiency(1.0 / std::sqrt(2.0), 1.0, 1.0, Branch::lower);
    CHECK_THAT(c_half_sq, Catch::Matchers::WithinAbs(0.2976933952858310, 1e-14));

    CHECK_THROWS_AS(cooperativity_for_efficiency(0.9, 0.9, 0.9, Branch::lower), no_solution_error);
    CHECK_THROWS_AS(cooperativity_for_efficiency(0.0, 1.0, 1.0, Branch::lower), std::domain_error);
}

TEST_CASE("cooperativity_for_efficiency inverts efficiency on each branch", "[transducer][property]") {
    SplitMix64 rng(0x11d7u);
    for (int i = 0; i < 1000; ++i) {
        const double zo = 0.1 + 0.9 * rng.next_double();
        const double zm = 0.1 + 0.9 * rng.next_double();
        const double target = zo * zm * (1e-6 + (1.0 - 1e-6) * rng.next_double());

        const double lower = cooperativity_for_efficiency(target, zo, zm, Branch::lower);
        const double upper = cooperativity_for_efficiency(target, zo, zm, Branch::upper);
        CHECK(lower <= 1.0);
        CHECK(upper >= 1.0);
        CHECK(std::abs(efficiency(ReducedParams{lower, zo, zm}) - target) <= 1e-10 * target);
        CHECK(std::abs(efficiency(ReducedParams{upper, zo, zm}) - target) <= 1e-10 * target);

        // and the other way around
        const double c = std::exp(rng.next_double() * 10.0 - 5.0);
        const double eta = efficiency(ReducedParams{c, zo, zm});
        if (eta > 0.0) {
            const double back =
                cooperativity_for_efficiency(eta, zo, zm, c <= 1.0 ? Branch::lower : Branch::upper);
            CHECK(std::abs(back - c) <= 1e-10 * c);
        }
    }
}

TEST_CASE("binary entropy", "[transducer]") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK_THAT(binary_entropy(0.25), Catch::Matchers::WithinAbs(0.8112781244591329, 1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("scattering matrix", "[transducer]") {
    SECTION("C = 1: full conversion, empty diagonal") {
        const ScatteringMatrix m = scattering_matrix(unit_extraction_params(1.0));
        CHECK(std::abs(m(0, 0)) < 1e-15);
        CHECK(std::abs(m(1, 1)) < 1e-15);
        CHECK_THAT(std::abs(m(0, 1)), Catch::Matchers::WithinAbs(1.0, 1e-15));
        CHECK_THAT(std::abs(m(1, 0)), Catch::Matchers::WithinAbs(1.0, 1e-15));
    }

    SECTION("intrinsic-EPR point: balanced beam splitter (1/sqrt2)[[1,i],[i,1]]") {
        const ScatteringMatrix m = scattering_matrix(unit_extraction_params(intrinsic_epr_cooperativity()));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK_THAT(m(0, 0).real(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
        CHECK_THAT(m(0, 0).imag(), Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(m(0, 1).imag(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
        CHECK_THAT(m(0, 1).real(), Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK(m(1, 0) == m(0, 1));
        CHECK(m(1, 1) == m(0, 0));
    }

    SECTION("no pump: identity") {
        const ScatteringMatrix m = scattering_matrix(PhysicalParams{1, 1, 1, 1, 0.5, 0.0});
        CHECK(m(0, 0) == std::complex<double>(1.0, 0.0));
        CHECK(m(0, 1) == std::complex<double>(0.0, 0.0));
    }

    SECTION("rejects internal cavity losses") {
        CHECK_THROWS_AS(scattering_matrix(PhysicalParams{0.9, 1, 1, 1, 0.5, 1.0}),
                        unsupported_regime_error);
    }
}

TEST_CASE("scattering matrix is unitary with |off-diagonal|^2 = efficiency",
          "[transducer][property]") {
    SplitMix64 rng(0x5eadu);
    for (int i = 0; i < 300; ++i) {
        const double c = std::exp(rng.next_double() * 18.0 - 12.0);
        const double go = std::exp(rng.next_double() * 10.0);
        const double gm = std::exp(rng.next_double() * 10.0);
        const double g = std::exp(rng.next_double() * 4.0 - 2.0);
        const PhysicalParams p{go, gm, go, gm, g, c * go * gm / (4.0 * g * g)};
        const ScatteringMatrix m = scattering_matrix(p);

        // columns orthonormal
        const double col0 = std::norm(m(0, 0)) + std::norm(m(1, 0));
        const double col1 = std::norm(m(0, 1)) + std::norm(m(1, 1));
        const std::complex<double> cross =
            std::conj(m(0, 0)) * m(0, 1) + std::conj(m(1, 0)) * m(1, 1);
        CHECK(std::abs(col0 - 1.0) < 1e-12);
        CHECK(std::abs(col1 - 1.0) < 1e-12);
        CHECK(std::abs(cross) < 1e-12);

        CHECK(std::abs(std::norm(m(0, 1)) - efficiency_physical(p)) < 1e-12);
        CHECK(std::abs(std::norm(m(1, 0)) - efficiency_physical(p)) < 1e-12);
    }
}

TEST_CASE("distillable entanglement equals the binary entropy", "[transducer]") {
    CHECK_THAT(distillable_entanglement(0.5), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(distillable_entanglement(1.0), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(distillable_entanglement(0.3),
               Catch::Matchers::WithinAbs(0.8812908992306926, 1e-12));
    for (int i = 0; i <= 100; ++i) {
        const double eta = static_cast<double>(i) / 100.0;
        CHECK(std::abs(distillable_entanglement(eta) - binary_entropy(eta)) < 1e-12);
    }
}
