#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "qtrans/qubits.hpp"
#include "qtrans/rng.hpp"

using namespace qtrans;

namespace {

PureState random_state(SplitMix64& rng, int n) {
    PureState s(n);
    for (std::size_t i = 0; i < s.dim(); ++i)
        s.amp(i) = {rng.next_double() - 0.5, rng.next_double() - 0.5};
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("GHZ construction", "[qubits]") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    const auto plus = make_ghz(1);
    CHECK_THAT(plus.amp(0).real(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-15));
    CHECK_THAT(plus.amp(1).real(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-15));

    const auto bell = make_ghz(2);
    CHECK(bell == bell_phi_plus());
    CHECK_THAT(entanglement_entropy(bell, 0b01), Catch::Matchers::WithinAbs(1.0, 1e-12));

    const auto ghz3 = make_ghz(3);
    CHECK_THAT(ghz3.amp(0).real(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-15));
    CHECK_THAT(ghz3.amp(7).real(), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-15));
    for (std::size_t i = 1; i < 7; ++i) CHECK(ghz3.amp(i) == std::complex<double>(0.0, 0.0));

    CHECK_THROWS_AS(make_ghz(0), std::length_error);
    CHECK_THROWS_AS(make_ghz(13), std::length_error);
}

TEST_CASE("basic gates", "[qubits]") {
    PureState s(1);
    s.apply_h(0);
    s.apply_h(0);
    CHECK_THAT(s.amp(0).real(), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK(std::abs(s.amp(1)) < 1e-15);

    // H then CNOT builds the Bell pair
    PureState b(2);
    b.apply_h(0);
    b.apply_cnot(0, 1);
    CHECK_THAT(fidelity(b, bell_phi_plus()), Catch::Matchers::WithinAbs(1.0, 1e-14));

    SplitMix64 rng(0x31c0u);
    auto r = random_state(rng, 4);
    r.apply_x(2);
    r.apply_z(1);
    r.apply_cnot(3, 0);
    CHECK(std::abs(r.norm() - 1.0) < 1e-12);
}

TEST_CASE("projective measurement removes the qubit", "[qubits]") {
    SECTION("spectator qubit is untouched") {
        // |+> (x) |0>: measuring qubit 1 always gives 0
        PureState s = tensor(make_ghz(1), PureState(1));
        SplitMix64 rng(0x4d2u);
        for (int i = 0; i < 20; ++i) {
            auto [outcome, rest] = measure_out_qubit(s, 1, rng);
            CHECK(outcome == 0);
            CHECK_THAT(fidelity(rest, make_ghz(1)), Catch::Matchers::WithinAbs(1.0, 1e-14));
        }
    }
    SECTION("GHZ collapses to the matching product state") {
        SplitMix64 rng(0x9e1u);
        int ones = 0;
        const int n = 4000;
        for (int i = 0; i < n; ++i) {
            auto [outcome, rest] = measure_out_qubit(make_ghz(3), 0, rng);
            ones += outcome;
            const std::size_t expect = outcome ? 3 : 0;  // |11> or |00>
            CHECK_THAT(std::abs(rest.amp(expect)), Catch::Matchers::WithinAbs(1.0, 1e-12));
            // measuring one qubit of a GHZ leaves no entanglement behind
            CHECK(entanglement_entropy(rest, 0b01) < 1e-10);
        }
        // Born rule: half and half within 4 sigma
        const double sigma = std::sqrt(0.25 / n);
        CHECK(std::abs(static_cast<double>(ones) / n - 0.5) < 4.0 * sigma);
    }
    SECTION("impossible outcomes are rejected") {
        CHECK_THROWS_AS(project_out_qubit(PureState(2), 0, 1), std::domain_error);
    }
}

TEST_CASE("entanglement entropy of simple splits", "[qubits]") {
    CHECK(entanglement_entropy(PureState(3), 0b001) < 1e-12);           // product state
    CHECK_THAT(entanglement_entropy(make_ghz(4), 0b0011),
               Catch::Matchers::WithinAbs(1.0, 1e-10));                 // GHZ: 1 bit across any cut
    SplitMix64 rng(0xabcdu);
    const auto s = random_state(rng, 3);
    CHECK(entanglement_entropy(s, 0b111) == 0.0);  // trivial cut
}

TEST_CASE("teleportation identities", "[qubits]") {
    SECTION("single qubit, sampled outcomes") {
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            const auto out = teleport(make_ghz(1), 1, seed);
            CHECK_THAT(fidelity(out, make_ghz(1)), Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }
    SECTION("GHZ(3) lands intact at the clients") {
        const auto out = teleport(make_ghz(3), 3, 42);
        CHECK_THAT(fidelity(out, make_ghz(3)), Catch::Matchers::WithinAbs(1.0, 1e-12));
        for (int q = 0; q < 3; ++q) CHECK(out.labels()[static_cast<std::size_t>(q)].owner == q + 1);
    }
    SECTION("resource count must match") {
        CHECK_THROWS_AS(teleport(make_ghz(3), 2, 0), resource_mismatch_error);
    }
}

TEST_CASE("teleportation works for every BSM outcome pattern", "[qubits][property]") {
    SplitMix64 rng(0x600du);
    for (int n = 1; n <= 4; ++n) {
        const auto psi = random_state(rng, n);
        const int patterns = 1 << (2 * n);
        for (int pat = 0; pat < patterns; ++pat) {
            std::vector<int> outcomes(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) outcomes[static_cast<std::size_t>(i)] = (pat >> (2 * i)) & 3;
            const auto out = teleport_with_outcomes(psi, outcomes);
            REQUIRE_THAT(fidelity(out, psi), Catch::Matchers::WithinAbs(1.0, 1e-10));
        }
    }
}

TEST_CASE("tensor layout", "[qubits]") {
    // |1> (x) |0> : qubit 0 carries the one
    PureState one(1);
    one.apply_x(0);
    const auto s = tensor(one, PureState(1));
    CHECK(s.amp(0b01) == std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(tensor(make_ghz(8), make_ghz(8)), std::length_error);
}
