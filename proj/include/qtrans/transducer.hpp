#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qtrans/detail/eig.hpp"
#include "qtrans/errors.hpp"

namespace qtrans {

// Hardware parameters of one electro-optical transducer. All rates share a
// single unit (Hz by convention); every derived quantity depends on ratios
// only, so any consistent unit works.
struct PhysicalParams {
    double coupling_rate_optical_ext = 0.0;    // gamma_{o,e}, external coupling of the optical mode
    double coupling_rate_microwave_ext = 0.0;  // gamma_{m,e}
    double total_loss_optical = 0.0;           // gamma_o, external + internal
    double total_loss_microwave = 0.0;         // gamma_m
    double electro_optic_coupling = 0.0;       // g
    double mean_pump_photons = 0.0;            // <n>

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

inline void validate(const PhysicalParams& p) {
    if (!(p.total_loss_optical > 0.0) || !(p.total_loss_microwave > 0.0))
        throw std::domain_error("transducer: total loss rates must be positive");
    if (!(p.coupling_rate_optical_ext > 0.0) || p.coupling_rate_optical_ext > p.total_loss_optical)
        throw std::domain_error("transducer: need 0 < gamma_oe <= gamma_o");
    if (!(p.coupling_rate_microwave_ext > 0.0) || p.coupling_rate_microwave_ext > p.total_loss_microwave)
        throw std::domain_error("transducer: need 0 < gamma_me <= gamma_m");
    if (!(p.electro_optic_coupling >= 0.0))
        throw std::domain_error("transducer: electro-optic coupling must be >= 0");
    if (!(p.mean_pump_photons >= 0.0))
        throw std::domain_error("transducer: mean pump photon number must be >= 0");
}

// Dimensionless operating point: everything the conversion efficiency
// actually depends on.
struct ReducedParams {
    double cooperativity = 0.0;        // C
    double extraction_optical = 1.0;   // zeta_o = gamma_oe / gamma_o
    double extraction_microwave = 1.0; // zeta_m

    friend bool operator==(const ReducedParams&, const ReducedParams&) = default;
};

inline void validate(const ReducedParams& r) {
    if (!(r.cooperativity >= 0.0))
        throw std::domain_error("transducer: cooperativity must be >= 0");
    if (!(r.extraction_optical >= 0.0 && r.extraction_optical <= 1.0) ||
        !(r.extraction_microwave >= 0.0 && r.extraction_microwave <= 1.0))
        throw std::domain_error("transducer: extraction ratios must lie in [0,1]");
}

// Conversion efficiency straight from hardware rates:
//   eta = gamma_oe gamma_me <n> g^2 / (gamma_o gamma_m / 4 + <n> g^2)^2
inline double efficiency_physical(const PhysicalParams& p) {
    validate(p);
    const double pump = p.mean_pump_photons * p.electro_optic_coupling * p.electro_optic_coupling;
    const double d = 0.25 * p.total_loss_optical * p.total_loss_microwave + pump;
    const double eta = p.coupling_rate_optical_ext * p.coupling_rate_microwave_ext * pump / (d * d);
    return std::clamp(eta, 0.0, 1.0);
}

inline ReducedParams reduce(const PhysicalParams& p) {
    validate(p);
    const double pump = p.mean_pump_photons * p.electro_optic_coupling * p.electro_optic_coupling;
    return ReducedParams{
        4.0 * pump / (p.total_loss_optical * p.total_loss_microwave),
        p.coupling_rate_optical_ext / p.total_loss_optical,
        p.coupling_rate_microwave_ext / p.total_loss_microwave,
    };
}

// eta = 4 zeta_o zeta_m C / (1 + C)^2. Symmetric for up- and
// down-conversion; peaks at zeta_o zeta_m when C = 1.
inline double efficiency(const ReducedParams& r) {
    validate(r);
    const double c = r.cooperativity;
    const double one_plus = 1.0 + c;
    const double eta = 4.0 * r.extraction_optical * r.extraction_microwave * c / (one_plus * one_plus);
    return std::clamp(eta, 0.0, 1.0);
}

enum class Branch { lower, upper };

// Inverse of efficiency() in C, solved exactly: target (1+C)^2 = 4 zo zm C.
// The two roots multiply to 1; `lower` is the one in (0, 1], `upper` its
// reciprocal in [1, inf).
inline double cooperativity_for_efficiency(double target, double zeta_o, double zeta_m, Branch branch) {
    if (!(zeta_o >= 0.0 && zeta_o <= 1.0) || !(zeta_m >= 0.0 && zeta_m <= 1.0))
        throw std::domain_error("transducer: extraction ratios must lie in [0,1]");
    if (!(target > 0.0))
        throw std::domain_error("transducer: target efficiency must be positive");
    const double peak = zeta_o * zeta_m;
    if (target > peak)
        throw no_solution_error("transducer: target efficiency exceeds the zeta_o*zeta_m peak");
    const double disc = 16.0 * peak * (peak - target);
    const double q = 0.5 * (4.0 * peak - 2.0 * target + std::sqrt(std::max(disc, 0.0)));
    return branch == Branch::lower ? target / q : q / target;
}

// Cooperativity at which eta reaches 1/2 on the lower branch with unit
// extraction ratios. Operated there, the transducer behaves as a balanced
// beam splitter and its spontaneous pair emission is maximally entangled.
inline double intrinsic_epr_cooperativity() {
    return 3.0 - 2.0 * std::sqrt(2.0);
}

// S(x) = -x log2 x - (1-x) log2(1-x), with S(0) = S(1) = 0.
inline double binary_entropy(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    if (eta == 0.0 || eta == 1.0) return 0.0;
    return -eta * std::log2(eta) - (1.0 - eta) * std::log2(1.0 - eta);
}

// 2x2 steady-state input-output matrix, rows/columns ordered
// (optical, microwave).
struct ScatteringMatrix {
    std::array<std::complex<double>, 4> entries{};  // row-major

    std::complex<double> operator()(int row, int col) const { return entries[row * 2 + col]; }
};

// L = 1/d [[gogm/4 - g^2<n>, i g sqrt(<n> go gm)], [i g sqrt(<n> go gm),
// gogm/4 - g^2<n>]] with d = gogm/4 + g^2<n>. Only derived for unit
// extraction ratios (no internal cavity loss); anything else is rejected.
inline ScatteringMatrix scattering_matrix(const PhysicalParams& p) {
    validate(p);
    const double zeta_o = p.coupling_rate_optical_ext / p.total_loss_optical;
    const double zeta_m = p.coupling_rate_microwave_ext / p.total_loss_microwave;
    if (std::abs(zeta_o - 1.0) > 1e-12 || std::abs(zeta_m - 1.0) > 1e-12)
        throw unsupported_regime_error("scattering_matrix: requires unit extraction ratios");

    const double u = 0.25 * p.total_loss_optical * p.total_loss_microwave;
    const double v = p.mean_pump_photons * p.electro_optic_coupling * p.electro_optic_coupling;
    const double d = u + v;
    const double diag = (u - v) / d;
    const double off = p.electro_optic_coupling *
                       std::sqrt(p.mean_pump_photons * p.total_loss_optical * p.total_loss_microwave) / d;
    ScatteringMatrix m;
    m.entries = {std::complex<double>(diag, 0.0), std::complex<double>(0.0, off),
                 std::complex<double>(0.0, off), std::complex<double>(diag, 0.0)};
    return m;
}

// Distillable entanglement of the post-conversion pure state: the Von
// Neumann entropy of its reduced density matrix diag(eta, 1-eta). Computed
// through an eigendecomposition so it cross-checks binary_entropy() by an
// independent route.
inline double distillable_entanglement(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("distillable_entanglement: efficiency outside [0,1]");
    const std::vector<std::complex<double>> rho{
        {eta, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0 - eta, 0.0}};
    return detail::entropy_bits(detail::hermitian_eigenvalues(rho, 2));
}

}  // namespace qtrans
