#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qtrans/detector.hpp"
#include "qtrans/fock.hpp"
#include "qtrans/rng.hpp"

namespace qtrans {

// Outcome classes of one mid-point swap attempt. A single click heralds
// path-entanglement between the two microwave cavities; a double generation
// leaves the product state |1,1> behind regardless of which detector fires.
enum class HeraldClass { no_click, single_click_herald, double_photon };

// Exact statistics of the swap for one orchestrator-client pair: two SPDC
// sources with success probabilities eta_o / eta_c, optical halves
// interfered on a balanced beam splitter, one detector behind each port.
// Probabilities are enumerated from the joint state, not sampled.
struct HeraldDistribution {
    double p_no_click = 0.0;
    double p_single_click = 0.0;   // exactly one optical photon generated
    double p_double_photon = 0.0;  // both sources fired

    // detector-rule probabilities for the configured DetectorModel:
    // a counter reports a herald on exactly one detected photon, an SPD on
    // at least one
    double p_reported_herald = 0.0;
    double p_false_herald = 0.0;  // reported heralds with no entanglement behind them

    // post-measurement microwave-microwave states, indexed by which port
    // clicked (they differ by a local phase only)
    std::array<FockTwoMode, 2> heralded_mm{
        FockTwoMode(2, ModeKind::microwave, ModeKind::microwave),
        FockTwoMode(2, ModeKind::microwave, ModeKind::microwave)};
    FockTwoMode double_mm{2, ModeKind::microwave, ModeKind::microwave};
};

inline HeraldDistribution ies_swap_enumerate(double eta_o, double eta_c,
                                             const DetectorModel& detector = {}) {
    if (!(eta_o >= 0.0 && eta_o <= 1.0) || !(eta_c >= 0.0 && eta_c <= 1.0))
        throw std::domain_error("ies_swap: source efficiencies outside [0,1]");
    validate(detector);

    // source amplitudes: sqrt(1-eta)|0_M 0_O> + sqrt(eta)|1_M 1_O>
    const std::array<double, 2> amp_o{std::sqrt(1.0 - eta_o), std::sqrt(eta_o)};
    const std::array<double, 2> amp_c{std::sqrt(1.0 - eta_c), std::sqrt(eta_c)};

    // each joint microwave configuration (x, y) fixes the optical input
    // |x, y>; push it through the balanced splitter once
    FockTwoMode mixed[2][2] = {
        {beam_splitter(FockTwoMode::basis(0, 0, 2, ModeKind::optical, ModeKind::optical), 0.5),
         beam_splitter(FockTwoMode::basis(0, 1, 2, ModeKind::optical, ModeKind::optical), 0.5)},
        {beam_splitter(FockTwoMode::basis(1, 0, 2, ModeKind::optical, ModeKind::optical), 0.5),
         beam_splitter(FockTwoMode::basis(1, 1, 2, ModeKind::optical, ModeKind::optical), 0.5)}};

    HeraldDistribution out;
    for (int d1 = 0; d1 <= 2; ++d1) {
        for (int d2 = 0; d2 + d1 <= 2; ++d2) {
            // unnormalized microwave-microwave amplitudes conditioned on the
            // detector pattern (d1, d2)
            FockTwoMode mm(2, ModeKind::microwave, ModeKind::microwave);
            for (int x = 0; x <= 1; ++x)
                for (int y = 0; y <= 1; ++y)
                    mm.add_amp(x, y, amp_o[x] * amp_c[y] * mixed[x][y].amp(d1, d2));
            const double p = mm.norm_sq();
            const int total = d1 + d2;
            if (total == 0) {
                out.p_no_click += p;
            } else if (total == 1) {
                out.p_single_click += p;
                if (p > 0.0) {
                    mm.normalize();
                    out.heralded_mm[d1 == 1 ? 0 : 1] = mm;
                }
            } else {
                out.p_double_photon += p;
            }
        }
    }
    out.double_mm.set_amp(1, 1, 1.0);

    const double ed = detector.efficiency;
    const double from_double = detector.kind == DetectorKind::photon_counter
                                   ? 2.0 * ed * (1.0 - ed)          // one of the two photons missed
                                   : 1.0 - (1.0 - ed) * (1.0 - ed); // any detection looks like a click
    out.p_false_herald = out.p_double_photon * from_double;
    out.p_reported_herald = out.p_single_click * ed + out.p_false_herald;
    return out;
}

struct HeraldOutcome {
    HeraldClass cls = HeraldClass::no_click;
    bool observed_click = false;  // what the configured detector reported
    bool false_herald = false;    // reported click without entanglement
    FockTwoMode mm_state{2, ModeKind::microwave, ModeKind::microwave};
    HeraldDistribution dist;
};

// Samples one swap attempt: true outcome class, per-photon detection, and
// the post-measurement microwave-microwave state for the sampled branch.
inline HeraldOutcome ies_swap_oracle(double eta_o, double eta_c, const DetectorModel& detector,
                                     std::uint64_t rng_seed) {
    HeraldOutcome out;
    out.dist = ies_swap_enumerate(eta_o, eta_c, detector);
    SplitMix64 rng(rng_seed);

    const double r = rng.next_double();
    int photons = 0;
    if (r < out.dist.p_no_click) {
        out.cls = HeraldClass::no_click;
        out.mm_state.set_amp(0, 0, 1.0);
    } else if (r < out.dist.p_no_click + out.dist.p_single_click) {
        out.cls = HeraldClass::single_click_herald;
        photons = 1;
        out.mm_state = out.dist.heralded_mm[rng.bernoulli(0.5) ? 1 : 0];
    } else {
        out.cls = HeraldClass::double_photon;
        photons = 2;
        out.mm_state = out.dist.double_mm;
    }

    int detected = 0;
    for (int i = 0; i < photons; ++i) detected += rng.bernoulli(detector.efficiency) ? 1 : 0;
    out.observed_click = detector.kind == DetectorKind::photon_counter ? detected == 1 : detected >= 1;
    out.false_herald = out.observed_click && out.cls != HeraldClass::single_click_herald;
    return out;
}

}  // namespace qtrans
