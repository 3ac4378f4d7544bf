#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qtrans {

// One orchestrator-client optical link.
struct FiberLink {
    double length_km = 0.0;
    double attenuation_length_km = 22.0;  // telecom C-band fiber at 0.2 dB/km

    friend bool operator==(const FiberLink&, const FiberLink&) = default;
};

inline void validate(const FiberLink& f) {
    if (!(f.length_km >= 0.0))
        throw std::domain_error("fiber: length must be >= 0");
    if (!(f.attenuation_length_km > 0.0))
        throw std::domain_error("fiber: attenuation length must be > 0");
}

// Probability that a photon survives propagation over fraction_of_length of
// the link: exp(-f l / L). Fraction 1/2 covers a mid-point detector setup.
inline double survival(const FiberLink& link, double fraction_of_length = 1.0) {
    validate(link);
    if (!(fraction_of_length > 0.0 && fraction_of_length <= 1.0))
        throw std::domain_error("fiber: fraction_of_length must lie in (0,1]");
    return std::exp(-fraction_of_length * link.length_km / link.attenuation_length_km);
}

// Quantum erasure channel: passes the input with probability p, otherwise
// replaces it with a flagged erasure state.
struct ErasureChannel {
    double success_prob = 1.0;

    friend bool operator==(const ErasureChannel&, const ErasureChannel&) = default;
};

inline void validate(const ErasureChannel& ch) {
    if (!(ch.success_prob >= 0.0 && ch.success_prob <= 1.0))
        throw std::domain_error("erasure channel: success probability outside [0,1]");
}

// Weighted two-branch mixture: the surviving state and the erasure flag.
// The simulator samples it as a Bernoulli; tests read it as the explicit
// output density operator.
template <class State>
struct MixedOutcome {
    struct Branch {
        double weight = 0.0;
        std::optional<State> state;  // empty = erasure flag

        bool erased() const { return !state.has_value(); }
    };

    std::vector<Branch> branches;

    double total_weight() const {
        double w = 0.0;
        for (const auto& b : branches) w += b.weight;
        return w;
    }
};

template <class State>
MixedOutcome<State> apply_erasure(const ErasureChannel& ch, State state) {
    validate(ch);
    MixedOutcome<State> out;
    out.branches.push_back({ch.success_prob, std::optional<State>(std::move(state))});
    out.branches.push_back({1.0 - ch.success_prob, std::nullopt});
    return out;
}

// Q = max{0, 1 - 2 eps} = max{0, 2p - 1}: classical feed-forward only.
inline double one_way_capacity(const ErasureChannel& ch) {
    validate(ch);
    return std::max(0.0, 2.0 * ch.success_prob - 1.0);
}

// Q2 = 1 - eps = p: two-way classical assistance, positive whenever p > 0.
inline double two_way_capacity(const ErasureChannel& ch) {
    validate(ch);
    return ch.success_prob;
}

}  // namespace qtrans
