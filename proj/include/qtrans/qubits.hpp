#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtrans/detail/eig.hpp"
#include "qtrans/errors.hpp"
#include "qtrans/rng.hpp"

namespace qtrans {

enum class Domain { microwave, optical };

struct QubitLabel {
    Domain domain = Domain::microwave;
    int owner = 0;  // 0 = orchestrator, 1..n = client index

    friend bool operator==(const QubitLabel&, const QubitLabel&) = default;
};

// Dense state vector over up to 14 qubits. Qubit q is bit q of the basis
// index (LSB first).
class PureState {
public:
    static constexpr int max_qubits = 14;

    explicit PureState(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > max_qubits)
            throw std::length_error("PureState: qubit count outside [1,14]");
        amps_.assign(std::size_t{1} << n_qubits, 0.0);
        amps_[0] = 1.0;
        labels_.assign(static_cast<std::size_t>(n_qubits), QubitLabel{});
    }

    static PureState from_amplitudes(std::vector<std::complex<double>> amps) {
        if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
            throw std::invalid_argument("PureState: amplitude count must be a power of two");
        const int n = std::countr_zero(amps.size());
        PureState s(n);
        s.amps_ = std::move(amps);
        return s;
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    std::complex<double>& amp(std::size_t basis) { return amps_.at(basis); }
    std::complex<double> amp(std::size_t basis) const { return amps_.at(basis); }

    std::vector<QubitLabel>& labels() { return labels_; }
    const std::vector<QubitLabel>& labels() const { return labels_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(norm_sq()); }

    void normalize() {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("PureState: cannot normalize the zero vector");
        for (auto& a : amps_) a /= n;
    }

    void apply_h(int q) {
        check_qubit(q);
        const std::size_t mask = std::size_t{1} << q;
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & mask) continue;
            const auto a0 = amps_[i], a1 = amps_[i | mask];
            amps_[i] = (a0 + a1) * inv_sqrt2;
            amps_[i | mask] = (a0 - a1) * inv_sqrt2;
        }
    }

    void apply_x(int q) {
        check_qubit(q);
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if (!(i & mask)) std::swap(amps_[i], amps_[i | mask]);
    }

    void apply_z(int q) {
        check_qubit(q);
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if (i & mask) amps_[i] = -amps_[i];
    }

    void apply_cnot(int control, int target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) throw std::invalid_argument("cnot: control equals target");
        const std::size_t cm = std::size_t{1} << control;
        const std::size_t tm = std::size_t{1} << target;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
    }

    friend bool operator==(const PureState&, const PureState&) = default;

private:
    void check_qubit(int q) const {
        if (q < 0 || q >= n_) throw std::out_of_range("PureState: qubit index out of range");
    }

    int n_;
    std::vector<std::complex<double>> amps_;
    std::vector<QubitLabel> labels_;
};

// b's qubits are appended above a's.
inline PureState tensor(const PureState& a, const PureState& b) {
    if (a.n_qubits() + b.n_qubits() > PureState::max_qubits)
        throw std::length_error("tensor: combined register exceeds 14 qubits");
    PureState out(a.n_qubits() + b.n_qubits());
    for (std::size_t ib = 0; ib < b.dim(); ++ib)
        for (std::size_t ia = 0; ia < a.dim(); ++ia)
            out.amp((ib << a.n_qubits()) | ia) = a.amp(ia) * b.amp(ib);
    for (int q = 0; q < a.n_qubits(); ++q) out.labels()[q] = a.labels()[q];
    for (int q = 0; q < b.n_qubits(); ++q) out.labels()[a.n_qubits() + q] = b.labels()[q];
    return out;
}

// |<a|b>|^2
inline double fidelity(const PureState& a, const PureState& b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity: register size mismatch");
    std::complex<double> overlap = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a.amp(i)) * b.amp(i);
    return std::norm(overlap);
}

// (|0...0> + |1...1>) / sqrt(2); n = 1 gives |+>, n = 2 the Bell pair.
inline PureState make_ghz(int n) {
    if (n < 1 || n > 12) throw std::length_error("make_ghz: size cap is 12 qubits");
    PureState s(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.amp(0) = inv_sqrt2;
    s.amp(s.dim() - 1) = inv_sqrt2;
    return s;
}

inline PureState bell_phi_plus() { return make_ghz(2); }

enum class MeasureBasis { z };

// Projects qubit `index` onto `outcome` and removes it from the register.
// Returns the outcome probability and the renormalized remainder.
inline std::pair<double, PureState> project_out_qubit(const PureState& s, int index, int outcome) {
    if (index < 0 || index >= s.n_qubits()) throw std::out_of_range("project_out_qubit: bad index");
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("project_out_qubit: outcome must be 0/1");
    if (s.n_qubits() == 1) throw std::invalid_argument("project_out_qubit: cannot empty the register");

    const std::size_t low = (std::size_t{1} << index) - 1;
    auto source_index = [&](std::size_t rest) {
        return ((rest & ~low) << 1) | (static_cast<std::size_t>(outcome) << index) | (rest & low);
    };

    PureState rem(s.n_qubits() - 1);
    double p = 0.0;
    for (std::size_t r = 0; r < rem.dim(); ++r) {
        const auto a = s.amp(source_index(r));
        rem.amp(r) = a;
        p += std::norm(a);
    }
    if (p == 0.0) throw std::domain_error("project_out_qubit: outcome has zero probability");
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t r = 0; r < rem.dim(); ++r) rem.amp(r) *= inv;
    auto labels = s.labels();
    labels.erase(labels.begin() + index);
    rem.labels() = labels;
    return {p, std::move(rem)};
}

// Born-rule Z measurement; returns the outcome and the collapsed remainder.
inline std::pair<int, PureState> measure_out_qubit(const PureState& s, int index, SplitMix64& rng,
                                                   MeasureBasis = MeasureBasis::z) {
    if (index < 0 || index >= s.n_qubits()) throw std::out_of_range("measure_out_qubit: bad index");
    const std::size_t mask = std::size_t{1} << index;
    double p0 = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!(i & mask)) p0 += std::norm(s.amp(i));
    const int outcome = rng.next_double() < p0 ? 0 : 1;
    auto [p, rem] = project_out_qubit(s, index, outcome);
    return {outcome, std::move(rem)};
}

// Entanglement entropy (bits) of the qubits selected by subset_mask against
// the rest, assuming a normalized pure state.
inline double entanglement_entropy(const PureState& s, std::uint32_t subset_mask) {
    const int n = s.n_qubits();
    subset_mask &= (std::uint32_t{1} << n) - 1;
    const int ka = std::popcount(subset_mask);
    if (ka == 0 || ka == n) return 0.0;

    const std::size_t da = std::size_t{1} << ka;
    const std::size_t db = std::size_t{1} << (n - ka);
    // psi reshaped to (subset, rest)
    std::vector<std::complex<double>> psi(da * db);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t ia = 0, ib = 0;
        std::size_t ba = 0, bb = 0;
        for (int q = 0; q < n; ++q) {
            const std::size_t bit = (i >> q) & 1u;
            if (subset_mask & (std::uint32_t{1} << q))
                ia |= bit << ba++;
            else
                ib |= bit << bb++;
        }
        psi[ia * db + ib] = s.amp(i);
    }
    std::vector<std::complex<double>> rho(da * da);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t ap = 0; ap < da; ++ap) {
            std::complex<double> v = 0.0;
            for (std::size_t b = 0; b < db; ++b) v += psi[a * db + b] * std::conj(psi[ap * db + b]);
            rho[a * da + ap] = v;
        }
    return detail::entropy_bits(detail::hermitian_eigenvalues(rho, da));
}

namespace detail_teleport {

// Shared teleportation core. Logical layout of the joint register:
// inputs 0..k-1, EPR halves appended pairwise (orchestrator half k+2i,
// client half k+2i+1). A live position map tracks indices as measured
// qubits are traced out.
inline PureState run(const PureState& psi, std::span<const int> forced, SplitMix64* rng) {
    const int k = psi.n_qubits();
    if (3 * k > PureState::max_qubits)
        throw std::length_error("teleport: joint register exceeds 14 qubits");

    PureState joint = psi;
    for (int i = 0; i < k; ++i) joint = tensor(joint, bell_phi_plus());

    std::vector<int> pos(static_cast<std::size_t>(3) * k);
    std::iota(pos.begin(), pos.end(), 0);
    auto remove_at = [&](int idx) {
        for (auto& p : pos) {
            if (p == idx)
                p = -1;
            else if (p > idx)
                --p;
        }
    };

    for (int i = 0; i < k; ++i) {
        const int input = i;
        const int orch_half = k + 2 * i;
        const int client = k + 2 * i + 1;

        joint.apply_cnot(pos[input], pos[orch_half]);
        joint.apply_h(pos[input]);

        int a = 0, b = 0;
        if (forced.empty()) {
            int idx = pos[input];
            auto [oa, after_a] = measure_out_qubit(joint, idx, *rng);
            a = oa;
            joint = std::move(after_a);
            remove_at(idx);
            idx = pos[orch_half];
            auto [ob, after_b] = measure_out_qubit(joint, idx, *rng);
            b = ob;
            joint = std::move(after_b);
            remove_at(idx);
        } else {
            a = (forced[i] >> 1) & 1;
            b = forced[i] & 1;
            int idx = pos[input];
            joint = project_out_qubit(joint, idx, a).second;
            remove_at(idx);
            idx = pos[orch_half];
            joint = project_out_qubit(joint, idx, b).second;
            remove_at(idx);
        }

        // standard corrections for a Phi+ resource: X^b then Z^a
        if (b) joint.apply_x(pos[client]);
        if (a) joint.apply_z(pos[client]);
    }

    for (int i = 0; i < k; ++i) joint.labels()[i] = QubitLabel{Domain::microwave, i + 1};
    return joint;
}

}  // namespace detail_teleport

// Teleports every qubit of `psi` over one ideal Phi+ pair each; Bell
// measurement outcomes are Born-sampled from bsm_seed. For ideal resources
// the client-side result reproduces psi exactly.
inline PureState teleport(const PureState& psi, int resource_epr_count, std::uint64_t bsm_seed) {
    if (resource_epr_count != psi.n_qubits())
        throw resource_mismatch_error("teleport: one EPR pair per teleported ebit required");
    SplitMix64 rng(bsm_seed);
    return detail_teleport::run(psi, {}, &rng);
}

// Same, but with the Bell measurement outcome for each ebit pinned
// (0..3, encoded as 2*phase_bit + flip_bit). Used to sweep all 4^k outcome
// patterns deterministically.
inline PureState teleport_with_outcomes(const PureState& psi, std::span<const int> bsm_outcomes) {
    if (static_cast<int>(bsm_outcomes.size()) != psi.n_qubits())
        throw resource_mismatch_error("teleport: one BSM outcome per teleported ebit required");
    for (int o : bsm_outcomes)
        if (o < 0 || o > 3) throw std::invalid_argument("teleport: BSM outcomes are 0..3");
    return detail_teleport::run(psi, bsm_outcomes, nullptr);
}

}  // namespace qtrans
