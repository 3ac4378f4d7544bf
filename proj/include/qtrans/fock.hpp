#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qtrans/detail/eig.hpp"
#include "qtrans/errors.hpp"

namespace qtrans {

enum class ModeKind { optical, microwave };

// Two bosonic modes truncated at `cutoff` photons per mode. The truncation
// is exact as long as the total photon number of every populated basis
// state stays within the cutoff; states beyond that are rejected, not
// silently dropped.
class FockTwoMode {
public:
    explicit FockTwoMode(int cutoff = 2,
                         ModeKind label_a = ModeKind::optical,
                         ModeKind label_b = ModeKind::microwave)
        : cutoff_(cutoff), labels_{label_a, label_b},
          amps_(static_cast<std::size_t>(cutoff + 1) * (cutoff + 1)) {
        if (cutoff < 2) throw std::domain_error("FockTwoMode: cutoff must be >= 2");
    }

    static FockTwoMode basis(int n_a, int n_b, int cutoff = 2,
                             ModeKind label_a = ModeKind::optical,
                             ModeKind label_b = ModeKind::microwave) {
        FockTwoMode s(cutoff, label_a, label_b);
        s.set_amp(n_a, n_b, 1.0);
        return s;
    }

    int cutoff() const { return cutoff_; }
    ModeKind label(int mode) const { return labels_.at(static_cast<std::size_t>(mode)); }

    std::complex<double> amp(int n_a, int n_b) const { return amps_[index(n_a, n_b)]; }

    void set_amp(int n_a, int n_b, std::complex<double> value) {
        const std::size_t i = index(n_a, n_b);
        if (n_a + n_b > cutoff_ && value != std::complex<double>{})
            throw cutoff_overflow_error("FockTwoMode: basis state exceeds the photon-number cutoff");
        amps_[i] = value;
    }

    void add_amp(int n_a, int n_b, std::complex<double> value) { set_amp(n_a, n_b, amp(n_a, n_b) + value); }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(norm_sq()); }

    void normalize() {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("FockTwoMode: cannot normalize the zero vector");
        for (auto& a : amps_) a /= n;
    }

    // largest total photon number carried by any populated basis state
    int max_populated_total() const {
        int best = 0;
        for (int n = 0; n <= cutoff_; ++n)
            for (int m = 0; m <= cutoff_; ++m)
                if (amps_[index_unchecked(n, m)] != std::complex<double>{} && n + m > best) best = n + m;
        return best;
    }

    void ensure_within_cutoff() const {
        if (max_populated_total() > cutoff_)
            throw cutoff_overflow_error("FockTwoMode: populated state exceeds the photon-number cutoff");
    }

    friend bool operator==(const FockTwoMode&, const FockTwoMode&) = default;

private:
    std::size_t index(int n_a, int n_b) const {
        if (n_a < 0 || n_b < 0 || n_a > cutoff_ || n_b > cutoff_)
            throw std::out_of_range("FockTwoMode: photon number outside the grid");
        return index_unchecked(n_a, n_b);
    }

    std::size_t index_unchecked(int n_a, int n_b) const {
        return static_cast<std::size_t>(n_a) * (cutoff_ + 1) + n_b;
    }

    int cutoff_;
    std::array<ModeKind, 2> labels_;
    std::vector<std::complex<double>> amps_;
};

// |<a|b>|^2
inline double fidelity(const FockTwoMode& a, const FockTwoMode& b) {
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("fidelity: mismatched cutoffs");
    std::complex<double> overlap = 0.0;
    for (int n = 0; n <= a.cutoff(); ++n)
        for (int m = 0; m <= a.cutoff() - n; ++m) overlap += std::conj(a.amp(n, m)) * b.amp(n, m);
    return std::norm(overlap);
}

// Lossless beam splitter with transmission T, convention
//   a_out = sqrt(1-T) a_in + i sqrt(T) b_in   (and symmetrically for b).
// Creation operators then map as a+ -> sqrt(1-T) a+ + i sqrt(T) b+, and the
// output is the binomial expansion of the transformed operator product.
// Total photon number is conserved exactly.
inline FockTwoMode beam_splitter(const FockTwoMode& in, double transmission) {
    if (!(transmission >= 0.0 && transmission <= 1.0))
        throw std::domain_error("beam_splitter: transmission outside [0,1]");
    in.ensure_within_cutoff();

    const int k = in.cutoff();
    std::vector<double> fact(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
    auto binom = [&](int n, int r) { return fact[n] / (fact[r] * fact[n - r]); };

    const double sr = std::sqrt(1.0 - transmission);
    const std::complex<double> ist(0.0, std::sqrt(transmission));
    auto ipow = [](std::complex<double> z, int e) {
        std::complex<double> r = 1.0;
        for (int i = 0; i < e; ++i) r *= z;
        return r;
    };
    auto rpow = [](double x, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    };

    FockTwoMode out(k, in.label(0), in.label(1));
    for (int n = 0; n <= k; ++n) {
        for (int m = 0; m + n <= k; ++m) {
            const std::complex<double> c = in.amp(n, m);
            if (c == std::complex<double>{}) continue;
            const std::complex<double> base = c / std::sqrt(fact[n] * fact[m]);
            for (int j = 0; j <= n; ++j) {
                for (int l = 0; l <= m; ++l) {
                    // (sr a+)^j (ist b+)^(n-j) from the first factor,
                    // (ist a+)^l (sr b+)^(m-l) from the second
                    const int p = j + l;
                    const int q = n + m - p;
                    const std::complex<double> coef =
                        binom(n, j) * binom(m, l) * rpow(sr, j + (m - l)) * ipow(ist, (n - j) + l);
                    out.add_amp(p, q, base * coef * std::sqrt(fact[p] * fact[q]));
                }
            }
        }
    }
    return out;
}

// Post-transduction two-mode state for one injected microwave photon,
// modes ordered (microwave, optical):
//   sqrt(eta) |0_M 1_O> + sqrt(1-eta) |1_M 0_O>
inline FockTwoMode transducer_output_state(double eta, int cutoff = 2) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("transducer_output_state: efficiency outside [0,1]");
    FockTwoMode s(cutoff, ModeKind::microwave, ModeKind::optical);
    s.set_amp(0, 1, std::sqrt(eta));
    s.set_amp(1, 0, std::sqrt(1.0 - eta));
    return s;
}

// Entanglement entropy (bits) of mode `mode` against the other, assuming a
// normalized pure state: eigenvalues of rho(n,n') = sum_m psi(n,m) psi*(n',m).
inline double reduced_entropy(const FockTwoMode& s, int mode) {
    if (mode != 0 && mode != 1) throw std::out_of_range("reduced_entropy: mode must be 0 or 1");
    const std::size_t d = static_cast<std::size_t>(s.cutoff()) + 1;
    std::vector<std::complex<double>> rho(d * d);
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t np = 0; np < d; ++np) {
            std::complex<double> v = 0.0;
            for (std::size_t m = 0; m < d; ++m) {
                const auto an = mode == 0 ? s.amp(int(n), int(m)) : s.amp(int(m), int(n));
                const auto anp = mode == 0 ? s.amp(int(np), int(m)) : s.amp(int(m), int(np));
                v += an * std::conj(anp);
            }
            rho[n * d + np] = v;
        }
    }
    return detail::entropy_bits(detail::hermitian_eigenvalues(rho, d));
}

}  // namespace qtrans
