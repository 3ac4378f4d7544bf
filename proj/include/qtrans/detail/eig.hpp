#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qtrans::detail {

// Eigenvalues of a real symmetric matrix (row-major, n x n) by cyclic Jacobi
// rotations. Sizes here are tiny (reduced density matrices), so no pivoting
// or bells are needed.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) eigs[i] = at(i, i);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

// Eigenvalues of a complex Hermitian matrix (row-major, n x n) through the
// real embedding [[Re, -Im], [Im, Re]], whose spectrum is that of H doubled.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, std::size_t n) {
    const std::size_t m = 2 * n;
    std::vector<double> e(m * m, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const std::complex<double> v = h[r * n + c];
            e[r * m + c] = v.real();
            e[r * m + (n + c)] = -v.imag();
            e[(n + r) * m + c] = v.imag();
            e[(n + r) * m + (n + c)] = v.real();
        }
    }
    std::vector<double> doubled = symmetric_eigenvalues(std::move(e), m);
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) eigs[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return eigs;
}

// Von Neumann entropy in bits from density-matrix eigenvalues. Values that
// are zero up to numerical noise contribute nothing (p log p -> 0).
inline double entropy_bits(const std::vector<double>& eigs) {
    double s = 0.0;
    for (double lambda : eigs) {
        if (lambda <= 1e-15) continue;
        const double p = std::min(lambda, 1.0);
        s -= p * std::log2(p);
    }
    return s;
}

}  // namespace qtrans::detail
