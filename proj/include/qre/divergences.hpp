#pragma once

#include <cmath>
#include <vector>

#include "qre/extended_real.hpp"
#include "qre/state.hpp"

namespace qre {

// Overlap mass leaking outside the support of sigma beyond this makes S(rho||sigma) infinite.
inline constexpr double kSupportLeakTol = 1e-9;

// -sum lambda ln lambda over eigenvalues > 1e-12
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double l : rho.spectrum().values)
        if (l > kSupportCutoff) s -= l * std::log(l);
    return s;
}

/// S(rho||sigma) = sum_i p_i ln p_i - sum_ij |<q_j|p_i>|^2 p_i ln q_j, in the
/// eigenbases of both arguments. Infinite when the support of rho is not
/// contained in the support of sigma.
inline ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    rho.matrix().require_same_dim(sigma.matrix());
    const auto& sr = rho.spectrum();
    const auto& ss = sigma.spectrum();
    const std::size_t n = rho.dim();

    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = sr.values[i];
        if (p <= kSupportCutoff) continue;
        const auto pi = sr.vector(i);
        double mass = 0.0;
        double cross = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double q = ss.values[j];
            if (q <= kSupportCutoff) continue;
            const double w = std::norm(inner(ss.vector(j), pi));
            mass += w;
            cross += w * std::log(q);
        }
        if (mass < 1.0 - kSupportLeakTol) return ExtendedReal::infinity();
        value += p * std::log(p) - p * cross;
    }
    return ExtendedReal::finite(value);
}

// (S(rho||sigma) + S(sigma||rho)) / 2
inline ExtendedReal symmetric_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return (relative_entropy(rho, sigma) + relative_entropy(sigma, rho)).half();
}

/// sum_j |q_j><q_j| <q_j|rho|q_j> over the columns of `basis`.
inline DensityMatrix dephase(const DensityMatrix& rho, const SpectralDecomposition& basis) {
    rho.matrix().require_same_dim(basis.vectors);
    const std::size_t n = rho.dim();
    ComplexMatrix out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto q = basis.vector(j);
        const double w = rho.matrix().sandwich(q, q).real();
        out += ComplexMatrix::outer(q, q) * w;
    }
    return validate_density(out.hermitian_part());
}

// C_sigma(rho) = S(Delta_sigma(rho)) - S(rho)
inline double coherence(const DensityMatrix& rho, const DensityMatrix& sigma) {
    rho.matrix().require_same_dim(sigma.matrix());
    const double c = von_neumann_entropy(dephase(rho, sigma.spectrum())) - von_neumann_entropy(rho);
    return ExtendedReal::finite(c).value();
}

// [S(Delta_sigma rho || sigma) + S(Delta_rho sigma || rho)] / 2
inline ExtendedReal classical_symmetric(const DensityMatrix& rho, const DensityMatrix& sigma) {
    rho.matrix().require_same_dim(sigma.matrix());
    const auto a = relative_entropy(dephase(rho, sigma.spectrum()), sigma);
    const auto b = relative_entropy(dephase(sigma, rho.spectrum()), rho);
    return (a + b).half();
}

} // namespace qre
