#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qre/matrix.hpp"

namespace qre {

inline constexpr double kHermitianTol = 1e-12;

/// Eigenpairs of a Hermitian matrix.
///
/// Eigenvalues are ascending. Column k of `vectors` is the eigenvector for
/// `values[k]`; its first component with modulus above 1e-12 is real and
/// positive, so the output is a pure function of the input bits.
struct SpectralDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;

    std::size_t dim() const noexcept { return values.size(); }

    std::vector<cplx> vector(std::size_t k) const {
        std::vector<cplx> v(dim());
        for (std::size_t r = 0; r < dim(); ++r) v[r] = vectors(r, k);
        return v;
    }

    // V diag(fn(lambda)) V^dagger
    template <class Fn>
    ComplexMatrix reconstruct(Fn&& fn) const {
        const std::size_t n = dim();
        ComplexMatrix out(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double w = fn(values[k]);
            if (w == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const cplx vik = vectors(i, k) * w;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
            }
        }
        return out;
    }

    ComplexMatrix reconstruct() const {
        return reconstruct([](double x) { return x; });
    }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// A <- J^dagger A J and V <- V J for the unitary J that zeroes A(p, q).
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag; // e^{i phi}

    // Real symmetric rotation on the phase-rotated block [[app, |apq|], [|apq|, aqq]].
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
    const cplx jpp = c;
    const cplx jpq = s;
    const cplx jqp = -s * std::conj(phase);
    const cplx jqq = c * std::conj(phase);

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

} // namespace detail

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Sweeps over all (p, q) pairs in row order until the off-diagonal
/// Frobenius norm drops below 1e-14 (scaled by the matrix norm when that
/// exceeds one). Intended for the small dimensions used here (up to ~64).
inline SpectralDecomposition eig_hermitian(const ComplexMatrix& m) {
    if (const double r = m.hermiticity_residual(); r > kHermitianTol)
        throw Error(Errc::NotHermitian, "max |M - M^dagger| = " + std::to_string(r));

    const std::size_t n = m.dim();
    ComplexMatrix a = m.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && detail::off_diagonal_norm(a) > tol; ++sweep)
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src).real();
        cplx phase{1.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            const double mag = std::abs(v(r, src));
            if (mag > 1e-12) {
                phase = std::conj(v(r, src)) / mag;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, src) * phase;
        // the pivot component is real by construction; drop its roundoff imaginary part
        for (std::size_t r = 0; r < n; ++r)
            if (std::abs(out.vectors(r, k)) > 1e-12) {
                out.vectors(r, k) = out.vectors(r, k).real();
                break;
            }
    }
    return out;
}

} // namespace qre
