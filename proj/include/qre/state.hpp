#pragma once

#include <cmath>
#include <string>

#include "qre/eigen.hpp"
#include "qre/matrix.hpp"

namespace qre {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;

class DensityMatrix;
DensityMatrix validate_density(const ComplexMatrix& m);

/// Hermitian, positive semidefinite, unit-trace. Only constructible through
/// validate_density, so holding one is proof the invariants were checked.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

    // The decomposition computed during validation.
    const SpectralDecomposition& spectrum() const noexcept { return spec_; }

private:
    DensityMatrix(ComplexMatrix m, SpectralDecomposition s) : m_(std::move(m)), spec_(std::move(s)) {}
    friend DensityMatrix validate_density(const ComplexMatrix& m);

    ComplexMatrix m_;
    SpectralDecomposition spec_;
};

/// Validates and wraps a density matrix.
///
/// Eigenvalues in [-1e-10, 0) are clamped to zero and the matrix is rebuilt
/// from its spectrum with the trace renormalized.
inline DensityMatrix validate_density(const ComplexMatrix& m) {
    if (const double r = m.hermiticity_residual(); r > kHermitianTol)
        throw Error(Errc::NotHermitian, "max |M - M^dagger| = " + std::to_string(r));
    ComplexMatrix h = m.hermitian_part();
    SpectralDecomposition spec = eig_hermitian(h);

    const double lowest = spec.values.empty() ? 0.0 : spec.values.front();
    if (lowest < -kPositivityTol)
        throw Error(Errc::NotPositive, "smallest eigenvalue " + std::to_string(lowest));
    if (const double t = std::abs(h.trace() - 1.0); t > kTraceTol)
        throw Error(Errc::TraceNotOne, "|tr(M) - 1| = " + std::to_string(t));

    if (lowest < 0.0) {
        double total = 0.0;
        for (auto& l : spec.values) {
            if (l < 0.0) l = 0.0;
            total += l;
        }
        for (auto& l : spec.values) l /= total;
        h = spec.reconstruct();
    }
    return DensityMatrix(std::move(h), std::move(spec));
}

/// Hermitian operator (within 1e-12).
class Observable {
public:
    explicit Observable(const ComplexMatrix& m) {
        if (const double r = m.hermiticity_residual(); r > kHermitianTol)
            throw Error(Errc::NotHermitian, "max |M - M^dagger| = " + std::to_string(r));
        m_ = m.hermitian_part();
    }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

    Observable squared() const { return Observable((m_ * m_).hermitian_part()); }

private:
    ComplexMatrix m_;
};

// Re tr(rho * theta)
inline double expectation(const DensityMatrix& state, const Observable& obs) {
    const auto& a = state.matrix();
    const auto& b = obs.matrix();
    a.require_same_dim(b);
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    if (std::abs(t.imag()) > 1e-10)
        throw Error(Errc::NumericalResidual, "imaginary part of tr(rho theta) = " + std::to_string(t.imag()));
    return t.real();
}

inline double variance(const DensityMatrix& state, const Observable& obs) {
    const double m = expectation(state, obs);
    double v = expectation(state, obs.squared()) - m * m;
    if (v < 0.0 && v >= -1e-12) v = 0.0;
    return v;
}

// ln rho on its support; directions with eigenvalue <= 1e-12 map to 0.
inline ComplexMatrix log_on_support(const DensityMatrix& rho) {
    return rho.spectrum().reconstruct([](double l) { return l > kSupportCutoff ? std::log(l) : 0.0; });
}

} // namespace qre
