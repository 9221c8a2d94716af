#pragma once

// Classical surrogate of a (rho, sigma, theta) triple.
//
// With rho = sum_i p_i |p_i><p_i| and sigma = sum_j q_j |q_j><q_j|:
//   P_ij     = p_i |<q_j|p_i>|^2
//   Q_ij     = q_j |<q_j|p_i>|^2
//   Theta_ij = <p_i|theta|q_j> / <p_i|q_j>   (0 where the overlap vanishes)
// The surrogate reproduces the means of theta under rho and sigma, bounds
// their second moments from below, and its symmetric KL divergence equals
// the symmetric quantum relative entropy.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/divergences.hpp"
#include "qre/state.hpp"

namespace qre {

inline constexpr double kOverlapCutoff = 1e-10;
inline constexpr double kMeanGapTol = 1e-9;

struct SurrogateDistribution {
    std::size_t rows = 0; // i range (eigenvectors of rho)
    std::size_t cols = 0; // j range (eigenvectors of sigma)
    std::vector<double> p;
    std::vector<double> q;
    std::vector<cplx> theta;

    double P(std::size_t i, std::size_t j) const { return p[i * cols + j]; }
    double Q(std::size_t i, std::size_t j) const { return q[i * cols + j]; }
    cplx Theta(std::size_t i, std::size_t j) const { return theta[i * cols + j]; }

    cplx mean_p() const { return weighted_mean(p); }
    cplx mean_q() const { return weighted_mean(q); }
    double second_moment_p() const { return weighted_abs2(p); }
    double second_moment_q() const { return weighted_abs2(q); }

private:
    cplx weighted_mean(const std::vector<double>& w) const {
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * theta[k];
        return s;
    }
    double weighted_abs2(const std::vector<double>& w) const {
        double s = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * std::norm(theta[k]);
        return s;
    }
};

inline SurrogateDistribution build_surrogate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                             const Observable& theta) {
    rho.matrix().require_same_dim(sigma.matrix());
    rho.matrix().require_same_dim(theta.matrix());
    const auto& sr = rho.spectrum();
    const auto& ss = sigma.spectrum();
    const std::size_t n = rho.dim();

    SurrogateDistribution s;
    s.rows = n;
    s.cols = n;
    s.p.resize(n * n);
    s.q.resize(n * n);
    s.theta.assign(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const auto pi = sr.vector(i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto qj = ss.vector(j);
            const cplx ov = inner(pi, qj); // <p_i|q_j>
            const double w = std::norm(ov);
            const std::size_t k = i * n + j;
            s.p[k] = std::max(sr.values[i], 0.0) * w;
            s.q[k] = std::max(ss.values[j], 0.0) * w;
            if (std::abs(ov) > kOverlapCutoff) s.theta[k] = theta.matrix().sandwich(pi, qj) / ov;
        }
    }
    return s;
}

namespace detail {

inline double clamp_variance(double v) { return (v < 0.0 && v >= -1e-12) ? 0.0 : v; }

} // namespace detail

/// U(theta; rho, sigma) = (Var_rho + Var_sigma) / ((1/2)(<theta>_rho - <theta>_sigma)^2),
/// from direct traces.
inline double uncertainty_u(const DensityMatrix& rho, const DensityMatrix& sigma, const Observable& theta) {
    rho.matrix().require_same_dim(sigma.matrix());
    const double mr = expectation(rho, theta);
    const double ms = expectation(sigma, theta);
    const double gap = mr - ms;
    if (std::abs(gap) <= kMeanGapTol)
        throw Error(Errc::EqualMeans, "|<theta>_rho - <theta>_sigma| = " + std::to_string(std::abs(gap)));
    const auto sq = theta.squared();
    const double vr = detail::clamp_variance(expectation(rho, sq) - mr * mr);
    const double vs = detail::clamp_variance(expectation(sigma, sq) - ms * ms);
    return (vr + vs) / (0.5 * gap * gap);
}

// Same functional on the surrogate: complex means, |Theta|^2 second moments.
inline double classical_uncertainty(const SurrogateDistribution& s) {
    const cplx mp = s.mean_p();
    const cplx mq = s.mean_q();
    const double gap2 = std::norm(mp - mq);
    if (std::sqrt(gap2) <= kMeanGapTol)
        throw Error(Errc::EqualMeans, "|<Theta>_P - <Theta>_Q| = " + std::to_string(std::sqrt(gap2)));
    const double vp = detail::clamp_variance(s.second_moment_p() - std::norm(mp));
    const double vq = detail::clamp_variance(s.second_moment_q() - std::norm(mq));
    return (vp + vq) / (0.5 * gap2);
}

// D(A|B) over flat probability vectors; 0 log(0/x) = 0, +inf if A > 0 where B = 0.
inline ExtendedReal kl_divergence(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "KL divergence of unequal supports");
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] <= 0.0) continue;
        if (b[k] <= 0.0) return ExtendedReal::infinity();
        d += a[k] * (std::log(a[k]) - std::log(b[k]));
    }
    return ExtendedReal::finite(d);
}

// (D(P|Q), D(Q|P))
inline std::pair<ExtendedReal, ExtendedReal> surrogate_kl(const SurrogateDistribution& s) {
    return {kl_divergence(s.p, s.q), kl_divergence(s.q, s.p)};
}

struct UncertaintyReport {
    double u_quantum = 0.0;
    double u_classical = 0.0;
    ExtendedReal s_tilde;
    ExtendedReal kl_pq;
    ExtendedReal kl_qp;
    BoundValue bound;

    // U >= surrogate uncertainty
    bool quantum_dominates_classical(double tol = 1e-9) const { return u_quantum >= u_classical - tol; }
    // surrogate uncertainty >= f(S~)
    bool classical_dominates_bound(double tol = 1e-9) const {
        return bound.is_infinite() ? false : u_classical >= bound.value() - tol;
    }
    bool bound_holds(double tol = 1e-9) const {
        return bound.is_infinite() ? false : u_quantum >= bound.value() - tol;
    }
    bool chain_holds(double tol = 1e-9) const {
        return quantum_dominates_classical(tol) && classical_dominates_bound(tol) && bound_holds(tol);
    }
};

inline UncertaintyReport full_report(const DensityMatrix& rho, const DensityMatrix& sigma, const Observable& theta) {
    UncertaintyReport r;
    r.u_quantum = uncertainty_u(rho, sigma, theta);
    const auto s = build_surrogate(rho, sigma, theta);
    r.u_classical = classical_uncertainty(s);
    std::tie(r.kl_pq, r.kl_qp) = surrogate_kl(s);
    r.s_tilde = symmetric_relative_entropy(rho, sigma);
    r.bound = bounds::f(r.s_tilde);
    return r;
}

} // namespace qre
