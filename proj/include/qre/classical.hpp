#pragma once

// Uncertainty relation for a complex random variable theta(s) under two
// distributions P and Q, built from the mixture P~ = (P + Q)/2 on
// S' = {s : P(s) + Q(s) > 0}.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/matrix.hpp"
#include "qre/surrogate.hpp"

namespace qre::classical {

class ClassicalEnsemble {
public:
    ClassicalEnsemble(std::vector<double> p, std::vector<double> q, std::vector<cplx> theta)
        : p_(std::move(p)), q_(std::move(q)), theta_(std::move(theta)) {
        if (p_.size() != q_.size() || p_.size() != theta_.size() || p_.empty())
            throw Error(Errc::DimensionMismatch, "P, Q and theta must share a non-empty support");
        check_distribution(p_, "P");
        check_distribution(q_, "Q");
    }

    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& p() const noexcept { return p_; }
    const std::vector<double>& q() const noexcept { return q_; }
    const std::vector<cplx>& theta() const noexcept { return theta_; }

    bool mutually_continuous() const noexcept {
        for (std::size_t s = 0; s < size(); ++s)
            if ((p_[s] > 0.0) != (q_[s] > 0.0)) return false;
        return true;
    }

private:
    static void check_distribution(const std::vector<double>& w, const char* name) {
        double total = 0.0;
        for (double x : w) {
            if (!(x >= 0.0)) throw Error(Errc::InvalidEnsemble, std::string(name) + " has a negative entry");
            total += x;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw Error(Errc::InvalidEnsemble, std::string(name) + " sums to " + std::to_string(total));
    }

    std::vector<double> p_;
    std::vector<double> q_;
    std::vector<cplx> theta_;
};

struct MixtureStats {
    std::vector<std::size_t> support; // S'
    std::vector<double> p_tilde;      // aligned with support
    cplx mean_p;
    cplx mean_q;
    cplx mean_mix;
    double mixture_variance = 0.0; // <|theta - mean_mix|^2>_P~
    double contrast = 0.0;         // <((P - Q)/(P + Q))^2>_P~
};

inline MixtureStats mixture_stats(const ClassicalEnsemble& e) {
    MixtureStats m;
    const auto& p = e.p();
    const auto& q = e.q();
    const auto& th = e.theta();
    for (std::size_t s = 0; s < e.size(); ++s) {
        m.mean_p += th[s] * p[s];
        m.mean_q += th[s] * q[s];
        if (p[s] + q[s] > 0.0) {
            m.support.push_back(s);
            m.p_tilde.push_back(0.5 * (p[s] + q[s]));
        }
    }
    for (std::size_t k = 0; k < m.support.size(); ++k) m.mean_mix += th[m.support[k]] * m.p_tilde[k];
    for (std::size_t k = 0; k < m.support.size(); ++k) {
        const std::size_t s = m.support[k];
        const double r = (p[s] - q[s]) / (p[s] + q[s]);
        m.mixture_variance += m.p_tilde[k] * std::norm(th[s] - m.mean_mix);
        m.contrast += m.p_tilde[k] * r * r;
    }
    return m;
}

// |sum_{S'} (theta(s) - c) (P(s) - Q(s)) / 2|^2
inline double shifted_difference(const ClassicalEnsemble& e, const MixtureStats& m, cplx c) {
    cplx acc{0.0, 0.0};
    for (std::size_t s : m.support) acc += (e.theta()[s] - c) * (0.5 * (e.p()[s] - e.q()[s]));
    return std::norm(acc);
}

struct ChainReport {
    double lhs = 0.0;       // |mean_p - mean_q|^2 / 4
    double rhs = 0.0;       // mixture variance times contrast
    double shift_spread = 0.0; // spread of the shifted form over c in {0, mean_mix, 1+2i} and lhs
    bool holds = false;
};

/// Cauchy-Schwarz chain: the mean gap rewritten with an arbitrary complex
/// shift c, bounded by mixture variance times contrast.
inline ChainReport cauchy_schwarz_chain(const ClassicalEnsemble& e, double tol = 1e-12) {
    const auto m = mixture_stats(e);
    ChainReport r;
    r.lhs = 0.25 * std::norm(m.mean_p - m.mean_q);
    r.rhs = m.mixture_variance * m.contrast;
    const std::array<cplx, 3> shifts{cplx{0.0, 0.0}, m.mean_mix, cplx{1.0, 2.0}};
    double lo = r.lhs, hi = r.lhs;
    for (const auto& c : shifts) {
        const double v = shifted_difference(e, m, c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    r.shift_spread = hi - lo;
    r.holds = r.lhs <= r.rhs + tol;
    return r;
}

struct TanhBoundReport {
    double contrast = 0.0;
    double bound = 1.0; // tanh^2(g(D~)/2); 1 when P, Q are not mutually continuous
    bool trivial = false;
    bool holds = false;
};

inline TanhBoundReport tanh_bound(const ClassicalEnsemble& e, double tol = 1e-10) {
    TanhBoundReport r;
    r.contrast = mixture_stats(e).contrast;
    if (!e.mutually_continuous()) {
        r.trivial = true;
        r.bound = 1.0;
    } else {
        const auto d = (kl_divergence(e.p(), e.q()) + kl_divergence(e.q(), e.p())).half();
        const double t = std::tanh(0.5 * bounds::g(d.value()));
        r.bound = t * t;
    }
    r.holds = r.contrast <= r.bound + tol;
    return r;
}

struct IdentityReport {
    double lhs = 0.0; // 4 <|theta - mean_mix|^2>_P~
    double rhs = 0.0; // 2 Var_P + 2 Var_Q + |mean_p - mean_q|^2
    double residual = 0.0;
};

inline IdentityReport variance_decomposition(const ClassicalEnsemble& e) {
    const auto m = mixture_stats(e);
    double m2p = 0.0, m2q = 0.0;
    for (std::size_t s = 0; s < e.size(); ++s) {
        m2p += e.p()[s] * std::norm(e.theta()[s]);
        m2q += e.q()[s] * std::norm(e.theta()[s]);
    }
    IdentityReport r;
    r.lhs = 4.0 * m.mixture_variance;
    r.rhs = 2.0 * (m2p - std::norm(m.mean_p)) + 2.0 * (m2q - std::norm(m.mean_q)) + std::norm(m.mean_p - m.mean_q);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

struct ClassicalTurReport {
    double uncertainty = 0.0; // (Var_P + Var_Q) / ((1/2)|mean_p - mean_q|^2)
    ExtendedReal divergence;  // D~(P, Q)
    BoundValue bound;         // f(D~)
    bool trivial = false;     // not mutually continuous, bound = 0
    bool holds = false;
};

inline ClassicalTurReport classical_tur(const ClassicalEnsemble& e, double tol = 1e-9) {
    const auto m = mixture_stats(e);
    const double gap2 = std::norm(m.mean_p - m.mean_q);
    if (std::sqrt(gap2) <= kMeanGapTol)
        throw Error(Errc::EqualMeans, "|mean_P - mean_Q| = " + std::to_string(std::sqrt(gap2)));
    double m2p = 0.0, m2q = 0.0;
    for (std::size_t s = 0; s < e.size(); ++s) {
        m2p += e.p()[s] * std::norm(e.theta()[s]);
        m2q += e.q()[s] * std::norm(e.theta()[s]);
    }
    ClassicalTurReport r;
    r.uncertainty = (detail::clamp_variance(m2p - std::norm(m.mean_p)) + detail::clamp_variance(m2q - std::norm(m.mean_q)))
                    / (0.5 * gap2);
    r.divergence = (kl_divergence(e.p(), e.q()) + kl_divergence(e.q(), e.p())).half();
    r.trivial = r.divergence.is_infinite();
    r.bound = bounds::f(r.divergence);
    r.holds = r.bound.is_finite() && r.uncertainty >= r.bound.value() - tol;
    return r;
}

// Two outcomes with weights e^{+-eps/2}, Q the exchanged distribution, theta = (+omega, -omega).
inline ClassicalEnsemble exchange_pair(double eps, double omega = 1.0) {
    if (!(eps > 0.0)) throw Error(Errc::NonPositiveEpsilon, "epsilon must be positive");
    const double a = 1.0 / (1.0 + std::exp(-eps)); // e^{eps/2} / (2 cosh(eps/2))
    const double b = 1.0 - a;
    return ClassicalEnsemble({a, b}, {b, a}, {cplx{omega, 0.0}, cplx{-omega, 0.0}});
}

} // namespace qre::classical
