#pragma once

// System S and environment E prepared in rho_S (x) rho_E, then evolved by a
// joint unitary U:
//   rho     = U (rho_S (x) rho_E) U^dagger
//   sigma   = rho_S' (x) rho_E,   rho_S' = tr_E rho
//   Sigma   = S(rho || sigma)     (entropy production)
//   Sigma*  = S(sigma || rho)     (its dual)

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/divergences.hpp"
#include "qre/random.hpp"
#include "qre/surrogate.hpp"

namespace qre::thermo {

class ThermoProcess {
public:
    ThermoProcess(DensityMatrix rho_s, DensityMatrix rho_e, ComplexMatrix unitary)
        : rho_s_(std::move(rho_s)), rho_e_(std::move(rho_e)), u_(std::move(unitary)),
          initial_(validate_density(tensor(rho_s_.matrix(), rho_e_.matrix()))),
          rho_(evolve(u_, initial_, rho_s_.dim() * rho_e_.dim())),
          rho_s_prime_(validate_density(partial_trace(rho_.matrix(), dim_s(), dim_e(), Subsystem::System).hermitian_part())),
          rho_e_prime_(validate_density(partial_trace(rho_.matrix(), dim_s(), dim_e(), Subsystem::Environment).hermitian_part())),
          sigma_(validate_density(tensor(rho_s_prime_.matrix(), rho_e_.matrix()))) {}

    std::size_t dim_s() const noexcept { return rho_s_.dim(); }
    std::size_t dim_e() const noexcept { return rho_e_.dim(); }

    const DensityMatrix& rho_s() const noexcept { return rho_s_; }
    const DensityMatrix& rho_e() const noexcept { return rho_e_; }
    const ComplexMatrix& unitary() const noexcept { return u_; }
    const DensityMatrix& initial() const noexcept { return initial_; } // rho_S (x) rho_E
    const DensityMatrix& rho() const noexcept { return rho_; }
    const DensityMatrix& sigma() const noexcept { return sigma_; }
    const DensityMatrix& rho_s_prime() const noexcept { return rho_s_prime_; }
    const DensityMatrix& rho_e_prime() const noexcept { return rho_e_prime_; }

private:
    static DensityMatrix evolve(const ComplexMatrix& u, const DensityMatrix& initial, std::size_t dim) {
        if (u.dim() != dim)
            throw Error(Errc::DimensionMismatch,
                        "unitary of dimension " + std::to_string(u.dim()) + " on a " + std::to_string(dim) + "-dim space");
        if (const double r = max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(dim)); r > 1e-10)
            throw Error(Errc::NotUnitary, "max |U^dagger U - I| = " + std::to_string(r));
        return validate_density((u * initial.matrix() * u.adjoint()).hermitian_part());
    }

    DensityMatrix rho_s_;
    DensityMatrix rho_e_;
    ComplexMatrix u_;
    DensityMatrix initial_;
    DensityMatrix rho_;
    DensityMatrix rho_s_prime_;
    DensityMatrix rho_e_prime_;
    DensityMatrix sigma_;
};

struct EntropyProduction {
    ExtendedReal sigma;             // S(rho || sigma)
    ExtendedReal sigma_star;        // S(sigma || rho)
    ExtendedReal sigma_star_pulled; // S(U^dagger sigma U || rho_S (x) rho_E)

    ExtendedReal symmetric() const { return (sigma + sigma_star).half(); }

    // the dual of the dual is the original
    EntropyProduction dual() const { return {sigma_star, sigma, sigma}; }

    bool routes_agree(double tol = 1e-10) const {
        if (sigma_star.is_infinite() || sigma_star_pulled.is_infinite())
            return sigma_star.is_infinite() == sigma_star_pulled.is_infinite();
        return std::abs(sigma_star.value() - sigma_star_pulled.value()) <= tol;
    }
};

inline EntropyProduction entropy_production(const ThermoProcess& p) {
    EntropyProduction e;
    e.sigma = relative_entropy(p.rho(), p.sigma());
    e.sigma_star = relative_entropy(p.sigma(), p.rho());
    const auto& u = p.unitary();
    const auto pulled = validate_density((u.adjoint() * p.sigma().matrix() * u).hermitian_part());
    e.sigma_star_pulled = relative_entropy(pulled, p.initial());
    return e;
}

/// U(theta; rho, sigma) against f((Sigma + Sigma*)/2) for a joint observable.
inline UncertaintyReport qtur_check(const ThermoProcess& p, const Observable& theta) {
    return full_report(p.rho(), p.sigma(), theta);
}

struct FluxCapacityReport {
    double flux = 0.0;         // Phi = tr((rho_E - rho_E') ln rho_E)
    double chi = 0.0;          // Var_{rho_E}(ln rho_E)
    double chi_prime = 0.0;    // Var_{rho_E'}(ln rho_E)
    double uncertainty = 0.0;  // (chi + chi') / ((1/2) Phi^2)
    ExtendedReal env_symmetric; // S~(rho_E', rho_E)
    ExtendedReal total_symmetric; // (Sigma + Sigma*)/2
    BoundValue f_env;
    BoundValue f_total;
    double b_of_uncertainty = 0.0; // B(2 (chi + chi') / Phi^2)
    ExtendedReal env_sum;   // S(rho_E'||rho_E) + S(rho_E||rho_E')
    ExtendedReal total_sum; // Sigma + Sigma*

    bool uncertainty_above_env_bound = false; // (chi + chi')/((1/2)Phi^2) >= f(S~_E)
    bool env_bound_above_total_bound = false; // f(S~_E) >= f((Sigma + Sigma*)/2)
    bool entropy_above_b = false;             // (Sigma + Sigma*)/2 >= B(...)
    bool total_above_env = false;             // Sigma + Sigma* >= S(E'||E) + S(E||E')

    bool holds() const {
        return uncertainty_above_env_bound && env_bound_above_total_bound && entropy_above_b && total_above_env;
    }
};

namespace detail {

// a >= b - tol, with infinities ordered naturally
inline bool at_least(const ExtendedReal& a, const ExtendedReal& b, double tol) {
    if (a.is_infinite()) return true;
    if (b.is_infinite()) return false;
    return a.value() >= b.value() - tol;
}

} // namespace detail

/// Observable ln rho_E compared between rho_E and rho_E'. Requires both to
/// have full support and a non-vanishing flux.
inline FluxCapacityReport flux_capacity_relation(const ThermoProcess& p, double tol = 1e-9) {
    const auto& e = p.rho_e();
    const auto& e2 = p.rho_e_prime();
    if (e.spectrum().values.front() <= kSupportCutoff || e2.spectrum().values.front() <= kSupportCutoff)
        throw Error(Errc::SupportFailure, "rho_E and rho_E' must have full support");

    const Observable log_e(log_on_support(e));
    FluxCapacityReport r;
    r.flux = expectation(e, log_e) - expectation(e2, log_e);
    if (std::abs(r.flux) <= 1e-9) throw Error(Errc::ZeroFlux, "|Phi| = " + std::to_string(std::abs(r.flux)));
    r.chi = variance(e, log_e);
    r.chi_prime = variance(e2, log_e);
    r.uncertainty = (r.chi + r.chi_prime) / (0.5 * r.flux * r.flux);

    const auto ep = entropy_production(p);
    r.env_sum = relative_entropy(e2, e) + relative_entropy(e, e2);
    r.env_symmetric = r.env_sum.half();
    r.total_sum = ep.sigma + ep.sigma_star;
    r.total_symmetric = r.total_sum.half();
    r.f_env = bounds::f(r.env_symmetric);
    r.f_total = bounds::f(r.total_symmetric);
    r.b_of_uncertainty = bounds::big_b(2.0 * (r.chi + r.chi_prime) / (r.flux * r.flux));

    r.uncertainty_above_env_bound = detail::at_least(ExtendedReal::finite(r.uncertainty), r.f_env, tol);
    r.env_bound_above_total_bound = detail::at_least(r.f_env, r.f_total, tol);
    r.entropy_above_b = detail::at_least(r.total_symmetric, ExtendedReal::finite(r.b_of_uncertainty), tol);
    r.total_above_env = detail::at_least(r.total_sum, r.env_sum, tol);
    return r;
}

struct TrajectoryEnsemble {
    // gamma = (m, nu', n, nu), flattened in that order
    std::size_t dim_s = 0;
    std::size_t dim_e = 0;
    std::vector<double> forward;
    std::vector<double> backward;

    std::size_t index(std::size_t m, std::size_t nu_p, std::size_t n, std::size_t nu) const {
        return ((m * dim_e + nu_p) * dim_s + n) * dim_e + nu;
    }
};

struct TrajectoryResult {
    TrajectoryEnsemble ensemble;
    double mean_entropy_production = 0.0; // <sigma> = D(P_F | P_B)
};

/// Four-measurement trajectories: (m, nu') in the eigenbasis of rho_S' (x) rho_E,
/// U^dagger, then (n, nu) in the eigenbasis of rho_S (x) rho_E. The
/// environment is measured in the same basis at both ends.
inline TrajectoryResult trajectory_dual(const ThermoProcess& p) {
    const std::size_t ds = p.dim_s(), de = p.dim_e();
    if (ds * de > 16) throw Error(Errc::DimensionMismatch, "trajectory enumeration limited to d_S d_E <= 16");

    const auto& s_prime = p.rho_s_prime().spectrum();
    const auto& s_init = p.rho_s().spectrum();
    const auto& env = p.rho_e().spectrum();
    const ComplexMatrix u_dag = p.unitary().adjoint();
    auto weight = [](double x) { return x > kSupportCutoff ? x : 0.0; };

    TrajectoryResult out;
    auto& ens = out.ensemble;
    ens.dim_s = ds;
    ens.dim_e = de;
    ens.forward.assign(ds * de * ds * de, 0.0);
    ens.backward.assign(ds * de * ds * de, 0.0);

    // forward mass landing on final outcomes with zero backward weight
    std::vector<double> stranded(ds * de, 0.0);
    double mean = 0.0;
    for (std::size_t m = 0; m < ds; ++m)
        for (std::size_t nu_p = 0; nu_p < de; ++nu_p) {
            const auto start = tensor(s_prime.vector(m), env.vector(nu_p));
            const auto evolved = u_dag.apply(start);
            const double w_start = weight(s_prime.values[m]) * weight(env.values[nu_p]);
            for (std::size_t n = 0; n < ds; ++n)
                for (std::size_t nu = 0; nu < de; ++nu) {
                    const double amp = std::norm(inner(tensor(s_init.vector(n), env.vector(nu)), evolved));
                    const double w_end = weight(s_init.values[n]) * weight(env.values[nu]);
                    const std::size_t k = ens.index(m, nu_p, n, nu);
                    ens.forward[k] = amp * w_start;
                    ens.backward[k] = amp * w_end;
                    if (ens.forward[k] <= 0.0) continue;
                    if (w_end == 0.0) {
                        stranded[n * de + nu] += ens.forward[k];
                        continue;
                    }
                    mean += ens.forward[k] * (std::log(w_start) - std::log(w_end));
                }
        }
    for (double s : stranded)
        if (s > kSupportLeakTol)
            throw Error(Errc::SupportFailure, "forward trajectories with zero backward probability");
    out.mean_entropy_production = mean;
    return out;
}

// Thermal-like qubit diag(e^{x/2}, e^{-x/2}) / (2 cosh(x/2)), x = beta * omega.
inline DensityMatrix thermal_qubit(double beta_omega) {
    const double a = 1.0 / (1.0 + std::exp(-beta_omega));
    return validate_density(ComplexMatrix::diagonal({a, 1.0 - a}));
}

// exp(-i angle SWAP) = cos(angle) I - i sin(angle) SWAP on two qubits
inline ComplexMatrix partial_swap(double angle) {
    ComplexMatrix u(4);
    const cplx c = std::cos(angle);
    const cplx s = cplx{0.0, -std::sin(angle)};
    const std::size_t perm[4] = {0, 2, 1, 3};
    for (std::size_t k = 0; k < 4; ++k) {
        u(k, k) += c;
        u(perm[k], k) += s;
    }
    return u;
}

inline ThermoProcess random_process(std::size_t ds, std::size_t de, SplitMix64& rng) {
    auto rs = random::density(ds, rng);
    auto re = random::density(de, rng);
    return ThermoProcess(std::move(rs), std::move(re), random::unitary(ds * de, rng));
}

} // namespace qre::thermo
