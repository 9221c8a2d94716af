#pragma once

// Randomized property suites. Each invariant tracks the worst value of a
// residual over all draws and passes iff that worst value stays within its
// tolerance. For inequalities lhs >= rhs the residual is rhs - lhs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/channels.hpp"
#include "qre/classical.hpp"
#include "qre/divergences.hpp"
#include "qre/montecarlo.hpp"
#include "qre/random.hpp"
#include "qre/surrogate.hpp"
#include "qre/thermo.hpp"

namespace qre::verify {

struct InvariantResult {
    std::string name;
    double tolerance = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t checked = 0;
    std::size_t skipped = 0;
    bool failed_hard = false; // a non-numeric check (flag or exception) failed

    bool passed() const { return !failed_hard && checked > 0 && worst <= tolerance; }

    void record(double residual) {
        ++checked;
        if (std::isnan(residual)) {
            failed_hard = true;
            return;
        }
        worst = std::max(worst, residual);
    }
    void record(bool ok) {
        ++checked;
        if (!ok) failed_hard = true;
        worst = std::max(worst, ok ? 0.0 : 1.0);
    }
    void skip() { ++skipped; }
};

struct SuiteResult {
    std::string suite;
    std::deque<InvariantResult> invariants; // add() hands out stable references

    bool passed() const {
        return std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.passed(); });
    }

    InvariantResult& add(std::string name, double tolerance) {
        invariants.push_back(InvariantResult{std::move(name), tolerance});
        return invariants.back();
    }

    const InvariantResult* find(const std::string& name) const {
        for (const auto& r : invariants)
            if (r.name == name) return &r;
        return nullptr;
    }
};

struct Options {
    std::size_t draws = 1000;
    std::uint64_t seed = 7;
    std::size_t min_dim = 2;
    std::size_t max_dim = 4;
};

namespace detail {

inline std::size_t pick_dim(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.next() % (hi - lo + 1));
}

inline double diff(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_infinite() || b.is_infinite())
        return a.is_infinite() == b.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a.value() - b.value());
}

// rhs - lhs for lhs >= rhs, infinities ordered naturally
inline double shortfall(const ExtendedReal& lhs, const ExtendedReal& rhs) {
    if (lhs.is_infinite()) return -std::numeric_limits<double>::infinity();
    if (rhs.is_infinite()) return std::numeric_limits<double>::infinity();
    return rhs.value() - lhs.value();
}

// log-spaced points in [lo, hi]
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
    return g;
}

} // namespace detail

/// Eigensolver, tensor/partial trace and expectation invariants.
inline SuiteResult core_suite(const Options& o) {
    SuiteResult s{"core", {}};
    auto& recon = s.add("eig reconstruction |V diag V^dagger - M|", 1e-10);
    auto& ortho = s.add("eig orthonormality |V^dagger V - I|", 1e-10);
    auto& det = s.add("eig determinism (bit-identical rerun)", 0.0);
    auto& ptr = s.add("partial trace recovers tensor factors", 1e-12);
    auto& lin = s.add("expectation linear in observable", 1e-10);
    SplitMix64 rng(o.seed);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const std::size_t d = detail::pick_dim(rng, 2, 8);
        const auto m = random::hermitian(d, rng).matrix();
        const auto e = eig_hermitian(m);
        recon.record(max_abs_diff(e.reconstruct(), m));
        ortho.record(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(d)));
        const auto e2 = eig_hermitian(m);
        det.record(e2.values == e.values && std::equal(e.vectors.entries().begin(), e.vectors.entries().end(),
                                                       e2.vectors.entries().begin()));

        const std::size_t ds = detail::pick_dim(rng, 2, 3), de = detail::pick_dim(rng, 2, 3);
        const auto a = random::density(ds, rng);
        const auto b = random::density(de, rng);
        const auto ab = tensor(a.matrix(), b.matrix());
        ptr.record(std::max(max_abs_diff(partial_trace(ab, ds, de, Subsystem::System), a.matrix()),
                            max_abs_diff(partial_trace(ab, ds, de, Subsystem::Environment), b.matrix())));

        const auto rho = random::density(d, rng);
        const auto x = random::hermitian(d, rng);
        const auto y = random::hermitian(d, rng);
        const double ca = rng.uniform(-2.0, 2.0), cb = rng.uniform(-2.0, 2.0);
        const Observable combo(x.matrix() * ca + y.matrix() * cb);
        lin.record(std::abs(expectation(rho, combo) - ca * expectation(rho, x) - cb * expectation(rho, y)));
    }
    return s;
}

/// Entropy and divergence invariants, including the coherence split.
inline SuiteResult divergences_suite(const Options& o) {
    SuiteResult s{"divergences", {}};
    auto& klein = s.add("Klein: S(rho||sigma) >= 0", 0.0);
    auto& self = s.add("S(rho||rho) = 0", 1e-10);
    auto& split = s.add("S(rho||sigma) = S(Delta rho||sigma) + C_sigma(rho)", 1e-10);
    auto& decomp = s.add("S~ = S~_cl + (C_rho(sigma) + C_sigma(rho))/2", 1e-10);
    auto& order = s.add("S~_cl <= S~", 1e-10);
    auto& unit = s.add("unitary invariance of S(rho||sigma)", 1e-10);
    SplitMix64 rng(o.seed ^ 0xD1u);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const std::size_t d = detail::pick_dim(rng, o.min_dim, o.max_dim);
        const auto rho = random::density(d, rng);
        const auto sigma = random::density(d, rng);
        const auto srs = relative_entropy(rho, sigma);
        klein.record(-srs.value());
        self.record(relative_entropy(rho, rho).value());
        const auto dephased = relative_entropy(dephase(rho, sigma.spectrum()), sigma);
        split.record(std::abs(srs.value() - dephased.value() - coherence(rho, sigma)));
        const auto st = symmetric_relative_entropy(rho, sigma);
        const auto scl = classical_symmetric(rho, sigma);
        decomp.record(std::abs(st.value() - scl.value() - 0.5 * (coherence(sigma, rho) + coherence(rho, sigma))));
        order.record(scl.value() - st.value());
        const auto u = random::unitary(d, rng);
        const auto rot = [&](const DensityMatrix& m) {
            return validate_density((u * m.matrix() * u.adjoint()).hermitian_part());
        };
        unit.record(detail::diff(relative_entropy(rot(rho), rot(sigma)), srs));
    }
    return s;
}

/// Scalar bound machinery on deterministic grids; `draws` sets the grid size.
inline SuiteResult bounds_suite(const Options& o) {
    SuiteResult s{"bounds", {}};
    auto& gh = s.add("g(h(x)) = x on [1e-3, 20]", 1e-10);
    auto& hg = s.add("h(g(y)) = y on [1e-3, 20]", 1e-12);
    auto& bf = s.add("B(f(x)) = x on [1e-3, 20]", 1e-10);
    auto& forms = s.add("both closed forms of B agree on [1e-2, 1e4]", 1e-12);
    auto& inc = s.add("h strictly increasing", 0.0);
    auto& dec = s.add("f strictly decreasing", 0.0);
    auto& sat = s.add("f(h(eps)) sinh^2(eps/2) = 1 on [1e-3, 20]", 1e-10);
    auto& fam = s.add("saturating family |U - f(S~)|", 1e-8);
    auto& fam_s = s.add("saturating family |S~ - h(eps)|", 1e-10);
    const std::size_t n = std::max<std::size_t>(o.draws, 2);
    for (double x : detail::log_grid(1e-3, 20.0, n)) {
        gh.record(std::abs(bounds::g(bounds::h(x)) - x));
        hg.record(std::abs(bounds::h(bounds::g(x)) - x));
        bf.record(std::abs(bounds::big_b(bounds::f(x).value()) - x));
        inc.record(bounds::h(x) - bounds::h(x + 1e-6) >= 0.0 ? 1.0 : 0.0);
        dec.record(bounds::f(x + 1e-6).value() - bounds::f(x).value() >= 0.0 ? 1.0 : 0.0);
        const double sh = std::sinh(0.5 * x);
        sat.record(std::abs(bounds::f(bounds::h(x)).value() * sh * sh - 1.0));
    }
    for (double x : detail::log_grid(1e-2, 1e4, n))
        forms.record(std::abs(bounds::big_b(x) - bounds::big_b_atanh_form(x)));
    const auto eps = detail::log_grid(0.05, 8.0, std::min<std::size_t>(n, 200));
    for (const auto& p : mc::saturation_family(eps, 1.0)) {
        fam.record(std::abs(p.gap));
        fam_s.record(std::abs(p.s_tilde - bounds::h(p.eps)));
    }
    return s;
}

/// Link-by-link check of the surrogate construction on random triples.
inline SuiteResult surrogate_suite(const Options& o) {
    SuiteResult s{"surrogate", {}};
    auto& norm = s.add("P and Q sum to 1", 1e-10);
    auto& mean_p = s.add("<Theta>_P = tr(rho theta)", 1e-10);
    auto& mean_q = s.add("<Theta>_Q = tr(sigma theta)", 1e-10);
    auto& mom_p = s.add("tr(rho theta^2) >= <|Theta|^2>_P", 1e-9);
    auto& mom_q = s.add("tr(sigma theta^2) >= <|Theta|^2>_Q", 1e-9);
    auto& unc = s.add("U >= surrogate uncertainty (relative)", 1e-9);
    auto& kl_pq = s.add("D(P|Q) = S(rho||sigma)", 1e-10);
    auto& kl_qp = s.add("D(Q|P) = S(sigma||rho)", 1e-10);
    auto& kl_sym = s.add("D~(P,Q) = S~(rho,sigma)", 1e-10);
    auto& cl_bound = s.add("surrogate uncertainty >= f(D~(P,Q))", 1e-9);
    auto& main = s.add("U >= f(S~)", 1e-9);
    auto& sym = s.add("U(theta;rho,sigma) = U(theta;sigma,rho)", 1e-10);
    SplitMix64 rng(o.seed ^ 0x5Au);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const std::size_t d = detail::pick_dim(rng, o.min_dim, o.max_dim);
        const auto rho = random::density(d, rng);
        const auto sigma = random::density(d, rng);
        const auto theta = random::hermitian(d, rng);
        const auto sur = build_surrogate(rho, sigma, theta);
        double sp = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < sur.p.size(); ++i) {
            sp += sur.p[i];
            sq += sur.q[i];
        }
        norm.record(std::max(std::abs(sp - 1.0), std::abs(sq - 1.0)));
        mean_p.record(std::abs(sur.mean_p() - cplx{expectation(rho, theta), 0.0}));
        mean_q.record(std::abs(sur.mean_q() - cplx{expectation(sigma, theta), 0.0}));
        const auto sq_theta = theta.squared();
        mom_p.record(sur.second_moment_p() - expectation(rho, sq_theta));
        mom_q.record(sur.second_moment_q() - expectation(sigma, sq_theta));
        const auto [dpq, dqp] = surrogate_kl(sur);
        kl_pq.record(detail::diff(dpq, relative_entropy(rho, sigma)));
        kl_qp.record(detail::diff(dqp, relative_entropy(sigma, rho)));
        kl_sym.record(detail::diff((dpq + dqp).half(), symmetric_relative_entropy(rho, sigma)));
        if (std::abs(expectation(rho, theta) - expectation(sigma, theta)) <= kMeanGapTol) {
            unc.skip();
            cl_bound.skip();
            main.skip();
            sym.skip();
            continue;
        }
        const auto r = full_report(rho, sigma, theta);
        unc.record((r.u_classical - r.u_quantum) / std::max(1.0, r.u_quantum));
        cl_bound.record(detail::shortfall(ExtendedReal::finite(r.u_classical), bounds::f((dpq + dqp).half())));
        main.record(detail::shortfall(ExtendedReal::finite(r.u_quantum), r.bound));
        sym.record(std::abs(uncertainty_u(sigma, rho, theta) - r.u_quantum) / std::max(1.0, r.u_quantum));
    }
    return s;
}

inline classical::ClassicalEnsemble random_ensemble(SplitMix64& rng, std::size_t size) {
    std::vector<double> p(size), q(size);
    std::vector<cplx> th(size);
    double tp = 0.0, tq = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
        p[s] = rng.uniform();
        q[s] = rng.uniform();
        tp += p[s];
        tq += q[s];
    }
    for (std::size_t s = 0; s < size; ++s) {
        p[s] /= tp;
        q[s] /= tq;
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        th[s] = cplx{re, im};
    }
    return classical::ClassicalEnsemble(std::move(p), std::move(q), std::move(th));
}

/// Complex-valued classical uncertainty relation, link by link.
inline SuiteResult classical_suite(const Options& o) {
    SuiteResult s{"classical", {}};
    auto& ident = s.add("4 Var_mix = 2 Var_P + 2 Var_Q + |gap|^2", 1e-12);
    auto& shift = s.add("shifted gap independent of c", 1e-12);
    auto& cs = s.add("|gap|^2/4 <= Var_mix * contrast", 1e-12);
    auto& tanh_b = s.add("contrast <= tanh^2(g(D~)/2)", 1e-10);
    auto& tur = s.add("classical uncertainty >= f(D~)", 1e-9);
    auto& mix = s.add("mean_mix = (mean_P + mean_Q)/2", 1e-12);
    auto& exch = s.add("exchange pair saturates", 1e-9);
    SplitMix64 rng(o.seed ^ 0xC1u);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const auto e = random_ensemble(rng, detail::pick_dim(rng, 2, 8));
        const auto m = classical::mixture_stats(e);
        ident.record(classical::variance_decomposition(e).residual);
        const auto chain = classical::cauchy_schwarz_chain(e);
        shift.record(chain.shift_spread);
        cs.record(chain.lhs - chain.rhs);
        const auto tb = classical::tanh_bound(e);
        tanh_b.record(tb.contrast - tb.bound);
        mix.record(std::abs(m.mean_mix - 0.5 * (m.mean_p + m.mean_q)));
        if (std::abs(m.mean_p - m.mean_q) <= kMeanGapTol) {
            tur.skip();
            continue;
        }
        const auto t = classical::classical_tur(e);
        tur.record(detail::shortfall(ExtendedReal::finite(t.uncertainty), t.bound));
    }
    for (double eps : detail::log_grid(0.05, 8.0, 50)) {
        const auto t = classical::classical_tur(classical::exchange_pair(eps, 0.7));
        exch.record(std::abs(t.uncertainty - t.bound.value()) / std::max(1.0, t.bound.value()));
    }
    return s;
}

/// Data processing and the fixed-point bound.
inline SuiteResult channels_suite(const Options& o, std::size_t steps = 50) {
    SuiteResult s{"channels", {}};
    auto& dpi = s.add("S~(E rho, E sigma) <= S~(rho, sigma)", 1e-10);
    auto& dpi_f = s.add("f(S~ after) >= f(S~ before)", 1e-9);
    auto& unit = s.add("unitary channel preserves S~", 1e-10);
    auto& deph = s.add("full dephasing strictly lowers S~ of coherent sampler pairs", 0.0);
    auto& depol = s.add("fixed-point bound, depolarizing", 1e-9);
    auto& damp = s.add("fixed-point bound, amplitude damping", 1e-9);
    SplitMix64 rng(o.seed ^ 0xCAu);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const std::size_t d = detail::pick_dim(rng, o.min_dim, std::min<std::size_t>(o.max_dim, 3));
        const auto ch = KrausChannel::random(d, detail::pick_dim(rng, 1, 4), rng);
        const auto rho = random::density(d, rng);
        const auto sigma = random::density(d, rng);
        const auto r = dpi_margin(ch, rho, sigma);
        dpi.record(detail::shortfall(r.before, r.after));
        dpi_f.record(detail::shortfall(r.f_after, r.f_before) / std::max(1.0, r.f_before.value()));
        const auto u = dpi_margin(KrausChannel::unitary(random::unitary(d, rng)), rho, sigma);
        unit.record(detail::diff(u.before, u.after));

        SplitMix64 sub = substream(o.seed, k);
        const auto [params, t] = mc::sample_triple(sub);
        if (params.abs_c_sq > 1e-6) {
            const auto dd = dpi_margin(KrausChannel::full_dephasing(2), t.rho, t.sigma);
            deph.record(dd.margin() > 0.0 ? 0.0 : 1.0);
        } else {
            deph.skip();
        }
    }

    const auto zero = validate_density(ComplexMatrix::diagonal({1.0, 0.0}));
    const auto z = Observable(pauli::z());
    for (double p : {0.05, 0.1, 0.2, 0.3}) {
        const auto star = validate_density(ComplexMatrix::identity(2) * 0.5);
        const auto rep = fixed_point_bound(KrausChannel::depolarizing(2, p), zero, star, z, steps);
        depol.record(-rep.min_margin);
        if (!rep.holds) depol.failed_hard = true;
    }
    for (double gamma : {0.05, 0.1, 0.3}) {
        const auto one = validate_density(ComplexMatrix::diagonal({0.3, 0.7}));
        const auto rep = fixed_point_bound(KrausChannel::amplitude_damping(gamma), one, zero, z, steps);
        damp.record(rep.bound.is_finite() ? -rep.min_margin : 0.0);
        if (!rep.holds) damp.failed_hard = true;
    }
    return s;
}

/// Entropy production, its dual, the trajectory identity and the flux chain.
inline SuiteResult thermo_suite(const Options& o) {
    SuiteResult s{"thermo", {}};
    auto& pos = s.add("Sigma >= 0", 1e-10);
    auto& pos_star = s.add("Sigma* >= 0", 1e-10);
    auto& routes = s.add("Sigma* = S(U^dagger sigma U || rho_S x rho_E)", 1e-10);
    auto& dual = s.add("dual of the dual is Sigma", 1e-10);
    auto& traj = s.add("<sigma> = D(P_F|P_B) = Sigma*", 1e-8);
    auto& traj_norm = s.add("P_F and P_B sum to 1", 1e-10);
    auto& qtur = s.add("U(theta; rho, sigma) >= f((Sigma + Sigma*)/2)", 1e-9);
    auto& chain1 = s.add("(chi + chi')/(Phi^2/2) >= f(S~(rho_E', rho_E))", 1e-9);
    auto& chain2 = s.add("f(S~(rho_E', rho_E)) >= f((Sigma + Sigma*)/2)", 1e-9);
    auto& chain3 = s.add("(Sigma + Sigma*)/2 >= B(2(chi + chi')/Phi^2)", 1e-9);
    auto& chain4 = s.add("Sigma + Sigma* >= S(rho_E'||rho_E) + S(rho_E||rho_E')", 1e-9);
    SplitMix64 rng(o.seed ^ 0x7Eu);
    for (std::size_t k = 0; k < o.draws; ++k) {
        const auto p = thermo::random_process(2, 2, rng);
        const auto ep = thermo::entropy_production(p);
        pos.record(-ep.sigma.value());
        pos_star.record(-ep.sigma_star.value());
        routes.record(detail::diff(ep.sigma_star, ep.sigma_star_pulled));
        dual.record(detail::diff(ep.dual().dual().sigma, relative_entropy(p.rho(), p.sigma())));

        const auto tr = thermo::trajectory_dual(p);
        traj.record(std::abs(tr.mean_entropy_production - ep.sigma_star.value()));
        double f_sum = 0.0, b_sum = 0.0;
        for (std::size_t i = 0; i < tr.ensemble.forward.size(); ++i) {
            f_sum += tr.ensemble.forward[i];
            b_sum += tr.ensemble.backward[i];
        }
        traj_norm.record(std::max(std::abs(f_sum - 1.0), std::abs(b_sum - 1.0)));

        const auto theta = random::hermitian(4, rng);
        if (std::abs(expectation(p.rho(), theta) - expectation(p.sigma(), theta)) <= kMeanGapTol) {
            qtur.skip();
        } else {
            const auto r = thermo::qtur_check(p, theta);
            qtur.record(detail::shortfall(ExtendedReal::finite(r.u_quantum), r.bound));
        }

        try {
            const auto fc = thermo::flux_capacity_relation(p);
            chain1.record(detail::shortfall(ExtendedReal::finite(fc.uncertainty), fc.f_env));
            chain2.record(detail::shortfall(fc.f_env, fc.f_total));
            chain3.record(detail::shortfall(fc.total_symmetric, ExtendedReal::finite(fc.b_of_uncertainty)));
            chain4.record(detail::shortfall(fc.total_sum, fc.env_sum));
        } catch (const Error& e) {
            if (e.code() != Errc::ZeroFlux && e.code() != Errc::SupportFailure) throw;
            chain1.skip();
            chain2.skip();
            chain3.skip();
            chain4.skip();
        }
    }
    return s;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core", "divergences", "bounds", "surrogate",
                                                "classical", "channels", "thermo"};
    return names;
}

inline bool is_suite(const std::string& name) {
    return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

inline std::vector<SuiteResult> run(const std::string& name, const Options& o) {
    if (!is_suite(name)) throw Error(Errc::NonPositiveInput, "unknown suite '" + name + "'");
    const std::vector<std::pair<std::string, std::function<SuiteResult(const Options&)>>> table{
        {"core", core_suite},           {"divergences", divergences_suite},
        {"bounds", bounds_suite},       {"surrogate", surrogate_suite},
        {"classical", classical_suite}, {"channels", [](const Options& opt) { return channels_suite(opt); }},
        {"thermo", thermo_suite},
    };
    std::vector<SuiteResult> out;
    for (const auto& [n, fn] : table)
        if (name == "all" || name == n) out.push_back(fn(o));
    return out;
}

} // namespace qre::verify
