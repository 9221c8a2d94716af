#pragma once

// Random qubit experiment: rho diagonal, sigma with coherence C, and theta
// with off-diagonal D, compared against the bound f(S~) and the coherence-
// blind bound f(S~_cl).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/divergences.hpp"
#include "qre/random.hpp"
#include "qre/surrogate.hpp"

namespace qre::mc {

struct SampleParams {
    double p1 = 0.0;
    double q1 = 0.0;
    double abs_c_sq = 0.0; // |C|^2 in [0, q1 (1 - q1)]
    double phi1 = 0.0;
    double omega = 0.0;
    double abs_d_sq = 0.0; // |D|^2 in [0, 1]
    double phi2 = 0.0;
};

struct Triple {
    DensityMatrix rho;
    DensityMatrix sigma;
    Observable theta;
};

// rho = diag(1 - p1, p1); sigma = [[1 - q1, C], [C*, q1]]; theta = [[-omega, D], [D*, omega]]
inline Triple make_triple(const SampleParams& s) {
    const cplx c = std::polar(std::sqrt(s.abs_c_sq), s.phi1);
    const cplx d = std::polar(std::sqrt(s.abs_d_sq), s.phi2);
    return Triple{
        validate_density(ComplexMatrix::diagonal({1.0 - s.p1, s.p1})),
        validate_density(ComplexMatrix{{1.0 - s.q1, c}, {std::conj(c), s.q1}}),
        Observable(ComplexMatrix{{-s.omega, d}, {std::conj(d), s.omega}}),
    };
}

inline SampleParams sample_params(SplitMix64& rng) {
    SampleParams s;
    s.p1 = rng.uniform();
    s.q1 = rng.uniform();
    s.abs_c_sq = rng.uniform(0.0, s.q1 * (1.0 - s.q1));
    s.phi1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.omega = rng.uniform();
    s.abs_d_sq = rng.uniform();
    s.phi2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return s;
}

/// Draws (params, triple). Draws whose sigma fails validation are replaced
/// by fresh draws from the same stream.
inline std::pair<SampleParams, Triple> sample_triple(SplitMix64& rng) {
    for (;;) {
        const auto s = sample_params(rng);
        try {
            return {s, make_triple(s)};
        } catch (const Error&) {
        }
    }
}

struct RunRecord {
    std::uint64_t index = 0;
    SampleParams params;
    double u = 0.0;
    ExtendedReal s_tilde;
    ExtendedReal s_cl;
    BoundValue bound;
    BoundValue bound_cl;
    bool satisfied = false;          // u >= f(S~) - 1e-9
    bool classical_violated = false; // u < f(S~_cl) - 1e-9
    std::uint64_t seed = 0;          // substream seed
    std::uint32_t redraws = 0;       // draws discarded for equal means
};

inline constexpr double kBoundTol = 1e-9;

inline bool bound_satisfied(double u, const BoundValue& b) { return b.is_finite() && u >= b.value() - kBoundTol; }

inline RunRecord evaluate_record(std::uint64_t index, std::uint64_t seed) {
    RunRecord r;
    r.index = index;
    r.seed = substream_seed(seed, index);
    SplitMix64 rng(r.seed);
    for (;;) {
        auto [params, t] = sample_triple(rng);
        const double gap = expectation(t.rho, t.theta) - expectation(t.sigma, t.theta);
        if (std::abs(gap) <= kMeanGapTol) {
            ++r.redraws;
            continue;
        }
        r.params = params;
        r.u = uncertainty_u(t.rho, t.sigma, t.theta);
        r.s_tilde = symmetric_relative_entropy(t.rho, t.sigma);
        r.s_cl = classical_symmetric(t.rho, t.sigma);
        r.bound = bounds::f(r.s_tilde);
        r.bound_cl = bounds::f(r.s_cl);
        r.satisfied = bound_satisfied(r.u, r.bound);
        r.classical_violated = !bound_satisfied(r.u, r.bound_cl);
        return r;
    }
}

struct ExperimentSummary {
    std::size_t records = 0;
    std::size_t violations = 0;
    std::size_t classical_violations = 0;
    std::size_t redraws = 0;
    double min_gap = 0.0; // min over records of u - f(S~)
};

inline ExperimentSummary summarize(const std::vector<RunRecord>& rs) {
    ExperimentSummary s;
    s.records = rs.size();
    s.min_gap = rs.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const auto& r : rs) {
        s.violations += r.satisfied ? 0 : 1;
        s.classical_violations += r.classical_violated ? 1 : 0;
        s.redraws += r.redraws;
        s.min_gap = std::min(s.min_gap, r.u - r.bound.value());
    }
    return s;
}

/// n records for indices 0..n-1; record k depends only on (seed, k), so the
/// result is identical for any thread count.
inline std::vector<RunRecord> run_experiment(std::size_t n, std::uint64_t seed, unsigned threads = 1) {
    if (n == 0) throw Error(Errc::NonPositiveInput, "n must be at least 1");
    std::vector<RunRecord> out(n);
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(n, 256)));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) out[k] = evaluate_record(k, seed);
    };
    if (threads == 1) {
        work(0, n);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }
    return out;
}

struct SaturationPoint {
    double eps = 0.0;
    double omega = 0.0;
    double u = 0.0;
    double s_tilde = 0.0;
    double bound = 0.0;       // f(S~)
    double gap = 0.0;         // u - f(S~)
    double mean_rho = 0.0;    // tr(rho theta)
    double mean_sigma = 0.0;  // tr(sigma theta)
};

// rho = diag(e^{-eps/2}, e^{eps/2}) / (2 cosh(eps/2)) in the (|0>, |1>) basis,
// sigma with exchanged weights, theta = omega (|1><1| - |0><0|).
inline Triple saturating_triple(double eps, double omega) {
    if (!(eps > 0.0)) throw Error(Errc::NonPositiveEpsilon, "epsilon must be positive, got " + std::to_string(eps));
    if (!(omega > 0.0)) throw Error(Errc::NonPositiveInput, "omega must be positive, got " + std::to_string(omega));
    const double up = 1.0 / (1.0 + std::exp(-eps)); // e^{eps/2} / (2 cosh(eps/2))
    const double down = 1.0 - up;
    return Triple{
        validate_density(ComplexMatrix::diagonal({down, up})),
        validate_density(ComplexMatrix::diagonal({up, down})),
        Observable(ComplexMatrix::diagonal({-omega, omega})),
    };
}

inline std::vector<SaturationPoint> saturation_family(std::span<const double> eps_grid, double omega = 1.0) {
    std::vector<SaturationPoint> out;
    out.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        const auto t = saturating_triple(eps, omega);
        SaturationPoint p;
        p.eps = eps;
        p.omega = omega;
        p.u = uncertainty_u(t.rho, t.sigma, t.theta);
        p.s_tilde = symmetric_relative_entropy(t.rho, t.sigma).value();
        p.bound = bounds::f(p.s_tilde).value();
        p.gap = p.u - p.bound;
        p.mean_rho = expectation(t.rho, t.theta);
        p.mean_sigma = expectation(t.sigma, t.theta);
        out.push_back(p);
    }
    return out;
}

} // namespace qre::mc
