#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qre/bounds.hpp"
#include "qre/divergences.hpp"
#include "qre/random.hpp"
#include "qre/surrogate.hpp"

namespace qre {

/// CPTP map in Kraus form: rho -> sum_k K_k rho K_k^dagger, with
/// sum_k K_k^dagger K_k = I to 1e-10 entrywise.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw Error(Errc::IncompleteKraus, "no Kraus operators");
        const std::size_t d = ops_.front().dim();
        ComplexMatrix sum(d);
        for (const auto& k : ops_) {
            if (k.dim() != d) throw Error(Errc::DimensionMismatch, "Kraus operators of different dimension");
            sum += k.adjoint() * k;
        }
        if (const double r = max_abs_diff(sum, ComplexMatrix::identity(d)); r > 1e-10)
            throw Error(Errc::IncompleteKraus, "max |sum K^dagger K - I| = " + std::to_string(r));
    }

    std::size_t dim() const noexcept { return ops_.front().dim(); }
    const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }

    static KrausChannel identity(std::size_t d) { return KrausChannel({ComplexMatrix::identity(d)}); }

    static KrausChannel unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

    // projectors onto the computational basis
    static KrausChannel full_dephasing(std::size_t d) {
        std::vector<ComplexMatrix> ops;
        for (std::size_t k = 0; k < d; ++k) {
            ComplexMatrix p(d);
            p(k, k) = 1.0;
            ops.push_back(std::move(p));
        }
        return KrausChannel(std::move(ops));
    }

    /// rho -> (1 - p) rho + p I/d, through the d^2 Weyl operators X^a Z^b.
    static KrausChannel depolarizing(std::size_t d, double p) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::NonPositiveInput, "depolarizing p must lie in [0, 1]");
        const double dd = static_cast<double>(d);
        std::vector<ComplexMatrix> ops;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const double w = (a == 0 && b == 0) ? std::sqrt(1.0 - p + p / (dd * dd)) : std::sqrt(p) / dd;
                ComplexMatrix op(d);
                for (std::size_t k = 0; k < d; ++k) {
                    // X^a Z^b |k> = omega^{bk} |k + a>
                    const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * k) / dd;
                    op((k + a) % d, k) = w * std::polar(1.0, angle);
                }
                ops.push_back(std::move(op));
            }
        return KrausChannel(std::move(ops));
    }

    // qubit amplitude damping toward |0><0|
    static KrausChannel amplitude_damping(double gamma) {
        if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(Errc::NonPositiveInput, "gamma must lie in [0, 1]");
        return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                             ComplexMatrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}});
    }

    // Random channel with `rank` Kraus operators from a random (rank*d) x d isometry.
    static KrausChannel random(std::size_t d, std::size_t rank, SplitMix64& rng) {
        const auto cols = random::isometry_columns(rank * d, d, rng);
        std::vector<ComplexMatrix> ops;
        for (std::size_t k = 0; k < rank; ++k) {
            ComplexMatrix op(d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) op(r, c) = cols[c][k * d + r];
            ops.push_back(std::move(op));
        }
        return KrausChannel(std::move(ops));
    }

private:
    std::vector<ComplexMatrix> ops_;
};

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim())
        throw Error(Errc::DimensionMismatch, "channel acts on dimension " + std::to_string(ch.dim()) + ", state has "
                                                 + std::to_string(rho.dim()));
    ComplexMatrix out(rho.dim());
    for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
    return validate_density(out.hermitian_part());
}

struct DpiReport {
    ExtendedReal before; // S~(rho, sigma)
    ExtendedReal after;  // S~(E(rho), E(sigma))
    BoundValue f_before;
    BoundValue f_after;
    bool holds = false;  // after <= before + 1e-10

    // before - after; +inf when only `before` is infinite
    double margin() const {
        if (before.is_infinite()) return after.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
        if (after.is_infinite()) return -std::numeric_limits<double>::infinity();
        return before.value() - after.value();
    }
};

inline DpiReport dpi_margin(const KrausChannel& ch, const DensityMatrix& rho, const DensityMatrix& sigma) {
    rho.matrix().require_same_dim(sigma.matrix());
    DpiReport r;
    r.before = symmetric_relative_entropy(rho, sigma);
    r.after = symmetric_relative_entropy(apply_channel(ch, rho), apply_channel(ch, sigma));
    r.f_before = bounds::f(r.before);
    r.f_after = bounds::f(r.after);
    r.holds = r.before.is_infinite() || (r.after.is_finite() && r.after.value() <= r.before.value() + 1e-10);
    return r;
}

struct FixedPointReport {
    BoundValue bound;        // f(S~(rho(0), rho*)), constant in time
    std::vector<double> u;   // U(theta; rho(t), rho*) per step; NaN where skipped
    std::size_t skipped = 0; // steps with equal means
    double min_margin = std::numeric_limits<double>::infinity();
    bool holds = true;
};

/// Iterates rho(t+1) = E(rho(t)) for t = 0..steps and checks
/// U(theta; rho(t), rho*) >= f(S~(rho(0), rho*)) at every step.
inline FixedPointReport fixed_point_bound(const KrausChannel& ch, const DensityMatrix& rho0,
                                          const DensityMatrix& rho_star, const Observable& theta, std::size_t steps,
                                          double tol = 1e-9) {
    if (const double r = max_abs_diff(apply_channel(ch, rho_star).matrix(), rho_star.matrix()); r > 1e-8)
        throw Error(Errc::NotFixedPoint, "max |E(rho*) - rho*| = " + std::to_string(r));
    FixedPointReport rep;
    rep.bound = bounds::f(symmetric_relative_entropy(rho0, rho_star));
    DensityMatrix rho = rho0;
    for (std::size_t t = 0; t <= steps; ++t) {
        if (std::abs(expectation(rho, theta) - expectation(rho_star, theta)) <= kMeanGapTol) {
            ++rep.skipped;
            rep.u.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            const double u = uncertainty_u(rho, rho_star, theta);
            rep.u.push_back(u);
            const double margin = rep.bound.is_infinite() ? -std::numeric_limits<double>::infinity() : u - rep.bound.value();
            rep.min_margin = std::min(rep.min_margin, margin);
            if (margin < -tol) rep.holds = false;
        }
        if (t < steps) rho = apply_channel(ch, rho);
    }
    return rep;
}

} // namespace qre
