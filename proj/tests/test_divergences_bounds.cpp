#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <limits>

#include "qre/bounds.hpp"
#include "qre/divergences.hpp"
#include "qre/random.hpp"

using namespace qre;
using Catch::Approx;

namespace {

DensityMatrix diag(std::initializer_list<double> v) { return validate_density(ComplexMatrix::diagonal(v)); }

std::optional<Errc> code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// Reference values, 40-digit mpmath.
constexpr double kEntropy73 = 0.61086430205489346303;      // H(0.7, 0.3)
constexpr double kRel73Half = 0.082282878505051846392;     // S(diag(.7,.3) || I/2)
constexpr double kRelHalf73 = 0.08717669357238887635;      // S(I/2 || diag(.7,.3))
constexpr double kG1 = 1.543404638418208448;               // g(1)
constexpr double kF1 = 1.3820978778908407606;              // f(1)
constexpr double kB1 = 1.2464504802804610268;              // B(1)
constexpr double kB3 = 0.5493061443340548457;              // B(3) = ln(3)/2

} // namespace

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(diag({1.0, 0.0})) == 0.0);
    CHECK(von_neumann_entropy(diag({0.5, 0.5})) == Approx(std::log(2.0)).margin(1e-15));
    CHECK(von_neumann_entropy(diag({0.7, 0.3})) == Approx(kEntropy73).margin(1e-15));
    CHECK(von_neumann_entropy(validate_density(ComplexMatrix::identity(4) * 0.25)) ==
          Approx(std::log(4.0)).margin(1e-14));
}

TEST_CASE("relative entropy reference values") {
    const auto half = diag({0.5, 0.5});
    const auto p = diag({0.7, 0.3});
    CHECK(relative_entropy(p, half).value() == Approx(kRel73Half).margin(1e-14));
    CHECK(relative_entropy(half, p).value() == Approx(kRelHalf73).margin(1e-14));
    CHECK(symmetric_relative_entropy(p, half).value() == Approx(0.5 * (kRel73Half + kRelHalf73)).margin(1e-14));
    CHECK(relative_entropy(p, p).value() == Approx(0.0).margin(1e-14));
}

TEST_CASE("relative entropy is infinite off support") {
    const auto pure0 = diag({1.0, 0.0});
    const auto pure1 = diag({0.0, 1.0});
    const auto mixed = diag({0.5, 0.5});
    CHECK(relative_entropy(mixed, pure0).is_infinite());
    CHECK(relative_entropy(pure0, mixed).value() == Approx(std::log(2.0)).margin(1e-15));
    CHECK(relative_entropy(pure0, pure1).is_infinite());
    CHECK(symmetric_relative_entropy(pure0, mixed).is_infinite());
    CHECK(bounds::f(symmetric_relative_entropy(pure0, mixed)).value() == 0.0);
}

TEST_CASE("relative entropy is unitarily invariant and matches the commuting formula") {
    SplitMix64 rng(31);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 2 + k % 3;
        const auto rho = random::density(d, rng);
        const auto sigma = random::density(d, rng);
        const auto u = random::unitary(d, rng);
        const auto rot = [&](const DensityMatrix& x) {
            return validate_density((u * x.matrix() * u.adjoint()).hermitian_part());
        };
        const double s = relative_entropy(rho, sigma).value();
        CHECK(s >= -1e-12);
        CHECK(relative_entropy(rot(rho), rot(sigma)).value() == Approx(s).margin(1e-10));
    }
    // diagonal pairs reduce to the KL divergence of their weights
    for (int k = 0; k < 50; ++k) {
        const double a = rng.uniform(0.01, 0.99), b = rng.uniform(0.01, 0.99);
        const double kl = a * std::log(a / b) + (1 - a) * std::log((1 - a) / (1 - b));
        CHECK(relative_entropy(diag({a, 1 - a}), diag({b, 1 - b})).value() == Approx(kl).margin(1e-13));
    }
}

TEST_CASE("dephasing and coherence") {
    SplitMix64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 2 + k % 3;
        const auto rho = random::density(d, rng);
        const auto sigma = random::density(d, rng);
        const auto dephased = dephase(rho, sigma.spectrum());
        CHECK(max_abs_diff(dephase(dephased, sigma.spectrum()).matrix(), dephased.matrix()) <= 1e-12);
        CHECK(coherence(rho, sigma) >= 0.0);
        const double s_quantum = symmetric_relative_entropy(rho, sigma).value();
        const double s_classical = classical_symmetric(rho, sigma).value();
        CHECK(s_classical <= s_quantum + 1e-10);
        // S(rho||sigma) = S(Delta rho||sigma) + C_sigma(rho)
        CHECK(relative_entropy(dephased, sigma).value() + coherence(rho, sigma) ==
              Approx(relative_entropy(rho, sigma).value()).margin(1e-10));
    }
    const auto z = diag({0.7, 0.3});
    const auto plus = validate_density(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(max_abs_diff(dephase(plus, z.spectrum()).matrix(), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
    CHECK(coherence(plus, z) == Approx(std::log(2.0)).margin(1e-14));
    CHECK(coherence(z, z) == Approx(0.0).margin(1e-15));
}

TEST_CASE("h, g, f, B reference values") {
    CHECK(bounds::h(0.0) == 0.0);
    CHECK(bounds::h(1.0) == Approx(std::tanh(0.5)).margin(1e-16));
    CHECK(bounds::g(0.0) == 0.0);
    CHECK(bounds::g(1.0) == Approx(kG1).margin(1e-13));
    CHECK(bounds::f(1.0).value() == Approx(kF1).margin(1e-12));
    CHECK(bounds::big_b(1.0) == Approx(kB1).margin(1e-14));
    CHECK(bounds::big_b(3.0) == Approx(kB3).margin(1e-14));
    CHECK(bounds::big_b_atanh_form(3.0) == Approx(kB3).margin(1e-14));
    CHECK(bounds::big_b(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("f limits and extended arguments") {
    CHECK(bounds::f(0.0).is_infinite());
    CHECK(bounds::f(ExtendedReal::infinity()).value() == 0.0);
    CHECK(bounds::f(1e-20).is_finite());
    CHECK(bounds::f(1e-20).value() > 1e18);
    CHECK(bounds::g(std::numeric_limits<double>::infinity()) == std::numeric_limits<double>::infinity());
}

TEST_CASE("bound functions reject out-of-domain input") {
    CHECK(code_of([] { bounds::h(-1.0); }) == Errc::NegativeInput);
    CHECK(code_of([] { bounds::g(-1e-3); }) == Errc::NegativeInput);
    CHECK(code_of([] { bounds::f(-0.5); }) == Errc::NegativeInput);
    CHECK(code_of([] { bounds::big_b(0.0); }) == Errc::NonPositiveInput);
    CHECK(code_of([] { bounds::big_b(-2.0); }) == Errc::NonPositiveInput);
    CHECK(code_of([] { ExtendedReal::finite(-1e-6); }) == Errc::NumericalResidual);
    CHECK(ExtendedReal::finite(-5e-11).value() == 0.0);
}

TEST_CASE("f(h(eps)) = 1/sinh^2(eps/2)") {
    for (double e : {0.1, 0.5, 1.0, 2.0, 4.0, 10.0}) {
        const double s = std::sinh(0.5 * e);
        CHECK(bounds::f(bounds::h(e)).value() * s * s == Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("h and g invert each other; f and B invert each other") {
    for (double x = 1e-3; x <= 20.0; x *= 1.1) {
        CHECK(bounds::g(bounds::h(x)) == Approx(x).margin(1e-10));
        CHECK(bounds::h(bounds::g(x)) == Approx(x).margin(1e-10));
        CHECK(bounds::big_b(bounds::f(x).value()) == Approx(x).margin(1e-10));
    }
    for (double x = 1e-2; x <= 1e4; x *= 1.3)
        CHECK(bounds::big_b(x) == Approx(bounds::big_b_atanh_form(x)).epsilon(1e-10));
}

TEST_CASE("h increases and f decreases") {
    double prev_h = -1.0, prev_f = std::numeric_limits<double>::infinity();
    for (double x = 1e-3; x <= 20.0; x *= 1.05) {
        const double hx = bounds::h(x);
        const double fx = bounds::f(x).value();
        CHECK(hx > prev_h);
        CHECK(fx < prev_f);
        CHECK(fx > 0.0);
        prev_h = hx;
        prev_f = fx;
    }
}
