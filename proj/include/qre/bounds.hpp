#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qre/extended_real.hpp"

namespace qre::bounds {

// x tanh(x/2); strictly increasing on [0, inf)
inline double h(double x) {
    if (!(x >= 0.0)) throw Error(Errc::NegativeInput, "h(x) requires x >= 0, got " + std::to_string(x));
    return x * std::tanh(0.5 * x);
}

/// Inverse of h on [0, inf).
///
/// Bisection on [0, y + 2] (valid since h(x) >= x - 2) down to width 1e-14
/// or floating-point adjacency, followed by one secant step between the
/// final bracket endpoints.
inline double g(double y) {
    if (!(y >= 0.0)) throw Error(Errc::NegativeInput, "g(y) requires y >= 0, got " + std::to_string(y));
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return y;

    double lo = 0.0;
    double hi = y + 2.0;
    for (int it = 0; it < 2000 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    const double hlo = h(lo);
    const double hhi = h(hi);
    if (hhi == hlo) return 0.5 * (lo + hi);
    const double x = lo + (y - hlo) * (hi - lo) / (hhi - hlo);
    return std::clamp(x, lo, hi);
}

/// f(x) = 1 / sinh^2(g(x)/2). f(0) = +inf, f(inf) = 0, strictly decreasing.
inline BoundValue f(ExtendedReal x) {
    if (x.is_infinite()) return BoundValue::finite(0.0);
    if (x.value() <= 1e-300) return BoundValue::infinity();
    const double s = std::sinh(0.5 * g(x.value()));
    return BoundValue::finite(1.0 / (s * s));
}

inline BoundValue f(double x) {
    if (x < 0.0) throw Error(Errc::NegativeInput, "f(x) requires x >= 0, got " + std::to_string(x));
    return f(ExtendedReal::finite(x));
}

/// Inverse of f on (0, inf):
///   B(x) = (1+x)^{-1/2} ln[(sqrt(x+1) + 1) / (sqrt(x+1) - 1)].
/// sqrt(x+1) - 1 is evaluated as x / (sqrt(x+1) + 1) to stay accurate for small x.
inline double big_b(double x) {
    if (!(x > 0.0)) throw Error(Errc::NonPositiveInput, "B(x) requires x > 0, got " + std::to_string(x));
    if (std::isinf(x)) return 0.0;
    const double r = std::sqrt(x + 1.0);
    return (std::log(r + 1.0) - std::log(x / (r + 1.0))) / r;
}

// 2 (1+x)^{-1/2} atanh[(1+x)^{-1/2}], the same function; loses accuracy once
// (1+x)^{-1/2} approaches 1, i.e. for x below ~1e-4.
inline double big_b_atanh_form(double x) {
    if (!(x > 0.0)) throw Error(Errc::NonPositiveInput, "B(x) requires x > 0, got " + std::to_string(x));
    const double t = 1.0 / std::sqrt(1.0 + x);
    return 2.0 * t * std::atanh(t);
}

} // namespace qre::bounds
