#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "qre/error.hpp"

namespace qre {

/// Non-negative real or +infinity. Finite values in [-1e-10, 0) are
/// clamped to zero; anything more negative is a numerical failure.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;

    static ExtendedReal infinity() {
        ExtendedReal x;
        x.value_ = std::numeric_limits<double>::infinity();
        return x;
    }

    static ExtendedReal finite(double v) {
        if (std::isnan(v)) throw Error(Errc::NonFinite, "NaN divergence value");
        if (std::isinf(v)) {
            if (v < 0.0) throw Error(Errc::NumericalResidual, "negative infinite divergence");
            return infinity();
        }
        if (v < -1e-10) throw Error(Errc::NumericalResidual, "divergence value " + std::to_string(v) + " < 0");
        ExtendedReal x;
        x.value_ = v < 0.0 ? 0.0 : v;
        return x;
    }

    bool is_infinite() const noexcept { return std::isinf(value_); }
    bool is_finite() const noexcept { return !is_infinite(); }

    // +inf when infinite
    double value() const noexcept { return value_; }

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return finite(a.value_ + b.value_);
    }

    ExtendedReal half() const { return is_infinite() ? *this : finite(0.5 * value_); }

    friend bool operator==(ExtendedReal, ExtendedReal) = default;

private:
    double value_ = 0.0;
};

/// Values of f, g, h and B: non-negative or +infinity.
using BoundValue = ExtendedReal;

} // namespace qre
