#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qre {

enum class Errc {
    NonFinite,
    NotSquare,
    NotHermitian,
    NotPositive,
    TraceNotOne,
    DimensionMismatch,
    NegativeInput,
    NonPositiveInput,
    NonPositiveEpsilon,
    EqualMeans,
    IncompleteKraus,
    NotUnitary,
    NotFixedPoint,
    ZeroFlux,
    SupportFailure,
    InvalidEnsemble,
    NumericalResidual,
};

constexpr std::string_view to_string(Errc e) noexcept {
    switch (e) {
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPositive: return "NotPositive";
    case Errc::TraceNotOne: return "TraceNotOne";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::NonPositiveInput: return "NonPositiveInput";
    case Errc::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case Errc::EqualMeans: return "EqualMeans";
    case Errc::IncompleteKraus: return "IncompleteKraus";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotFixedPoint: return "NotFixedPoint";
    case Errc::ZeroFlux: return "ZeroFlux";
    case Errc::SupportFailure: return "SupportFailure";
    case Errc::InvalidEnsemble: return "InvalidEnsemble";
    case Errc::NumericalResidual: return "NumericalResidual";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qre
