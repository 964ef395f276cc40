#include "oridt/error.hpp"

namespace oridt {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedDescription: return "MalformedDescription";
    case ErrorKind::NonInvolutive: return "NonInvolutive";
    case ErrorKind::ArrowOrientationMismatch: return "ArrowOrientationMismatch";
    case ErrorKind::FixedArrowNotFixed: return "FixedArrowNotFixed";
    case ErrorKind::SignConditionViolated: return "SignConditionViolated";
    case ErrorKind::ZeroDimVector: return "ZeroDimVector";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::BoundMismatch: return "BoundMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::NotSigmaCompatible: return "NotSigmaCompatible";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::NotFiniteType: return "NotFiniteType";
    case ErrorKind::NonIntegralInvariant: return "NonIntegralInvariant";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::OddSymplecticDimension: return "OddSymplecticDimension";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "invalid quiver with duality:";
    for (const auto& v : violations) {
        out += "\n  ";
        out += to_string(v.kind);
        out += " [" + v.subject + "]: " + v.message;
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorKind::MalformedDescription : violations.front().kind,
            summarize(violations)),
      violations_(std::move(violations)) {}

CapExceeded::CapExceeded(const std::string& what, unsigned long long required,
                         unsigned long long cap)
    : Error(ErrorKind::CapExceeded, what + ": requires " + std::to_string(required) +
                                        ", cap is " + std::to_string(cap)),
      required_(required), cap_(cap) {}

}  // namespace oridt
