#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oridt {

enum class ErrorKind {
    MalformedDescription,
    NonInvolutive,
    ArrowOrientationMismatch,
    FixedArrowNotFixed,
    SignConditionViolated,
    ZeroDimVector,
    DivisionByZero,
    NotSymmetric,
    OutOfRange,
    PoleAtPoint,
    EvenPrime,
    BoundMismatch,
    ZeroVector,
    InvalidBase,
    NotSigmaCompatible,
    Inadmissible,
    NotFiniteType,
    NonIntegralInvariant,
    CapExceeded,
    OddSymplecticDimension,
    ConfigError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct Violation {
    ErrorKind kind;
    std::string subject;  // offending node or arrow identifier
    std::string message;
};

// Raised by quiver validation; carries every violated condition, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, unsigned long long required, unsigned long long cap);

    unsigned long long required() const noexcept { return required_; }
    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long required_;
    unsigned long long cap_;
};

}  // namespace oridt
