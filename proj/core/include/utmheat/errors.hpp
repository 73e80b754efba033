#pragma once

#include <stdexcept>
#include <string>

namespace utmheat {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Derivative order above the closed-form cap.
struct UnsupportedOrder : Error {
    using Error::Error;
};

// exp(Re(lambda^2) t) would leave the representable range.
struct OverflowError : Error {
    using Error::Error;
};

// Ehrenpreis-type evaluation with horizon T <= t.
struct HorizonError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

// Adaptive refinement exhausted max_panels before reaching tolerance.
struct ToleranceNotMet : QuadratureError {
    using QuadratureError::QuadratureError;
};

// Samples at the truncation radius show no decay; the conditional
// integrator must be used instead.
struct NonDecayingIntegrand : QuadratureError {
    using QuadratureError::QuadratureError;
};

// A caller-supplied conditional remainder failed the decay probe.
struct InsufficientDecay : QuadratureError {
    using QuadratureError::QuadratureError;
};

// Symmetric-truncation partial integrals spread instead of settling.
struct NoConvergence : QuadratureError {
    using QuadratureError::QuadratureError;
};

// Run-configuration parse or validation failure (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace utmheat
