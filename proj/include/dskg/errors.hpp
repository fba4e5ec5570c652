#pragma once

#include <stdexcept>
#include <string>

namespace dskg {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A series or iteration failed to reach the requested tolerance.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature could not meet its tolerance.
struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

// Requested time step violates the explicit-scheme stability bound.
struct CFLViolation : Error {
    explicit CFLViolation(const std::string& msg) : Error(msg) {}
};

// Self-check mode detected that doubling the quadrature changes the output.
struct QuadratureUnderResolved : Error {
    explicit QuadratureUnderResolved(const std::string& msg) : Error(msg) {}
};

// Picard iteration shows no contraction (data too large or weight too strong).
struct NoContraction : Error {
    explicit NoContraction(const std::string& msg) : Error(msg) {}
};

// Too few samples for a finite-difference or fitting operation.
struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& msg) : Error(msg) {}
};

// Asymptotic-error series hit the rounding floor inside the fit window.
struct LateWindowUnderflow : Error {
    explicit LateWindowUnderflow(const std::string& msg) : Error(msg) {}
};

// Bad or incomplete run configuration (CLI layer).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace dskg
