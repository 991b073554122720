#pragma once

#include <stdexcept>
#include <string>

namespace qwiener {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the documented domain of an operation (zero divisor, bad grid
// size, non-unit imaginary, ...).
struct DomainError : Error {
    using Error::Error;
};

// A 2x2 matrix (or matrix family) that should carry the quaternionic block
// structure m22 = conj(m11), m21 = -conj(m12) fails the check.
struct StructureError : Error {
    double defect = 0.0;
    StructureError(const std::string& msg, double d) : Error(msg), defect(d) {}
};

struct NotInvertibleError : Error {
    double min_abs_det = 0.0;
    double witness = 0.0;   // circle angle or line point at the minimum
    NotInvertibleError(const std::string& msg, double m, double w)
        : Error(msg), min_abs_det(m), witness(w) {}
};

struct NotPositiveError : Error {
    double min_eigenvalue = 0.0;
    double witness = 0.0;
    NotPositiveError(const std::string& msg, double m, double w)
        : Error(msg), min_eigenvalue(m), witness(w) {}
};

struct NotPlusError : Error {
    using Error::Error;
};

struct AliasError : Error {
    double leaked = 0.0;
    AliasError(const std::string& msg, double l) : Error(msg), leaked(l) {}
};

struct SizeError : Error {
    using Error::Error;
};

struct GridError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    double residual = 0.0;
    ConvergenceError(const std::string& msg, double r) : Error(msg), residual(r) {}
};

struct ClassificationError : Error {
    using Error::Error;
};

} // namespace qwiener
