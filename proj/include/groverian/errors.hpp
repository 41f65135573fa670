#pragma once

#include <stdexcept>

namespace groverian {

// Root of the library's error hierarchy. Contract violations throw a
// subclass; internal arithmetic never returns NaN to signal failure.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude vector length does not match d^n, or two states/registers of
// different shape were combined.
struct DimensionMismatch : Error { using Error::Error; };

// Tensor-product operands have different level counts d.
struct LevelMismatch : Error { using Error::Error; };

// Input vector has (numerically) zero norm and cannot be normalized.
struct ZeroVector : Error { using Error::Error; };

// Norm or trace deviates from 1 beyond the accepted tolerance.
struct NotNormalized : Error { using Error::Error; };

// A basis label lies outside 1..d.
struct LabelOutOfRange : Error { using Error::Error; };

// A flat index, site index, or cut position lies outside its valid range.
struct IndexOutOfRange : Error { using Error::Error; };

// A numeric parameter is non-finite or outside its documented domain.
struct RangeViolation : Error { using Error::Error; };

// Operation requires a two-qudit register.
struct NotBipartite : Error { using Error::Error; };

// A probability argument lies outside [0, 1] past the rounding band.
struct OutOfRange : Error { using Error::Error; };

// An exhaustive scan would exceed its evaluation budget.
struct BudgetExceeded : Error { using Error::Error; };

// Malformed state file.
struct ParseError : Error { using Error::Error; };

// File could not be opened or written.
struct IoError : Error { using Error::Error; };

} // namespace groverian
