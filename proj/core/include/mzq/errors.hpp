#pragma once

#include <stdexcept>
#include <string>

namespace mzq {

// Argument outside the domain of a basis or catalog function.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series or norm that does not converge for the requested exponent.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncation whose certified tail exceeds the caller's tolerance.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fewer nodes than unknowns in a layer.
struct UnderdeterminedLayerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest frame eigenvalue at or below the configured floor.
struct IllConditionedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical check failed (non-finite value, residual above tolerance).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent container sizes between coupled arguments.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration, file, or CLI input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A regression fit with no usable signal (too few points, zero spread,
// or a slope with the wrong sign).
struct DegenerateFitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mzq
