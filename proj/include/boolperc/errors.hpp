#pragma once

#include <stdexcept>
#include <string>

namespace boolperc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scaling a measure by t <= 0.
struct InvalidScale : Error {
    using Error::Error;
};

// A combination F + hG produced a negative component weight.
struct NotAMeasure : Error {
    using Error::Error;
};

// Quantile argument outside [0,1).
struct InvalidQuantile : Error {
    using Error::Error;
};

// Negative intensity passed to a sampler or estimator.
struct InvalidIntensity : Error {
    using Error::Error;
};

// Expected point count exceeds the configured hard cap.
struct TooManyPoints : Error {
    using Error::Error;
};

// Superposition of configurations with different windows/margins.
struct WindowMismatch : Error {
    using Error::Error;
};

// Mark (radius) outside (0, b] when adding a point.
struct InvalidMark : Error {
    using Error::Error;
};

// Target set does not fit inside the shrunken box required by the graph build.
struct TargetTooLarge : Error {
    using Error::Error;
};

// Operation requires a higher dimension (slab experiments need d >= 3).
struct DimensionError : Error {
    using Error::Error;
};

// Bisection bracket does not straddle the half-crossing point.
struct NoBracket : Error {
    using Error::Error;
};

// Bad experiment configuration or precondition violation surfaced to the CLI.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace boolperc
