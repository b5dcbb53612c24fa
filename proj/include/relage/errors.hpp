#pragma once

#include <stdexcept>
#include <string>

namespace relage {

/// The model never completes a service: P(X > S) is zero (or numerically
/// indistinguishable from zero), so every stationary quantity that divides
/// by it is undefined.
struct FreshnessDiverges : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic interarrival exactly equal to deterministic service. The
/// event {X > S} sits on the tie boundary and the pair is rejected outright
/// instead of picking a side.
struct DegeneratePair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The quadrature error estimate stayed above the requested tolerance and
/// the Monte Carlo fallback was disabled.
struct OracleNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Too few regeneration cycles for the requested estimator.
struct InsufficientCycles : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad command line or config file.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace relage
