#pragma once

#include <stdexcept>

namespace nozzleflow {

// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flow speed at or past the limit speed: the Bernoulli sound speed would be <= 0.
struct SpeedExceedsLimit : Error { using Error::Error; };

// Entry flux matching has no root on the subsonic branch.
struct NoSubsonicRoot : Error { using Error::Error; };

// A root finder exhausted its iteration budget before meeting tolerance.
struct ToleranceNotReached : Error { using Error::Error; };

// Nozzle or gas parameters violate the convergent-nozzle hypotheses.
struct HypothesisViolation : Error { using Error::Error; };

// Node index outside the strip grid.
struct IndexOutOfRange : Error { using Error::Error; };

// A candidate state reached the speed limit where the gas model is undefined.
struct SonicExceeded : Error { using Error::Error; };

// Zero-order coefficient does not satisfy the requested mode.
struct NonzeroC : Error { using Error::Error; };

// Boundary drift condition fails; no barrier slope exists.
struct ConditionFailed : Error { using Error::Error; };

// Barrier rectangle shrank past the retry budget without a positive sweep.
struct RectangleVanished : Error { using Error::Error; };

// Claimed boundary extremum contradicted by tangential sampling.
struct NotAnExtremum : Error { using Error::Error; };

// Malformed or out-of-range run configuration.
struct ConfigError : Error { using Error::Error; };

}  // namespace nozzleflow
