#pragma once

#include <stdexcept>
#include <string>

namespace pdlab {

// Base class for all library errors so callers can catch pdlab::Error
// and report config problems distinctly from internal bugs.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphaOutOfRange : Error { using Error::Error; };
struct ThetaTooSmall : Error { using Error::Error; };
struct MOutOfRange : Error { using Error::Error; };
struct InvalidSimplexPoint : Error { using Error::Error; };
struct InvalidOrderedPoint : Error { using Error::Error; };
struct TruncationOverflow : Error { using Error::Error; };
struct InvalidProbability : Error { using Error::Error; };
struct UnsupportedRegime : Error { using Error::Error; };
struct AlphaZero : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct ProjectionFailure : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace pdlab
