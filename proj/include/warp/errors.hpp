#pragma once

#include <stdexcept>
#include <string>

namespace warp {

// Every numerical failure the library reports derives from Error so callers
// (the CLI in particular) can map categories to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

// A sub-step drove x <= 0; the warping function would be non-positive.
struct PositivityViolation : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

// Requested energy is the center, the critical orbit, or outside the band.
struct EnergyOutOfBand : Error {
  using Error::Error;
};

struct QuadratureNonConvergence : Error {
  using Error::Error;
};

struct ThresholdViolation : Error {
  using Error::Error;
};

struct NoBracket : Error {
  NoBracket(const std::string& what, double t_min, double t_max)
      : Error(what), scanned_min(t_min), scanned_max(t_max) {}
  double scanned_min;
  double scanned_max;
};

struct TooFewSamples : Error {
  using Error::Error;
};

struct NonPositiveWarp : Error {
  using Error::Error;
};

}  // namespace warp
