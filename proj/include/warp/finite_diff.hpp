#pragma once

#include <span>
#include <vector>

namespace warp {

struct PeriodicDerivatives {
  std::vector<double> d1;
  std::vector<double> d2;
};

// Fourth-order central differences of one period of uniformly spaced samples
// (the sample at t = T must not be repeated). Needs at least 5 samples.
PeriodicDerivatives periodic_derivatives(std::span<const double> values, double spacing);

}  // namespace warp
