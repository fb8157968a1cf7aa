#include "warp/finite_diff.hpp"

#include "warp/errors.hpp"

namespace warp {

PeriodicDerivatives periodic_derivatives(std::span<const double> values, double spacing) {
  const std::size_t m = values.size();
  if (m < 5) throw TooFewSamples("periodic differences need at least 5 samples per period");
  if (!(spacing > 0.0)) throw DomainError("sample spacing must be positive");
  PeriodicDerivatives out{std::vector<double>(m), std::vector<double>(m)};
  const auto at = [&](std::ptrdiff_t i) {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    return values[static_cast<std::size_t>(((i % mm) + mm) % mm)];
  };
  const double h1 = 1.0 / (12.0 * spacing);
  const double h2 = 1.0 / (12.0 * spacing * spacing);
  for (std::size_t k = 0; k < m; ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k);
    const double fm2 = at(i - 2), fm1 = at(i - 1), f0 = at(i), fp1 = at(i + 1), fp2 = at(i + 2);
    out.d1[k] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) * h1;
    out.d2[k] = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) * h2;
  }
  return out;
}

}  // namespace warp
