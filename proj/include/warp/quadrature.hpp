#pragma once

#include <functional>
#include <span>
#include <vector>

namespace warp {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;
};

// Gauss-Legendre rule by Newton iteration on P_m.
GaussRule gauss_legendre(int m);

struct QuadResult {
  double value;
  double error_estimate;
  int panels;
  bool converged;
};

// Adaptive Gauss-Legendre panels on [lo, hi]: a panel is accepted when its
// single-rule value agrees with the sum over its two halves to within
// rel_tol * |running estimate|. Nodes are always strictly interior, so the
// integrand is never evaluated at lo or hi.
QuadResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                              double rel_tol, int max_panels = 4000);

}  // namespace warp
