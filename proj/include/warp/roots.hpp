#pragma once

#include <functional>

namespace warp {

struct RootResult {
  double x;
  double fx;
  int evaluations;
};

// Safeguarded secant/inverse-quadratic/bisection (Brent) on a sign-changing
// bracket [lo, hi]. Stops when the bracket is narrower than
// rel_tol*|x| + abs_tol or fx == 0. Throws DomainError if f(lo), f(hi) share
// a sign; BudgetExceeded after max_iter iterations.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double rel_tol, double abs_tol = 0.0, int max_iter = 200);

// Same, with the end values already known.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_lo, double f_hi, double rel_tol, double abs_tol,
                     int max_iter = 200);

}  // namespace warp
