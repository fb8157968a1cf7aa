#include "warp/roots.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "warp/errors.hpp"

namespace warp {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double rel_tol, double abs_tol, int max_iter) {
  return find_root(f, lo, hi, f(lo), f(hi), rel_tol, abs_tol, max_iter);
}

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_lo, double f_hi, double rel_tol, double abs_tol,
                     int max_iter) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  int evals = 2;
  if (fa == 0.0) return {a, fa, evals};
  if (fb == 0.0) return {b, fb, evals};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw DomainError("find_root: bracket does not change sign");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * (rel_tol * std::abs(b) + abs_tol);
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) {
      return {b, fb, evals};
    }
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double pp, qq;
      const double s = fb / fa;
      if (a == c) {
        pp = 2.0 * m * s;
        qq = 1.0 - s;
      } else {
        const double q = fa / fc;
        const double r = fb / fc;
        pp = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (pp > 0.0) qq = -qq; else pp = -pp;
      if (2.0 * pp < std::min(3.0 * m * qq - std::abs(tol * qq), std::abs(e * qq))) {
        e = d;
        d = pp / qq;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    ++evals;
  }
  throw BudgetExceeded("find_root: iteration budget exhausted");
}

}  // namespace warp
