#include "warp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace warp {

GaussRule gauss_legendre(int m) {
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = m * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

namespace {

const GaussRule& panel_rule() {
  static const GaussRule rule = gauss_legendre(15);
  return rule;
}

double apply_rule(const std::function<double(double)>& g, double lo, double hi) {
  const auto& r = panel_rule();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s += r.weights[i] * g(mid + half * r.nodes[i]);
  }
  return s * half;
}

struct Panel {
  double lo, hi, coarse, fine_left, fine_right, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel make_panel(const std::function<double(double)>& g, double lo, double hi, double coarse) {
  const double mid = 0.5 * (lo + hi);
  Panel p{lo, hi, coarse, apply_rule(g, lo, mid), apply_rule(g, mid, hi), 0.0};
  p.err = std::abs(p.fine_left + p.fine_right - p.coarse);
  return p;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                              double rel_tol, int max_panels) {
  std::priority_queue<Panel> work;
  constexpr int initial = 4;
  const double width = (hi - lo) / initial;
  double total = 0.0, total_err = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == initial) ? hi : a + width;
    Panel p = make_panel(g, a, b, apply_rule(g, a, b));
    total += p.fine_left + p.fine_right;
    total_err += p.err;
    work.push(p);
  }
  int panels = initial;
  // Refine the worst panel until the summed error estimate meets tolerance.
  while (total_err > rel_tol * std::abs(total) && panels < max_panels) {
    Panel worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      break;  // cannot split further in double precision
    }
    Panel left = make_panel(g, worst.lo, mid, worst.fine_left);
    Panel right = make_panel(g, mid, worst.hi, worst.fine_right);
    total += (left.fine_left + left.fine_right + right.fine_left + right.fine_right) -
             (worst.fine_left + worst.fine_right);
    total_err += left.err + right.err - worst.err;
    work.push(left);
    work.push(right);
    ++panels;
  }
  // Re-sum to shed accumulated rounding from the incremental updates.
  double sum = 0.0, err = 0.0;
  while (!work.empty()) {
    sum += work.top().fine_left + work.top().fine_right;
    err += work.top().err;
    work.pop();
  }
  return {sum, err, panels, err <= rel_tol * std::abs(sum)};
}

}  // namespace warp
