#include "warp/period.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "warp/errors.hpp"
#include "warp/parallel.hpp"
#include "warp/quadrature.hpp"
#include "warp/roots.hpp"

namespace warp {

namespace {

constexpr double kTurningRelTol = 1e-15;

void check_band(double excess, double c_min, const EnergyClamp& clamp) {
  const double width = -c_min;
  // a few ulps of slack so grid end points computed either way are admitted
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * width;
  const double lo = clamp.rel_lo * width;
  const double hi = width - clamp.rel_hi * width;
  if (!(excess >= lo - slack && excess <= hi + slack && excess > 0.0 && excess < width)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy c = " << c_min + excess << " outside the admissible band ["
        << c_min + lo << ", " << -clamp.rel_hi * width << "]";
    throw EnergyOutOfBand(msg.str());
  }
}

}  // namespace

namespace {

// A turning point together with everything the period integrand needs near
// it. Points close to x_star are carried as offsets w = x - x_star so that a
// tiny oscillation keeps full relative precision; points far from x_star
// (in particular an inner point close to x = 0) are carried as x itself.
struct Turning {
  bool offset_mode;
  double x;      // turning point
  double w;      // x - x_star (exact in offset mode)
  double ref;    // excess (offset mode) or G (x mode) evaluated at the turning point
  double slope;  // |phi(x)|
  double curv;   // phi'(x)
  int dir;       // +1: the orbit lies above x (inner point), -1: below (outer)
};

Turning make_turning(bool offset_mode, double x, double w, int dir, const ModelParams& p) {
  Turning t{offset_mode, x, w, 0.0, std::abs(force(x, p)), force_slope(x, p), dir};
  t.ref = offset_mode ? potential_excess_at_offset(w, p) : potential(x, p);
  return t;
}

struct Turnings {
  Turning inner;
  Turning outer;
};

Turnings locate_turnings(double excess, const ModelParams& p, const EnergyClamp& clamp) {
  const auto d = derive_constants(p);
  check_band(excess, d.c_min, clamp);
  const double xs = d.x_star;
  const auto by_offset = [&](double w) { return potential_excess_at_offset(w, p) - excess; };
  const auto by_x = [&](double x) { return potential_excess(x, p) - excess; };

  Turnings out{};
  // inner point: offsets on [-x*/2, 0), otherwise x on (0, x*/2]
  const double g_half_in = by_offset(-0.5 * xs);
  if (g_half_in > 0.0) {
    const double w = find_root(by_offset, -0.5 * xs, 0.0, g_half_in, by_offset(0.0), kTurningRelTol, 0.0).x;
    out.inner = make_turning(true, xs + w, w, +1, p);
  } else {
    double lo = 0.25 * xs;
    double g_lo = by_x(lo);
    while (g_lo <= 0.0) {
      lo *= 0.5;
      if (!(lo > 0.0)) throw EnergyOutOfBand("turning_points: inner turning point underflows");
      g_lo = by_x(lo);
    }
    const double x = find_root(by_x, lo, 0.5 * xs, g_lo, g_half_in, kTurningRelTol, 0.0).x;
    out.inner = make_turning(false, x, x - xs, +1, p);
  }
  // outer point: offsets on (0, x*/2], otherwise x beyond 1.5 x*
  const double g_half_out = by_offset(0.5 * xs);
  if (g_half_out > 0.0) {
    const double w = find_root(by_offset, 0.0, 0.5 * xs, by_offset(0.0), g_half_out, kTurningRelTol, 0.0).x;
    out.outer = make_turning(true, xs + w, w, -1, p);
  } else {
    double hi = 3.0 * xs;
    double g_hi = by_x(hi);
    while (g_hi <= 0.0) {
      hi *= 2.0;
      if (!std::isfinite(hi)) throw EnergyOutOfBand("turning_points: outer turning point overflows");
      g_hi = by_x(hi);
    }
    const double x = find_root(by_x, 1.5 * xs, hi, g_half_out, g_hi, kTurningRelTol, 0.0).x;
    out.outer = make_turning(false, x, x - xs, -1, p);
  }
  return out;
}

// c - G(u) at distance `dist` from the turning point, measured into the orbit.
// Very close to the turning point the difference is replaced by its
// second-order Taylor polynomial, which is exact there up to rounding.
double energy_gap(const Turning& t, double dist, double taylor_dist, const ModelParams& p) {
  if (dist < taylor_dist) {
    return t.slope * dist - 0.5 * t.curv * dist * dist;
  }
  const double g = t.offset_mode ? t.ref - potential_excess_at_offset(t.w + t.dir * dist, p)
                                 : t.ref - potential(t.x + t.dir * dist, p);
  return g > 0.0 ? g : t.slope * dist;
}

}  // namespace

TurningPoints turning_points(double c, const ModelParams& p, const EnergyClamp& clamp) {
  const auto d = derive_constants(p);
  return turning_points_at_excess(c - d.c_min, p, clamp);
}

TurningPoints turning_points_at_excess(double excess, const ModelParams& p,
                                       const EnergyClamp& clamp) {
  const auto t = locate_turnings(excess, p, clamp);
  return {t.inner.x, t.outer.x};
}

OrbitSpec period_quadrature(double c, const ModelParams& p, const PeriodOptions& opts) {
  const auto d = derive_constants(p);
  auto o = period_at_excess(c - d.c_min, p, opts);
  o.c = c;
  return o;
}

OrbitSpec period_at_excess(double excess, const ModelParams& p, const PeriodOptions& opts) {
  const auto d = derive_constants(p);
  const auto tp = locate_turnings(excess, p, opts.clamp);
  const double half = tp.inner.offset_mode && tp.outer.offset_mode
                          ? 0.5 * (tp.outer.w - tp.inner.w)
                          : 0.5 * (tp.outer.x - tp.inner.x);
  constexpr double kTaylor = 1e-5;
  const double taylor_in = kTaylor * std::min(half, tp.inner.x);
  const double taylor_out = kTaylor * half;

  // theta in (-pi/2, 0]: u = a + half (1 + sin theta), 1 + sin = 2 sin^2(pi/4 + theta/2)
  const auto left = [&](double theta) {
    const double s = std::sin(0.25 * std::numbers::pi + 0.5 * theta);
    const double r = energy_gap(tp.inner, 2.0 * half * s * s, taylor_in, p);
    return r > 0.0 ? half * std::cos(theta) / std::sqrt(r) : 0.0;
  };
  // theta in [0, pi/2): u = b - half (1 - sin theta)
  const auto right = [&](double theta) {
    const double s = std::sin(0.25 * std::numbers::pi - 0.5 * theta);
    const double r = energy_gap(tp.outer, 2.0 * half * s * s, taylor_out, p);
    return r > 0.0 ? half * std::cos(theta) / std::sqrt(r) : 0.0;
  };

  const auto ql = integrate_adaptive(left, -0.5 * std::numbers::pi, 0.0, opts.rel_tol, opts.max_panels);
  const auto qr = integrate_adaptive(right, 0.0, 0.5 * std::numbers::pi, opts.rel_tol, opts.max_panels);
  if (!ql.converged || !qr.converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "period quadrature did not reach rel_tol " << opts.rel_tol << " at c = "
        << d.c_min + excess << " (panels " << ql.panels << "+" << qr.panels << ")";
    throw QuadratureNonConvergence(msg.str());
  }
  return {d.c_min + excess, excess, tp.inner.x, tp.outer.x,
          std::numbers::sqrt2 * (ql.value + qr.value)};
}

std::vector<ScanEntry> period_scan(std::span<const double> c_grid, const ModelParams& p,
                                   const PeriodOptions& opts, int threads) {
  const auto d = derive_constants(p);
  std::vector<double> excess(c_grid.size());
  for (std::size_t i = 0; i < c_grid.size(); ++i) excess[i] = c_grid[i] - d.c_min;
  auto out = period_scan_excess(excess, p, opts, threads);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].ok) out[i].orbit.c = c_grid[i];
  }
  return out;
}

std::vector<ScanEntry> period_scan_excess(std::span<const double> excess_grid,
                                          const ModelParams& p, const PeriodOptions& opts,
                                          int threads) {
  p.validate();
  std::vector<ScanEntry> out(excess_grid.size());
  parallel_for(excess_grid.size(), threads, [&](std::size_t i) {
    try {
      out[i].orbit = period_at_excess(excess_grid[i], p, opts);
      out[i].ok = true;
    } catch (const Error& e) {
      out[i].orbit.excess = excess_grid[i];
      out[i].error = e.what();
    }
  });
  return out;
}

std::vector<double> band_excess_grid(int count, const ModelParams& p, const EnergyClamp& clamp) {
  return band_excess_grid(count, p, clamp.rel_lo, 1.0 - clamp.rel_hi);
}

std::vector<double> band_excess_grid(int count, const ModelParams& p, double s_lo, double s_hi) {
  const auto d = derive_constants(p);
  if (count <= 0) return {};
  if (!(s_lo > 0.0 && s_hi < 1.0 && s_lo <= s_hi)) {
    throw DomainError("band fractions must satisfy 0 < s_lo <= s_hi < 1");
  }
  const auto logit = [](double s) { return std::log(s) - std::log1p(-s); };
  const double z_lo = logit(s_lo), z_hi = logit(s_hi);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double z = count == 1 ? z_lo : z_lo + (z_hi - z_lo) * i / (count - 1.0);
    out[i] = -d.c_min / (1.0 + std::exp(-z));
  }
  // pin the ends exactly
  out.front() = -d.c_min * s_lo;
  if (count > 1) out.back() = -d.c_min * s_hi;
  return out;
}

}  // namespace warp
