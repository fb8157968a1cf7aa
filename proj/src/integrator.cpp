#include "warp/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "warp/errors.hpp"
#include "warp/roots.hpp"

namespace warp {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("integrator dt must be positive");
  if (!(tol > 0.0 && tol < 1e-3)) throw DomainError("integrator tol must lie in (0, 1e-3)");
  if (max_steps < 1) throw DomainError("integrator max_steps must be >= 1");
}

PhaseState step_symplectic(const PhaseState& s, double dt, const ModelParams& p) {
  if (!(s.x > 0.0)) throw PositivityViolation("leapfrog: initial x is not positive");
  PhaseState out = s;
  out.v -= 0.5 * dt * force(out.x, p);
  out.x += dt * out.v;
  if (!(out.x > 0.0)) {
    throw PositivityViolation("leapfrog: drift drove x <= 0 at t = " + std::to_string(s.t));
  }
  out.v -= 0.5 * dt * force(out.x, p);
  out.t = s.t + dt;
  return out;
}

namespace {

struct Vec2 {
  double x, v;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.v + b.v}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.v}; }

// Dormand-Prince 5(4) tableau with Hairer's dense-output coefficients.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

class Dopri5 {
 public:
  Dopri5(const ModelParams& p, const IntegratorConfig& cfg)
      : p_(p), cfg_(cfg) {
    const auto d = derive_constants(p);
    x_scale_ = 1e-6 * d.x_star;
    v_scale_ = 1e-6 * d.x_star * linearized_frequency(p);
  }

  struct Step {
    Vec2 y1;
    Vec2 k7;
    double err;
    bool positive;
    // dense output coefficients
    Vec2 r1, r2, r3, r4, r5;
  };

  // Right-hand side; returns false when x leaves the positive half-line.
  bool rhs(Vec2 y, Vec2& out) const {
    if (!(y.x > 0.0)) return false;
    out = {y.v, -force(y.x, p_)};
    return true;
  }

  Step attempt(Vec2 y0, Vec2 k1, double h) const {
    using namespace dp;
    Step s{};
    s.positive = false;
    Vec2 k2, k3, k4, k5, k6, k7;
    if (!rhs(y0 + (h * a21) * k1, k2)) return s;
    if (!rhs(y0 + h * (a31 * k1 + a32 * k2), k3)) return s;
    if (!rhs(y0 + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return s;
    if (!rhs(y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return s;
    if (!rhs(y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6)) return s;
    const Vec2 y1 = y0 + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    if (!rhs(y1, k7)) return s;
    const Vec2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sx = cfg_.tol * (x_scale_ + std::max(std::abs(y0.x), std::abs(y1.x)));
    const double sv = cfg_.tol * (v_scale_ + std::max(std::abs(y0.v), std::abs(y1.v)));
    s.err = std::max(std::abs(err.x) / sx, std::abs(err.v) / sv);
    s.positive = true;
    s.y1 = y1;
    s.k7 = k7;
    s.r1 = y0;
    s.r2 = y1 + (-1.0) * y0;
    s.r3 = h * k1 + (-1.0) * s.r2;
    s.r4 = s.r2 + (-h) * k7 + (-1.0) * s.r3;
    s.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    return s;
  }

  static Vec2 dense(const Step& s, double theta) {
    const double th1 = 1.0 - theta;
    return s.r1 + theta * (s.r2 + th1 * (s.r3 + theta * (s.r4 + th1 * s.r5)));
  }

  Vec2 initial_slope(Vec2 y0) const {
    Vec2 k;
    if (!rhs(y0, k)) throw PositivityViolation("adaptive integrator: x is not positive");
    return k;
  }

  // Take one accepted step of at most h_max; h is updated to the next trial.
  Step advance(Vec2 y0, Vec2 k1, double& h, double h_max, double& taken, long& budget) const {
    double trial = std::min(h, h_max);
    for (;;) {
      if (--budget < 0) throw BudgetExceeded("adaptive integrator: step budget exhausted");
      if (!(trial > 1e-300)) {
        throw PositivityViolation("adaptive integrator: step underflow near x = 0");
      }
      Step s = attempt(y0, k1, trial);
      if (!s.positive) {
        trial *= 0.25;
        continue;
      }
      if (s.err <= 1.0) {
        taken = trial;
        const double grow = s.err > 0.0 ? 0.9 * std::pow(s.err, -0.2) : 5.0;
        const double next = trial * std::clamp(grow, 0.2, 5.0);
        // do not let a clipped step shrink the next trial
        h = (trial < h_max) ? next : std::max(h, next);
        return s;
      }
      trial *= std::clamp(0.9 * std::pow(s.err, -0.2), 0.1, 0.9);
    }
  }

 private:
  const ModelParams& p_;
  const IntegratorConfig& cfg_;
  double x_scale_;
  double v_scale_;
};

}  // namespace

SectionHit integrate_until_section(const PhaseState& s0, Crossing direction,
                                   const IntegratorConfig& cfg, const ModelParams& p) {
  cfg.validate();
  if (!(s0.x > 0.0)) throw PositivityViolation("integrate_until_section: x0 is not positive");
  const auto consts = derive_constants(p);
  const double omega = linearized_frequency(p);
  if (s0.v == 0.0 && std::abs(force(s0.x, p)) <= 1e-14 * omega * omega * consts.x_star) {
    return {s0, 0.0, 0};
  }

  const Dopri5 stepper(p, cfg);
  Vec2 y{s0.x, s0.v};
  Vec2 k1 = stepper.initial_slope(y);
  double t = s0.t;
  double h = cfg.dt;
  long budget = cfg.max_steps;
  const double inf = std::numeric_limits<double>::infinity();

  for (;;) {
    double taken = 0.0;
    const auto step = stepper.advance(y, k1, h, inf, taken, budget);
    const double v0 = y.v, v1 = step.y1.v;
    const bool hit = direction == Crossing::Ascending ? (v0 < 0.0 && v1 >= 0.0)
                                                      : (v0 > 0.0 && v1 <= 0.0);
    if (hit) {
      double theta = 1.0;
      if (v1 != 0.0) {
        const auto vr = [&](double th) { return Dopri5::dense(step, th).v; };
        theta = find_root(vr, 0.0, 1.0, v0, v1, 0.0, 1e-15).x;
      }
      // Re-step from the accepted state to the located time, then polish with
      // Newton on v using v' = -phi(x).
      double dt_hit = theta * taken;
      Vec2 at = y;
      for (int polish = 0; polish < 4; ++polish) {
        if (dt_hit > 0.0) {
          const auto s = stepper.attempt(y, k1, dt_hit);
          if (!s.positive) break;
          at = s.y1;
        } else {
          at = y;
        }
        const double acc = -force(at.x, p);
        const double v_tol = cfg.tol * std::max(1.0, std::abs(at.x) * omega);
        if (std::abs(at.v) < v_tol || acc == 0.0) break;
        dt_hit = std::clamp(dt_hit - at.v / acc, 0.0, taken);
      }
      PhaseState out{t + dt_hit, at.x, at.v};
      return {out, out.t - s0.t, cfg.max_steps - budget};
    }
    y = step.y1;
    k1 = step.k7;
    t += taken;
  }
}

std::vector<PhaseState> integrate_to_times(const PhaseState& s0, std::span<const double> times,
                                           const IntegratorConfig& cfg, const ModelParams& p) {
  cfg.validate();
  if (!(s0.x > 0.0)) throw PositivityViolation("integrate_to_times: x0 is not positive");
  const Dopri5 stepper(p, cfg);
  std::vector<PhaseState> out;
  out.reserve(times.size());
  Vec2 y{s0.x, s0.v};
  Vec2 k1 = stepper.initial_slope(y);
  double t = s0.t;
  double h = cfg.dt;
  long budget = cfg.max_steps;
  for (const double target : times) {
    if (target < t) throw DomainError("integrate_to_times: times must be ascending from s0.t");
    while (t < target) {
      const double remaining = target - t;
      double taken = 0.0;
      const auto step = stepper.advance(y, k1, h, remaining, taken, budget);
      y = step.y1;
      k1 = step.k7;
      // snap to the target to avoid a sliver step from rounding
      t = (taken == remaining) ? target : t + taken;
    }
    out.push_back({target, y.x, y.v});
  }
  return out;
}

}  // namespace warp
