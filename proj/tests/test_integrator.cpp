#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "warp/errors.hpp"
#include "warp/integrator.hpp"
#include "warp/model.hpp"
#include "warp/period.hpp"

using namespace warp;

namespace {

constexpr double pi = std::numbers::pi;

// Returns the state at the middle of the band (excess = |c_min|/2), inner turning point.
PhaseState mid_band_start(const ModelParams& p) {
  const auto d = derive_constants(p);
  const auto tp = turning_points_at_excess(0.5 * std::abs(d.c_min), p);
  return {0.0, tp.a, 0.0};
}

}  // namespace

TEST_CASE("leapfrog leaves the center fixed") {
  for (const ModelParams p : {ModelParams{3, 2, 2}, ModelParams{5, 1.3, 0.7}, ModelParams{4, 3, 3}}) {
    const auto d = derive_constants(p);
    PhaseState s{0.0, d.x_star, 0.0};
    for (int i = 0; i < 100; ++i) s = step_symplectic(s, 0.37, p);
    CHECK(std::abs(s.x - d.x_star) <= 1e-14 * d.x_star);
    CHECK(std::abs(s.v) <= 1e-14 * d.x_star);
    CHECK(s.t == doctest::Approx(37.0).epsilon(1e-14));
  }
}

TEST_CASE("leapfrog on the linear n=4 oscillator") {
  // x'' = -(x - 1), omega = 1. KDK with v0 = 0 obeys the Stormer recursion
  // x_{k+1} - 2x_k + x_{k-1} = -h^2 (x_k - 1), solved by 1 + A cos(k theta)
  // with cos theta = 1 - h^2/2.
  const ModelParams p{4, 3, 3};
  const double A = 0.5;
  const double T0 = threshold_T0(p);
  CHECK(T0 == doctest::Approx(2 * pi).epsilon(1e-15));
  const int steps = 2000;
  const double h = T0 / steps;
  const double theta = std::acos(1.0 - 0.5 * h * h);

  PhaseState s{0.0, 1.0 + A, 0.0};
  double discrete_err = 0.0, exact_err = 0.0;
  for (int k = 1; k <= steps; ++k) {
    s = step_symplectic(s, h, p);
    discrete_err = std::max(discrete_err, std::abs(s.x - (1.0 + A * std::cos(k * theta))));
    exact_err = std::max(exact_err, std::abs(s.x - (1.0 + A * std::cos(s.t))));
  }
  CHECK(discrete_err < 2e-11);  // rounding over 2000 steps
  // Phase lag grows like t h^2/24, so the error is A h^2/24 * max t|sin t|;
  // the max sits at tan t = -t, t ~ 4.9132.
  const double tm = 4.913180439434884;
  const double predicted = A * h * h / 24.0 * tm * std::abs(std::sin(tm));
  CHECK(exact_err == doctest::Approx(predicted).epsilon(0.01));
  CHECK(exact_err < 1e-6);
}

TEST_CASE("leapfrog is reversible") {
  std::mt19937_64 rng(7);
  for (const ModelParams p : {ModelParams{3, 2, 2}, ModelParams{6, 0.5, 4}, ModelParams{10, 7, 1}}) {
    const auto d = derive_constants(p);
    std::uniform_real_distribution<double> ux(0.5 * d.x_star, 1.5 * d.x_star);
    std::uniform_real_distribution<double> uv(-0.3 * d.x_star, 0.3 * d.x_star);
    const double dt = d.T0 / 500;
    for (int i = 0; i < 200; ++i) {
      const PhaseState s{0.0, ux(rng), uv(rng)};
      const auto back = step_symplectic(step_symplectic(s, dt, p), -dt, p);
      CHECK(std::abs(back.x - s.x) < 1e-12 * d.x_star);
      CHECK(std::abs(back.v - s.v) < 1e-12 * d.x_star);
      CHECK(std::abs(back.t) < 1e-15);
    }
  }
}

TEST_CASE("leapfrog energy error stays bounded") {
  const ModelParams p{5, 2, 2};
  const auto d = derive_constants(p);
  PhaseState s = mid_band_start(p);
  const double c0 = energy(s, p);
  const double dt = d.T0 / 200;
  const int steps = 40000;  // about 200 periods
  double first = 0.0, second = 0.0;
  for (int i = 0; i < steps; ++i) {
    s = step_symplectic(s, dt, p);
    const double dev = std::abs(energy(s, p) - c0) / std::abs(d.c_min);
    (i < steps / 2 ? first : second) = std::max(i < steps / 2 ? first : second, dev);
  }
  // O(dt^2) oscillation, no growth between the halves
  CHECK(first < 1e-3);
  CHECK(second < 1.2 * first);
}

TEST_CASE("leapfrog rejects steps through x = 0") {
  const ModelParams p{3, 2, 2};
  CHECK_THROWS_AS(step_symplectic({0.0, 1e-3, -10.0}, 1.0, p), PositivityViolation);
  CHECK_THROWS_AS(step_symplectic({0.0, 0.0, 0.0}, 0.1, p), PositivityViolation);
}

TEST_CASE("section return time equals the quadrature period") {
  IntegratorConfig cfg;
  cfg.tol = 1e-14;
  for (const int n : {3, 5, 6}) {
    const ModelParams p{n, 2, 2};
    for (const double s : {1e-6, 1e-3, 0.2, 0.5, 0.9, 1 - 1e-5}) {
      const auto d = derive_constants(p);
      const auto orbit = period_at_excess(s * std::abs(d.c_min), p);
      const PhaseState start{0.0, orbit.a, 0.0};
      const auto ret = integrate_until_section(start, Crossing::Ascending, cfg, p);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(std::abs(ret.elapsed - orbit.T) < 1e-7 * orbit.T);
      CHECK(ret.state.x == doctest::Approx(orbit.a).epsilon(1e-6));
      // half way round: (a, 0) -> (b, 0) takes T/2
      const auto half = integrate_until_section(start, Crossing::Descending, cfg, p);
      CHECK(std::abs(half.elapsed - 0.5 * orbit.T) < 1e-7 * orbit.T);
      CHECK(half.state.x == doctest::Approx(orbit.b).epsilon(1e-9));
    }
  }
}

TEST_CASE("section return lands on v = 0 within the requested tolerance") {
  const ModelParams p{3, 2, 2};
  IntegratorConfig cfg;
  const double omega = linearized_frequency(p);
  const auto ret = integrate_until_section(mid_band_start(p), Crossing::Ascending, cfg, p);
  CHECK(std::abs(ret.state.v) < cfg.tol * std::max(1.0, ret.state.x * omega));
  CHECK(ret.steps > 0);
}

TEST_CASE("section return from the equilibrium is immediate") {
  const ModelParams p{3, 2, 2};
  const auto d = derive_constants(p);
  const auto ret = integrate_until_section({0.0, d.x_star, 0.0}, Crossing::Ascending, {}, p);
  CHECK(ret.elapsed == 0.0);
  CHECK(ret.steps == 0);
}

TEST_CASE("n=4 returns T0 at every amplitude") {
  const ModelParams p{4, 3, 3};
  const double T0 = threshold_T0(p);
  for (const double A : {1e-4, 0.1, 0.5, 0.9, 0.999}) {
    const auto ret = integrate_until_section({0.0, 1.0 - A, 0.0}, Crossing::Ascending, {}, p);
    CAPTURE(A);
    CHECK(std::abs(ret.elapsed - T0) < 1e-8 * T0);
  }
}

TEST_CASE("integrate_to_times follows the closed form for n=4") {
  const ModelParams p{4, 3, 3};
  std::vector<double> times;
  for (int i = 0; i <= 64; ++i) times.push_back(i * 0.25);
  const auto out = integrate_to_times({0.0, 1.5, 0.0}, times, {}, p);
  REQUIRE(out.size() == times.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].t == times[i]);
    CHECK(std::abs(out[i].x - (1.0 + 0.5 * std::cos(times[i]))) < 1e-10);
    CHECK(std::abs(out[i].v + 0.5 * std::sin(times[i])) < 1e-10);
  }
  const std::vector<double> backwards{1.0, 0.5};
  CHECK_THROWS_AS(integrate_to_times({0.0, 1.5, 0.0}, backwards, {}, p), DomainError);
}

TEST_CASE("integrator configuration and budget") {
  const ModelParams p{3, 2, 2};
  IntegratorConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.tol = 1e-3;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  IntegratorConfig neg;
  neg.dt = -1.0;
  CHECK_THROWS_AS(neg.validate(), DomainError);

  IntegratorConfig tiny;
  tiny.max_steps = 5;
  CHECK_THROWS_AS(integrate_until_section(mid_band_start(p), Crossing::Ascending, tiny, p),
                  BudgetExceeded);
}
