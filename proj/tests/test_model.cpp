#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "warp/errors.hpp"
#include "warp/model.hpp"

using namespace warp;

namespace {

constexpr double pi = std::numbers::pi;

// Golden-section minimizer, used as an independent oracle for c_min.
template <class F>
double golden_min(F f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - g * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + g * (b - a); f2 = f(x2);
    }
  }
  return f(0.5 * (a + b));
}

// Composite Simpson rule.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Fourth-order central difference.
template <class F>
double derivative(F f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(3, 10);
  std::uniform_real_distribution<double> curv(0.1, 10.0);
  return {dim(rng), curv(rng), curv(rng)};
}

}  // namespace

TEST_CASE("derive_constants closed forms") {
  const auto d = derive_constants({3, 2.0, 2.0});
  CHECK(d.f_star == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.x_star == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.T0 == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(d.c_crit == 0.0);
  CHECK(d.c_min == doctest::Approx(-0.75).epsilon(1e-15));

  CHECK(derive_constants({3, 2.0, 0.5}).T0 == doctest::Approx(4 * pi).epsilon(1e-15));

  const ModelParams p{3, 2.0, 2.0};
  const double oracle = golden_min([&](double x) { return potential(x, p); }, 0.1, 5.0);
  CHECK(d.c_min == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("derived constants are mutually consistent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive_constants(p);
    CHECK(std::pow(d.x_star, 2.0 / p.n) == doctest::Approx(d.f_star).epsilon(1e-13));
    CHECK(std::abs(residual_E(d.f_star, 0.0, 0.0, p)) < 1e-13 * p.R);
    CHECK(d.c_min < 0.0);
    CHECK(d.alpha == d.x_star);
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(derive_constants({2, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(derive_constants({3, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(derive_constants({3, 1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(derive_constants({3, NAN, 1.0}), DomainError);
  CHECK_THROWS_AS(force(0.0, {3, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(potential(-1.0, {3, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(to_f_coords(0.0, 1.0, {3, 1.0, 1.0}), DomainError);
}

TEST_CASE("residual_E examples") {
  CHECK(residual_E(1.0, 0.0, 0.0, {3, 2.0, 2.0}) == 0.0);
  CHECK(residual_E(1.0, 0.0, 0.0, {3, 2.0, 3.0}) == doctest::Approx(1.0));
}

TEST_CASE("force vanishes at the equilibrium with slope Rt/(n-1)") {
  CHECK(force(1.0, {4, 3.0, 3.0}) == doctest::Approx(0.0));
  const ModelParams p{3, 2.0, 2.0};
  const auto d = derive_constants(p);
  CHECK(std::abs(force(d.x_star, p)) < 1e-15);
  const double slope = derivative([&](double x) { return force(x, p); }, d.x_star, 1e-3);
  CHECK(slope == doctest::Approx(1.0).epsilon(1e-10));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto q = random_params(rng);
    const auto dq = derive_constants(q);
    const double h = 1e-3 * dq.x_star;
    CHECK(force(dq.x_star - h, q) < 0.0);
    CHECK(force(dq.x_star + h, q) > 0.0);
  }
}

TEST_CASE("potential normalization and quadrature cross-check") {
  const ModelParams p{3, 2.0, 2.0};
  CHECK(std::abs(potential(1e-300, p)) < 1e-150);
  CHECK(potential(1.0, p) == doctest::Approx(-0.75).epsilon(1e-15));
  // x = s^3 removes the x^{-1/3} singularity of phi at 0 for n = 3
  const double integral =
      simpson([&](double s) { return s > 0 ? force(s * s * s, p) * 3 * s * s : 0.0; }, 0.0, 1.0, 2000);
  CHECK(integral == doctest::Approx(-0.75).epsilon(1e-10));
}

TEST_CASE("potential derivative equals force (property)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(0.1, 5.0);
  for (const int n : {3, 4, 5, 7, 10}) {
    const ModelParams p{n, 1.7, 0.9};
    for (int i = 0; i < 50; ++i) {
      const double x = xs(rng);
      const double fd = derivative([&](double u) { return potential(u, p); }, x, 1e-3 * x);
      const double scale = p.n * p.Rt / (4.0 * (p.n - 1.0)) * x;  // size of the linear term
      CHECK(std::abs(fd - force(x, p)) < 1e-9 * scale);
    }
  }
}

TEST_CASE("potential is a single well with G(0+) = 0 and G -> infinity") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive_constants(p);
    double prev = potential(1e-6 * d.x_star, p);
    for (int i = 1; i <= 200; ++i) {
      const double x = d.x_star * (1e-6 + i * (1.0 - 1e-6) / 200.0);
      const double g = potential(x, p);
      if (i < 200) CHECK(g < prev);
      prev = g;
    }
    for (int i = 1; i <= 200; ++i) {
      const double x = d.x_star * (1.0 + i * 0.05);
      const double g = potential(x, p);
      CHECK(g > prev);
      prev = g;
    }
    CHECK(potential(1e6 * d.x_star, p) > 0.0);
  }
}

TEST_CASE("potential_excess matches G - c_min without cancellation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive_constants(p);
    for (const double e : {-0.9, -0.6, -0.3, 0.2, 0.7, 3.0}) {
      const double x = d.x_star * (1.0 + e);
      CHECK(potential_excess(x, p) == doctest::Approx(potential(x, p) - d.c_min).epsilon(1e-11));
    }
    // near the center the excess is the harmonic term (Rt/(n-1))(x - x*)^2 / 2
    const double omega2 = p.Rt / (p.n - 1.0);
    for (const double e : {1e-6, -1e-6, 1e-8, -3e-9}) {
      const double dx = e * d.x_star;
      const double harmonic = 0.5 * omega2 * dx * dx;
      CHECK(potential_excess(d.x_star + dx, p) == doctest::Approx(harmonic).epsilon(1e-5));
    }
    CHECK(potential_excess(d.x_star, p) == 0.0);
  }
  // long-double reference at moderate offsets
  const ModelParams p{5, 2.0, 2.0};
  const auto d = derive_constants(p);
  for (const double e : {1e-3, -2e-3, 0.01, -0.05, 0.1}) {
    const long double x = d.x_star * (1.0L + e);
    const long double n = p.n;
    const long double k1 = n * p.Rt / (8.0L * (n - 1.0L));
    const long double k2 = n * p.R / (4.0L * (n - 1.0L)) * n / (2.0L * n - 4.0L);
    const long double q = (2.0L * n - 4.0L) / n;
    const long double xs = d.x_star;
    const long double ref = (k1 * x * x - k2 * std::pow(x, q)) - (k1 * xs * xs - k2 * std::pow(xs, q));
    CHECK(potential_excess(static_cast<double>(x), p) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
  }
}

TEST_CASE("n = 4 reduces to a linear equation") {
  const ModelParams p{4, 3.0, 3.0};
  CHECK(force(1.0, p) == doctest::Approx(0.0));
  // phi(x) = (Rt/3)(x - R/Rt): three points are collinear
  const double x0 = 0.3, x1 = 1.7, x2 = 4.2;
  const double s01 = (force(x1, p) - force(x0, p)) / (x1 - x0);
  const double s12 = (force(x2, p) - force(x1, p)) / (x2 - x1);
  CHECK(s01 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s12 == doctest::Approx(s01).epsilon(1e-14));
}

TEST_CASE("energy examples") {
  const ModelParams p{3, 2.0, 2.0};
  CHECK(energy({0.0, 1.0, 0.0}, p) == doctest::Approx(-0.75));
  CHECK(energy({0.0, 1.0, 1.0}, p) == doctest::Approx(-0.25));
}

TEST_CASE("linearized frequency") {
  CHECK(linearized_frequency({3, 1.0, 2.0}) == doctest::Approx(1.0));
  CHECK(linearized_frequency({5, 1.0, 4.0}) == doctest::Approx(1.0));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive_constants(p);
    const double w = linearized_frequency(p);
    CHECK(w * w * (p.n - 1.0) == doctest::Approx(p.Rt).epsilon(1e-15));
    CHECK(2 * pi / w == doctest::Approx(d.T0).epsilon(1e-15));
    const double slope = derivative([&](double x) { return force(x, p); }, d.x_star, 1e-3 * d.x_star);
    CHECK(std::sqrt(slope) == doctest::Approx(w).epsilon(1e-8));
  }
}

TEST_CASE("to_f_coords examples") {
  for (const int n : {3, 4, 6}) {
    const ModelParams p{n, 2.0, 1.5};
    const auto j = to_f_coords(1.0, 0.0, p);
    CHECK(j.f == 1.0);
    CHECK(j.fp == 0.0);
    CHECK(j.fpp == doctest::Approx(-(2.0 / n) * force(1.0, p)));
    const auto d = derive_constants(p);
    const auto js = to_f_coords(d.x_star, 0.0, p);
    CHECK(js.f == doctest::Approx(d.f_star).epsilon(1e-15));
    CHECK(js.fp == 0.0);
    CHECK(std::abs(js.fpp) < 1e-14);
  }
}

TEST_CASE("reduction identity: residual_E(to_f_coords(x, v)) = 0 for all (x, v)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive_constants(p);
    std::uniform_real_distribution<double> xs(0.05 * d.x_star, 5.0 * d.x_star);
    std::uniform_real_distribution<double> vs(-3.0 * d.x_star, 3.0 * d.x_star);
    for (int i = 0; i < 100; ++i) {
      const double x = xs(rng), v = vs(rng);
      const auto j = to_f_coords(x, v, p);
      // scale: the largest term of (E) at this point
      const double m = p.n - 1.0;
      const double scale = std::max({p.R, p.Rt * j.f * j.f, std::abs(2 * m * j.f * j.fpp),
                                     m * (p.n - 2.0) * j.fp * j.fp});
      CHECK(std::abs(residual_E(j, p)) < 1e-12 * scale);
    }
  }
}
