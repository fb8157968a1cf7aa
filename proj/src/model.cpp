#include "warp/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "warp/errors.hpp"

namespace warp {

namespace {

void require_positive_x(double x, const char* where) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(where) + ": x must be positive, got " + std::to_string(x));
  }
}

// (1+e)^p - 1 - p e, accurate for small |e|.
double binomial_tail(double e, double p) {
  if (std::abs(e) >= 0.125) {
    return std::pow(1.0 + e, p) - 1.0 - p * e;
  }
  double coeff = p * (p - 1.0) / 2.0;
  double power = e * e;
  double sum = 0.0;
  for (int j = 2; j < 64; ++j) {
    const double term = coeff * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    coeff *= (p - j) / (j + 1.0);
    power *= e;
  }
  return sum;
}

}  // namespace

void ModelParams::validate() const {
  if (n < 3) {
    throw DomainError("dimension must satisfy n >= 3, got n = " + std::to_string(n));
  }
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw DomainError("fiber scalar curvature R must be positive and finite");
  }
  if (!(Rt > 0.0) || !std::isfinite(Rt)) {
    throw DomainError("target scalar curvature Rt must be positive and finite");
  }
}

DerivedConstants derive_constants(const ModelParams& p) {
  p.validate();
  DerivedConstants d{};
  const double ratio = p.R / p.Rt;
  d.f_star = std::sqrt(ratio);
  d.x_star = std::pow(ratio, p.n / 4.0);
  d.alpha = d.x_star;
  d.T0 = 2.0 * std::numbers::pi * std::sqrt(p.n - 1.0) / std::sqrt(p.Rt);
  d.c_min = potential(d.x_star, p);
  d.c_crit = 0.0;
  return d;
}

double residual_E(double f, double fp, double fpp, const ModelParams& p) {
  const double m = p.n - 1.0;
  return p.Rt * f * f + 2.0 * m * f * fpp + m * (p.n - 2.0) * fp * fp - p.R;
}

double force(double x, const ModelParams& p) {
  require_positive_x(x, "force");
  const double k = p.n / (4.0 * (p.n - 1.0));
  return k * p.Rt * x - k * p.R * std::pow(x, 1.0 - 4.0 / p.n);
}

double potential(double x, const ModelParams& p) {
  require_positive_x(x, "potential");
  const double nn = p.n;
  const double quad = nn * p.Rt / (8.0 * (nn - 1.0));
  const double pw = nn * p.R / (4.0 * (nn - 1.0)) * nn / (2.0 * nn - 4.0);
  return quad * x * x - pw * std::pow(x, (2.0 * nn - 4.0) / nn);
}

double potential_excess(double x, const ModelParams& p) {
  require_positive_x(x, "potential_excess");
  const double x_star = std::pow(p.R / p.Rt, p.n / 4.0);
  return potential_excess_at_offset(x - x_star, p);
}

double potential_excess_at_offset(double w, const ModelParams& p) {
  const double x_star = std::pow(p.R / p.Rt, p.n / 4.0);
  const double e = w / x_star;
  if (std::abs(e) >= 0.5) {
    return potential(x_star + w, p) - potential(x_star, p);
  }
  // Using phi(x_star) = 0, G(x) - G(x_star) = k x*^2 [e^2 - (2/q)((1+e)^q - 1 - q e)]
  // with q = (2n-4)/n and k the quadratic coefficient of G.
  const double q = (2.0 * p.n - 4.0) / p.n;
  const double k = p.n * p.Rt / (8.0 * (p.n - 1.0));
  return k * x_star * x_star * (e * e - (2.0 / q) * binomial_tail(e, q));
}

double force_slope(double x, const ModelParams& p) {
  require_positive_x(x, "force_slope");
  const double k = p.n / (4.0 * (p.n - 1.0));
  return k * p.Rt - k * p.R * (1.0 - 4.0 / p.n) * std::pow(x, -4.0 / p.n);
}

double energy(const PhaseState& s, const ModelParams& p) {
  return 0.5 * s.v * s.v + potential(s.x, p);
}

double linearized_frequency(const ModelParams& p) {
  p.validate();
  return std::sqrt(p.Rt / (p.n - 1.0));
}

WarpJet to_f_coords(double x, double v, const ModelParams& p) {
  require_positive_x(x, "to_f_coords");
  const double s = 2.0 / p.n;
  const double f = std::pow(x, s);
  const double d1 = s * f / x;               // (2/n) x^{2/n-1}
  const double d2 = (s - 1.0) * d1 / x;      // (2/n)(2/n-1) x^{2/n-2}
  return {f, d1 * v, d2 * v * v - d1 * force(x, p)};
}

}  // namespace warp
