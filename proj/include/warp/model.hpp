#pragma once

// Constant-scalar-curvature equation for the warped product S^1 x_f N:
//
//   Rt f^2 + 2(n-1) f f'' + (n-1)(n-2) f'^2 - R = 0
//
// and its reduction, through f = x^{2/n}, to the conservative oscillator
// x'' + phi(x) = 0 with potential G (G' = phi, G(0+) = 0).

#include <array>

namespace warp {

struct ModelParams {
  int n = 3;        // manifold dimension, fiber has dimension n-1
  double R = 1.0;   // fiber scalar curvature
  double Rt = 1.0;  // target scalar curvature of the warped product

  // Throws DomainError unless n >= 3, R > 0, Rt > 0 (all finite).
  void validate() const;
};

struct DerivedConstants {
  double x_star;  // equilibrium of the reduced equation
  double f_star;  // constant solution sqrt(R/Rt) = x_star^{2/n}
  double alpha;   // same as x_star
  double T0;      // threshold period 2 pi sqrt(n-1) / sqrt(Rt)
  double c_min;   // G(x_star), energy of the center
  double c_crit;  // G(0+) = 0, energy of the bounding orbit
};

// A point of the reduced system; v = dx/dt.
struct PhaseState {
  double t = 0.0;
  double x = 1.0;
  double v = 0.0;
};

// Values of the warping function and its first two derivatives.
struct WarpJet {
  double f;
  double fp;
  double fpp;
};

DerivedConstants derive_constants(const ModelParams& p);

double residual_E(double f, double fp, double fpp, const ModelParams& p);
inline double residual_E(const WarpJet& j, const ModelParams& p) {
  return residual_E(j.f, j.fp, j.fpp, p);
}

// phi(x) = n Rt/(4(n-1)) x - n R/(4(n-1)) x^{1-4/n}
double force(double x, const ModelParams& p);

// G(x) = n Rt/(8(n-1)) x^2 - n R/(4(n-1)) * n/(2n-4) * x^{(2n-4)/n}
double potential(double x, const ModelParams& p);

// G(x) - c_min, evaluated without the catastrophic cancellation that the
// plain difference suffers near x_star. Non-negative up to rounding.
double potential_excess(double x, const ModelParams& p);

// G(x_star + w) - c_min; keeps full relative precision in small offsets w.
double potential_excess_at_offset(double w, const ModelParams& p);

// phi'(x)
double force_slope(double x, const ModelParams& p);

// c = v^2/2 + G(x)
double energy(const PhaseState& s, const ModelParams& p);

// sqrt(Rt/(n-1)), frequency of small oscillations about the center.
double linearized_frequency(const ModelParams& p);

inline double threshold_T0(const ModelParams& p) { return derive_constants(p).T0; }

// (x, v) -> (f, f', f'') along a solution of the reduced equation.
WarpJet to_f_coords(double x, double v, const ModelParams& p);

}  // namespace warp
