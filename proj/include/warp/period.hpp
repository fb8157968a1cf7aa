#pragma once

#include <span>
#include <string>
#include <vector>

#include "warp/model.hpp"

namespace warp {

// Admissible energies are c in [c_min + rel_lo |c_min|, -rel_hi |c_min|].
// The bounding orbit (c = 0) touches x = 0 where the warping degenerates.
struct EnergyClamp {
  double rel_lo = 1e-9;
  double rel_hi = 1e-9;
};

struct PeriodOptions {
  EnergyClamp clamp;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

struct TurningPoints {
  double a;  // inner, 0 < a < x_star
  double b;  // outer, b > x_star
};

// One periodic orbit: energy c, its excess over the center c - c_min (kept
// separately because c itself cannot resolve tiny oscillations), turning
// points and period.
struct OrbitSpec {
  double c;
  double excess;
  double a;
  double b;
  double T;
};

TurningPoints turning_points(double c, const ModelParams& p, const EnergyClamp& clamp = {});
TurningPoints turning_points_at_excess(double excess, const ModelParams& p,
                                       const EnergyClamp& clamp = {});

// T(c) = sqrt(2) * integral_a^b du / sqrt(c - G(u)), after u = mid + half*sin(theta).
OrbitSpec period_quadrature(double c, const ModelParams& p, const PeriodOptions& opts = {});
OrbitSpec period_at_excess(double excess, const ModelParams& p, const PeriodOptions& opts = {});

struct ScanEntry {
  OrbitSpec orbit{};
  bool ok = false;
  std::string error;
};

std::vector<ScanEntry> period_scan(std::span<const double> c_grid, const ModelParams& p,
                                   const PeriodOptions& opts = {}, int threads = 0);
std::vector<ScanEntry> period_scan_excess(std::span<const double> excess_grid,
                                          const ModelParams& p, const PeriodOptions& opts = {},
                                          int threads = 0);

// Excess energies spaced uniformly in logit(s), s = excess/|c_min|, between
// the given fractions (default: the whole clamped band). Dense toward both
// the center and the bounding orbit.
std::vector<double> band_excess_grid(int count, const ModelParams& p, const EnergyClamp& clamp = {});
std::vector<double> band_excess_grid(int count, const ModelParams& p, double s_lo, double s_hi);

}  // namespace warp
