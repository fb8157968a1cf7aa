#pragma once

#include <string>
#include <utility>
#include <vector>

#include "warp/solver.hpp"

namespace warp {

// How the warping function enters the fiber part of the metric.
enum class Warping {
  FSquared,  // dt^2 + f(t)^2 h
  Linear,    // dt^2 + f(t) h
};

const char* to_string(Warping w);

struct ConformalReport {
  Warping warping = Warping::FSquared;
  double tt_residual = 0.0;     // sup |2 (f)'_fd - 2 f'|
  double fiber_residual = 0.0;  // sup |f w'_fd - 2 f' w|, w the fiber warping
  double tt_scale = 0.0;        // sup |2 f'|
  double fiber_scale = 0.0;     // sup |2 f' w|
  double tol = 0.0;
  bool tt_pass = false;  // differentiation quality of f; same for both warpings
  bool pass = false;     // fiber identity, the only convention-dependent part
};

// Checks L_X g = 2 f' g for X = f d/dt componentwise, with derivatives of the
// sampled f (and of w) taken by periodic finite differences. The tt component
// reads 2 f' = 2 f' whatever the warping, so it only measures how well f can
// be differentiated; the verdict comes from the fiber component.
ConformalReport conformal_field_check(const SolutionProfile& prof,
                                      Warping warping = Warping::FSquared, double tol = 1e-5);

struct CurvatureReport {
  std::vector<std::pair<double, double>> Rt_profile;  // (t, recomputed Rt(t))
  double max_dev = 0.0;     // sup |Rt(t) - Rt|
  double tol = 0.0;         // relative to Rt
  bool pass = false;
  // f^2 warping satisfies the conformal identity and f warping does not (for
  // non-constant f); false flags a profile where that adjudication breaks.
  bool convention_consistent = false;
  ConformalReport conformal_f2;
  ConformalReport conformal_f;
};

// Scalar curvature of dt^2 + f^2 h recomputed from the f samples alone:
// Rt(t) = (R - 2(n-1) f f'' - (n-1)(n-2) f'^2) / f^2. Requires >= 64 samples
// and f > 0 everywhere. Passes when max_dev < tol * Rt.
CurvatureReport curvature_audit(const SolutionProfile& prof, double tol = 1e-4);

}  // namespace warp
