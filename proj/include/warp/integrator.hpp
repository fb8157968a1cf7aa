#pragma once

#include <span>
#include <vector>

#include "warp/model.hpp"

namespace warp {

struct IntegratorConfig {
  double dt = 1e-2;        // leapfrog step; initial trial step of the adaptive pair
  double tol = 1e-12;      // relative tolerance of the adaptive pair
  long max_steps = 20'000'000;

  void validate() const;
};

// Kick-drift-kick leapfrog for x'' = -phi(x). Second order, reversible,
// symplectic. Throws PositivityViolation if the drift leaves x > 0.
PhaseState step_symplectic(const PhaseState& s, double dt, const ModelParams& p);

// Which crossing of the section v = 0 terminates the integration.
enum class Crossing {
  Ascending,   // v goes from negative to non-negative (x at a minimum)
  Descending,  // v goes from positive to non-positive (x at a maximum)
};

struct SectionHit {
  PhaseState state;
  double elapsed;
  long steps;
};

// Adaptive Dormand-Prince 5(4) integration from s0 until the first strict
// crossing of v = 0 in the given direction. The crossing time is found on the
// dense-output interpolant and polished by re-stepping from the last accepted
// state. Starting exactly at the equilibrium returns immediately with
// elapsed = 0.
SectionHit integrate_until_section(const PhaseState& s0, Crossing direction,
                                   const IntegratorConfig& cfg, const ModelParams& p);

// Adaptive integration reporting the state at each requested time (ascending,
// all >= s0.t). Steps are clipped to land exactly on the requested times.
std::vector<PhaseState> integrate_to_times(const PhaseState& s0, std::span<const double> times,
                                           const IntegratorConfig& cfg, const ModelParams& p);

}  // namespace warp
