#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "warp/errors.hpp"
#include "warp/integrator.hpp"
#include "warp/model.hpp"
#include "warp/period.hpp"

namespace warp {

struct ProfileSample {
  double t;
  double x;
  double v;
  double f;
  double fp;
  double fpp;
};

// One period of a positive periodic solution, launched from the inner
// turning point (x = a, v = 0) and sampled uniformly on [0, T]; the last
// sample repeats the first state up to closure_error.
struct SolutionProfile {
  ModelParams params;
  double T = 0.0;
  double c = 0.0;
  std::vector<ProfileSample> samples;
  double residual_sup = 0.0;
  double closure_error = 0.0;
  int root_count = 1;  // bracketed energies with this minimal period
};

// Reported when a solved profile misses the tolerances declared at solve time.
struct AccuracyNotMet : Error {
  using Error::Error;
};

// T(c) tabulated over the band, sorted by increasing energy.
struct PeriodTable {
  ModelParams params;
  std::vector<OrbitSpec> rows;
  double T_min = 0.0;
  double T_max = 0.0;
  bool isochronous = false;  // T(c) constant to 1e-9 relative
};

PeriodTable build_period_table(const ModelParams& p, int points = 96,
                               const PeriodOptions& opts = {}, int threads = 1);

// Every energy whose minimal period equals T, one per sign change of
// T(c) - T between table rows, refined by bracketed root finding. Sorted by
// increasing energy; empty when T is outside the tabulated range.
std::vector<OrbitSpec> locate_energies(double T, const PeriodTable& table,
                                       const PeriodOptions& opts = {});

struct SolveOptions {
  bool enforce_threshold = true;  // refuse T <= T0 (1 + 1e-9)
  int table_points = 96;
  PeriodOptions period;
  IntegratorConfig integrator{};
  double residual_tol = 1e-8;  // relative to R
  double closure_tol = 1e-8;   // relative to (x_star, x_star * omega)
  int threads = 1;
};

SolutionProfile solve_period(double T, const ModelParams& p, int n_samples,
                             const SolveOptions& opts = {});

// Same, with a table already built for p.
SolutionProfile solve_period(double T, const PeriodTable& table, int n_samples,
                             const SolveOptions& opts = {});

// Constant solution f = f_star sampled like a solved profile.
SolutionProfile constant_profile(const ModelParams& p, double T, int n_samples);

// Rotate the periodic samples by `offset` positions; t is re-based to 0.
SolutionProfile rotate_profile(const SolutionProfile& prof, std::size_t offset);

struct SupNorm {
  double value = 0.0;
  std::size_t index = 0;
};

struct AuditTolerances {
  double chain_rule = 1e-8;  // relative to R
  double finite_diff = 1e-5; // relative to R
  double energy = 1e-10;     // relative to |c_min|
};

struct AuditReport {
  SupNorm chain_rule;   // residual of (E) with derivatives from (x, v)
  SupNorm stored_jet;   // residual of (E) on the stored (f, f', f'')
  SupNorm finite_diff;  // residual of (E) with derivatives from f samples only
  SupNorm energy;       // |v^2/2 + G(x) - c|
  AuditTolerances tol;
  std::vector<std::string> flags;
  bool pass = true;
};

AuditReport audit_profile(const SolutionProfile& prof, const AuditTolerances& tol = {});

}  // namespace warp
