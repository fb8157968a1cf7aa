#include "warp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "warp/errors.hpp"
#include "warp/finite_diff.hpp"
#include "warp/roots.hpp"

namespace warp {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

}  // namespace

PeriodTable build_period_table(const ModelParams& p, int points, const PeriodOptions& opts,
                               int threads) {
  p.validate();
  if (points < 2) throw DomainError("period table needs at least 2 points");
  const auto grid = band_excess_grid(points, p, opts.clamp);
  const auto scan = period_scan_excess(grid, p, opts, threads);
  PeriodTable table;
  table.params = p;
  for (const auto& e : scan) {
    if (e.ok) table.rows.push_back(e.orbit);
  }
  if (table.rows.empty()) {
    throw QuadratureNonConvergence("period table: no admissible energy could be evaluated");
  }
  const auto [lo, hi] = std::minmax_element(table.rows.begin(), table.rows.end(),
                                            [](const auto& a, const auto& b) { return a.T < b.T; });
  table.T_min = lo->T;
  table.T_max = hi->T;
  table.isochronous = (table.T_max - table.T_min) <= 1e-9 * 0.5 * (table.T_max + table.T_min);
  return table;
}

std::vector<OrbitSpec> locate_energies(double T, const PeriodTable& table,
                                       const PeriodOptions& opts) {
  std::vector<OrbitSpec> roots;
  if (table.isochronous || T < table.T_min || T > table.T_max) return roots;
  const auto& rows = table.rows;
  const auto g = [&](double excess) { return period_at_excess(excess, table.params, opts).T - T; };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double gi = rows[i].T - T;
    if (gi == 0.0) {
      roots.push_back(rows[i]);
      continue;
    }
    if (i + 1 == rows.size()) break;
    const double gj = rows[i + 1].T - T;
    if ((gi < 0.0) == (gj < 0.0) || gj == 0.0) continue;
    const auto r = find_root(g, rows[i].excess, rows[i + 1].excess, gi, gj, 1e-13, 0.0);
    roots.push_back(period_at_excess(r.x, table.params, opts));
  }
  return roots;
}

SolutionProfile solve_period(double T, const ModelParams& p, int n_samples,
                             const SolveOptions& opts) {
  p.validate();
  const auto d = derive_constants(p);
  if (opts.enforce_threshold && !(T > d.T0 * (1.0 + 1e-9))) {
    throw ThresholdViolation("T = " + fmt(T) + " <= T0 = " + fmt(d.T0) +
                             ": only constant periodic solutions are admitted at or below the threshold");
  }
  return solve_period(T, build_period_table(p, opts.table_points, opts.period, opts.threads),
                      n_samples, opts);
}

SolutionProfile solve_period(double T, const PeriodTable& table, int n_samples,
                             const SolveOptions& opts) {
  const ModelParams& p = table.params;
  p.validate();
  const auto d = derive_constants(p);
  const double omega = linearized_frequency(p);
  if (n_samples < 16) throw DomainError("solve_period needs n_samples >= 16");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("period T must be positive and finite");
  if (opts.enforce_threshold && !(T > d.T0 * (1.0 + 1e-9))) {
    throw ThresholdViolation("T = " + fmt(T) + " <= T0 = " + fmt(d.T0) +
                             ": only constant periodic solutions are admitted at or below the threshold");
  }
  if (table.isochronous) {
    throw NoBracket("T(c) = T0 = " + fmt(table.T_min) +
                        " for every admissible energy (isochronous center); minimal period " +
                        fmt(T) + " is not attained",
                    table.T_min, table.T_max);
  }
  const auto roots = locate_energies(T, table, opts.period);
  if (roots.empty()) {
    throw NoBracket("no admissible energy has minimal period " + fmt(T) + "; scanned T(c) in [" +
                        fmt(table.T_min) + ", " + fmt(table.T_max) + "]",
                    table.T_min, table.T_max);
  }
  const OrbitSpec& orbit = roots.front();

  std::vector<double> times(n_samples);
  for (int i = 0; i < n_samples; ++i) times[i] = T * i / (n_samples - 1.0);
  times.back() = T;
  IntegratorConfig cfg = opts.integrator;
  cfg.dt = std::min(cfg.dt, T / (n_samples - 1.0));
  const auto states = integrate_to_times({0.0, orbit.a, 0.0}, times, cfg, p);

  SolutionProfile prof;
  prof.params = p;
  prof.T = T;
  prof.c = orbit.c;
  prof.root_count = static_cast<int>(roots.size());
  prof.samples.reserve(states.size());
  for (const auto& s : states) {
    const auto jet = to_f_coords(s.x, s.v, p);
    prof.samples.push_back({s.t, s.x, s.v, jet.f, jet.fp, jet.fpp});
    prof.residual_sup = std::max(prof.residual_sup, std::abs(residual_E(jet, p)));
  }
  const auto& first = prof.samples.front();
  const auto& last = prof.samples.back();
  prof.closure_error = std::max(std::abs(last.x - first.x) / d.x_star,
                                std::abs(last.v - first.v) / (d.x_star * omega));

  if (!(prof.residual_sup < opts.residual_tol * p.R)) {
    throw AccuracyNotMet("profile residual " + fmt(prof.residual_sup) + " exceeds " +
                         fmt(opts.residual_tol * p.R));
  }
  if (!(prof.closure_error < opts.closure_tol)) {
    throw AccuracyNotMet("profile closure error " + fmt(prof.closure_error) + " exceeds " +
                         fmt(opts.closure_tol));
  }
  return prof;
}

SolutionProfile constant_profile(const ModelParams& p, double T, int n_samples) {
  const auto d = derive_constants(p);
  if (n_samples < 2) throw DomainError("constant_profile needs at least 2 samples");
  SolutionProfile prof;
  prof.params = p;
  prof.T = T;
  prof.c = d.c_min;
  for (int i = 0; i < n_samples; ++i) {
    const double t = (i + 1 == n_samples) ? T : T * i / (n_samples - 1.0);
    prof.samples.push_back({t, d.x_star, 0.0, d.f_star, 0.0, 0.0});
  }
  prof.residual_sup = std::abs(residual_E(d.f_star, 0.0, 0.0, p));
  return prof;
}

SolutionProfile rotate_profile(const SolutionProfile& prof, std::size_t offset) {
  const std::size_t m = prof.samples.size();
  if (m < 2) return prof;
  const std::size_t unique = m - 1;
  SolutionProfile out = prof;
  for (std::size_t j = 0; j < unique; ++j) {
    out.samples[j] = prof.samples[(j + offset) % unique];
    out.samples[j].t = prof.T * j / static_cast<double>(unique);
  }
  out.samples[unique] = out.samples[0];
  out.samples[unique].t = prof.T;
  return out;
}

AuditReport audit_profile(const SolutionProfile& prof, const AuditTolerances& tol) {
  AuditReport rep;
  rep.tol = tol;
  const ModelParams& p = prof.params;
  const auto d = derive_constants(p);
  const auto& s = prof.samples;
  const auto bump = [](SupNorm& n, double v, std::size_t i) {
    if (!(v <= n.value)) {  // also captures NaN
      n.value = v;
      n.index = i;
    }
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].x > 0.0) || !(s[i].f > 0.0)) {
      rep.flags.push_back("non-positive x or f at sample " + std::to_string(i));
      continue;
    }
    bump(rep.chain_rule, std::abs(residual_E(to_f_coords(s[i].x, s[i].v, p), p)), i);
    bump(rep.stored_jet, std::abs(residual_E(s[i].f, s[i].fp, s[i].fpp, p)), i);
    bump(rep.energy, std::abs(0.5 * s[i].v * s[i].v + potential(s[i].x, p) - prof.c), i);
  }
  if (s.size() >= 6) {
    std::vector<double> f(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) f[i] = s[i].f;
    const auto der = periodic_derivatives(f, prof.T / (s.size() - 1.0));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t k = (i + 1 == s.size()) ? 0 : i;
      bump(rep.finite_diff, std::abs(residual_E(f[k], der.d1[k], der.d2[k], p)), i);
    }
  } else {
    rep.flags.push_back("too few samples for finite-difference derivatives");
  }
  const auto check = [&](const char* name, const SupNorm& n, double limit) {
    if (!(n.value <= limit)) {
      rep.flags.push_back(std::string(name) + " residual " + fmt(n.value) + " at sample " +
                          std::to_string(n.index) + " exceeds " + fmt(limit));
    }
  };
  check("chain_rule", rep.chain_rule, tol.chain_rule * p.R);
  check("stored_jet", rep.stored_jet, tol.chain_rule * p.R);
  check("finite_diff", rep.finite_diff, tol.finite_diff * p.R);
  check("energy", rep.energy, tol.energy * std::abs(d.c_min));
  rep.pass = rep.flags.empty();
  return rep;
}

}  // namespace warp
