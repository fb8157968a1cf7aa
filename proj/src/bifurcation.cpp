#include "warp/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "warp/errors.hpp"
#include "warp/parallel.hpp"
#include "warp/solver.hpp"

namespace warp {

namespace {

DiagramRow make_row(double T, int k, const OrbitSpec& o, int n) {
  const double e = 2.0 / n;
  return {T, k, o.c, o.b - o.a, std::pow(o.b, e), std::pow(o.a, e)};
}

// Where amplitude^2 along a branch reaches zero, extrapolated from the rows
// nearest its vanishing end. Near a branch point T - T_k is proportional to
// amplitude^2 to leading order.
double extrapolate_branch_point(const std::vector<DiagramRow>& branch) {
  const bool low_end = branch.front().amplitude <= branch.back().amplitude;
  std::vector<DiagramRow> near;
  for (std::size_t j = 0; j < std::min<std::size_t>(3, branch.size()); ++j) {
    near.push_back(low_end ? branch[j] : branch[branch.size() - 1 - j]);
  }
  const double t_end = near.front().T;
  if (near.size() == 1) return t_end;
  const auto sq = [](double a) { return a * a; };
  if (near.size() == 3) {
    // quadratic through (T_j, A_j^2), root nearest the end row
    const double x0 = near[0].T, x1 = near[1].T, x2 = near[2].T;
    const double y0 = sq(near[0].amplitude), y1 = sq(near[1].amplitude), y2 = sq(near[2].amplitude);
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double qa = (d12 - d01) / (x2 - x0);
    const double qb = d01 - qa * (x0 + x1);
    const double qc = y0 - x0 * (d01 - qa * x1);
    const double disc = qb * qb - 4.0 * qa * qc;
    if (std::abs(qa) > 0.0 && disc >= 0.0) {
      const double sd = std::sqrt(disc);
      const double q = -0.5 * (qb + std::copysign(sd, qb));
      const double r1 = q / qa;
      const double r2 = q != 0.0 ? qc / q : r1;
      const double root = std::abs(r1 - t_end) < std::abs(r2 - t_end) ? r1 : r2;
      if (std::abs(root - t_end) <= 2.0 * std::abs(x2 - x0)) return root;
    }
  }
  const double x0 = near[0].T, x1 = near[1].T;
  const double y0 = sq(near[0].amplitude), y1 = sq(near[1].amplitude);
  if (y1 == y0) return t_end;
  return x0 - y0 * (x1 - x0) / (y1 - y0);
}

}  // namespace

BifurcationDiagram scan_branches(double T_max, int grid, const ModelParams& p,
                                 const BranchScanOptions& opts) {
  const auto d = derive_constants(p);
  if (!(T_max > d.T0)) throw DomainError("scan_branches needs T_max > T0");
  if (grid < 16) throw DomainError("scan_branches needs grid >= 16");

  const auto table = build_period_table(p, opts.table_points, opts.period, opts.threads);
  BifurcationDiagram diag;
  diag.params = p;
  diag.grid_step = T_max / grid;
  diag.period_min = table.T_min;
  diag.period_max = table.T_max;

  if (table.isochronous) {
    diag.degenerate = true;
    const double period = 0.5 * (table.T_min + table.T_max);
    const std::size_t stride = std::max<std::size_t>(1, table.rows.size() / 8);
    for (int k = 1; k * period <= T_max * (1.0 + 1e-12); ++k) {
      for (std::size_t i = 0; i < table.rows.size(); i += stride) {
        diag.rows.push_back(make_row(k * table.rows[i].T, k, table.rows[i], p.n));
      }
      diag.branch_points.push_back({k, k * period});
    }
    return diag;
  }

  struct Task {
    double T;
    int k;
  };
  std::vector<Task> tasks;
  for (int i = 1; i <= grid; ++i) {
    const double T = T_max * i / grid;
    for (int k = 1; T / k >= table.T_min; ++k) {
      if (T / k <= table.T_max) tasks.push_back({T, k});
    }
  }

  std::vector<std::vector<OrbitSpec>> found(tasks.size());
  std::vector<std::string> errors(tasks.size());
  parallel_for(tasks.size(), opts.threads, [&](std::size_t i) {
    try {
      found[i] = locate_energies(tasks[i].T / tasks[i].k, table, opts.period);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      diag.failures.push_back("T = " + std::to_string(tasks[i].T) + ", k = " +
                              std::to_string(tasks[i].k) + ": " + errors[i]);
    }
    for (const auto& o : found[i]) diag.rows.push_back(make_row(tasks[i].T, tasks[i].k, o, p.n));
  }
  std::sort(diag.rows.begin(), diag.rows.end(), [](const DiagramRow& a, const DiagramRow& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.T != b.T) return a.T < b.T;
    return a.c < b.c;
  });

  std::map<int, std::vector<DiagramRow>> branches;
  for (const auto& r : diag.rows) branches[r.k].push_back(r);
  // A branch vanishes where T/k meets the small-oscillation period; branches
  // whose vanishing end lies outside (0, T_max] have no branch point here.
  const double center_period = table.rows.front().T;
  for (const auto& [k, rows] : branches) {
    if (k * center_period > T_max * (1.0 + 1e-12)) continue;
    diag.branch_points.push_back({k, extrapolate_branch_point(rows)});
  }
  return diag;
}

int count_solutions(double T, const ModelParams& p, const CountOptions& opts) {
  const auto d = derive_constants(p);
  if (!(T > 0.0)) return 0;
  if (opts.enforce_threshold && T <= d.T0) return 0;
  const auto table = build_period_table(p, opts.table_points, opts.period, opts.threads);
  int count = 0;
  const int k_max = opts.include_harmonics ? static_cast<int>(T / table.T_min) + 1 : 1;
  for (int k = 1; k <= k_max; ++k) {
    const double Tk = T / k;
    if (opts.enforce_threshold && Tk <= d.T0) break;
    if (table.isochronous) {
      if (std::abs(Tk - table.T_min) <= 1e-9 * table.T_min) ++count;
      continue;
    }
    if (!locate_energies(Tk, table, opts.period).empty()) ++count;
  }
  return count;
}

}  // namespace warp
