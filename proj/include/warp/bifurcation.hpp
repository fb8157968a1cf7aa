#pragma once

#include <string>
#include <vector>

#include "warp/model.hpp"
#include "warp/period.hpp"

namespace warp {

// One non-constant T-periodic solution of minimal period T/k.
struct DiagramRow {
  double T;
  int k;
  double c;
  double amplitude;  // b - a in x
  double max_f;
  double min_f;
};

struct BranchPoint {
  int k;
  double T;
};

struct BifurcationDiagram {
  ModelParams params;
  std::vector<DiagramRow> rows;          // sorted by (k, T, c)
  std::vector<BranchPoint> branch_points;
  std::vector<std::string> failures;     // per-point errors; the scan continues past them
  double grid_step = 0.0;
  double period_min = 0.0;               // attainable minimal periods of the band
  double period_max = 0.0;
  bool degenerate = false;               // isochronous: vertical branches at k*T0
};

struct BranchScanOptions {
  int table_points = 96;
  PeriodOptions period;
  int threads = 0;
};

// Grid T_i = T_max * i / grid, i = 1..grid. Branch k at T_i holds the
// solutions of minimal period T_i/k, for every k whose T_i/k falls inside the
// attainable period range. Branch points are found where the amplitude of a
// branch extrapolates to zero.
BifurcationDiagram scan_branches(double T_max, int grid, const ModelParams& p,
                                 const BranchScanOptions& opts = {});

struct CountOptions {
  bool include_harmonics = true;  // count k >= 2 families (minimal period T/k)
  bool enforce_threshold = true;  // only families with T/k > T0
  int table_points = 96;
  PeriodOptions period;
  int threads = 1;
};

// Number of branch families k admitting a solution of minimal period T/k.
int count_solutions(double T, const ModelParams& p, const CountOptions& opts = {});

}  // namespace warp
