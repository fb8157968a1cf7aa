#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "warp/bifurcation.hpp"
#include "warp/geometry.hpp"
#include "warp/period.hpp"
#include "warp/solver.hpp"

namespace warp::io {

// %.17g: round-trips every double and is locale independent.
std::string format_number(double v);

// Numeric CSV, header row, '\n' line endings.
void write_period_csv(std::ostream& out, std::span<const ScanEntry> scan);
void write_diagram_csv(std::ostream& out, const BifurcationDiagram& diag);
void write_branch_points_csv(std::ostream& out, const BifurcationDiagram& diag);

// Single JSON objects. Profiles use the keys params{n,R,Rt}, T, c, samples
// (arrays [t, x, v, f, fp, fpp]), residual_sup, closure_error, root_count.
void write_profile_json(std::ostream& out, const SolutionProfile& prof);
SolutionProfile read_profile_json(std::istream& in);

void write_threshold_json(std::ostream& out, const ModelParams& p);
void write_threshold_text(std::ostream& out, const ModelParams& p);

void write_verify_json(std::ostream& out, const CurvatureReport& curv, const AuditReport& audit);

}  // namespace warp::io
