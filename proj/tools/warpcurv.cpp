// warpcurv: periodic warping functions of constant-scalar-curvature warped
// products S^1 x_f N.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or domain error,
// 3 period at or below the threshold T0, 4 numerical failure (no bracket,
// non-convergence, budget).

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "warp/bifurcation.hpp"
#include "warp/errors.hpp"
#include "warp/geometry.hpp"
#include "warp/io.hpp"
#include "warp/period.hpp"
#include "warp/solver.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitThreshold = 3;
constexpr int kExitNumerical = 4;

struct Common {
  warp::ModelParams params;
  std::string out;
  int threads = 0;
};

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.params.n, "manifold dimension (>= 3)")->required();
  cmd->add_option("--fiber-curv", c.params.R, "scalar curvature R of the fiber (> 0)")->required();
  cmd->add_option("--target-curv", c.params.Rt, "target scalar curvature Rt (> 0)")->required();
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw warp::DomainError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic solutions of the warped-product scalar curvature equation"};
  app.require_subcommand(1);

  Common common;

  auto* threshold = app.add_subcommand("threshold", "print T0 and the derived constants");
  std::string format = "text";
  add_params(threshold, common);
  threshold->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* period = app.add_subcommand("period", "period T(c) at one energy or over a band scan");
  add_params(period, common);
  double energy = 0.0;
  int scan = 0;
  std::vector<double> band;
  auto* energy_opt = period->add_option("--energy", energy, "energy level c");
  auto* scan_opt = period->add_option("--scan", scan, "number of energies in the band scan");
  period->add_option("--band", band, "energy band lo,hi (default: the clamped band)")
      ->delimiter(',')
      ->expected(2)
      ->needs(scan_opt);
  energy_opt->excludes(scan_opt);
  period->add_option("--out", common.out, "output CSV file (default stdout)");
  period->add_option("--threads", common.threads, "worker threads for scans (0 = all)");

  auto* solve = app.add_subcommand("solve", "solve for a profile of prescribed minimal period");
  add_params(solve, common);
  double target_T = 0.0;
  int samples = 512;
  bool allow_sub = false;
  solve->add_option("--period", target_T, "minimal period T")->required();
  solve->add_option("--samples", samples, "samples over one period (>= 16)");
  solve->add_option("--out", common.out, "output JSON file (default stdout)");
  solve->add_flag("--allow-subthreshold", allow_sub, "do not refuse T <= T0");

  auto* bifurcate = app.add_subcommand("bifurcate", "branch diagram over periods (0, tmax]");
  add_params(bifurcate, common);
  double t_max = 0.0;
  int grid = 400;
  std::string points_out;
  bifurcate->add_option("--tmax", t_max, "largest period of the grid")->required();
  bifurcate->add_option("--grid", grid, "number of grid periods (>= 16)");
  bifurcate->add_option("--out", common.out, "output CSV file (default stdout)");
  bifurcate->add_option("--points-out", points_out, "CSV file for detected branch points");
  bifurcate->add_option("--threads", common.threads, "worker threads for scans (0 = all)");

  auto* verify = app.add_subcommand("verify", "audit a profile written by solve");
  std::string in_path;
  double tol = 1e-4;
  verify->add_option("--in", in_path, "profile JSON")->required();
  verify->add_option("--tol", tol, "curvature tolerance relative to Rt");
  verify->add_option("--out", common.out, "output JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*threshold) {
      common.params.validate();
      if (format == "json") {
        warp::io::write_threshold_json(std::cout, common.params);
      } else {
        warp::io::write_threshold_text(std::cout, common.params);
      }
      return 0;
    }

    if (*period) {
      common.params.validate();
      if (!*energy_opt && !*scan_opt) {
        std::cerr << "period: one of --energy or --scan is required\n" << period->help();
        return kExitUsage;
      }
      std::vector<warp::ScanEntry> rows;
      if (*energy_opt) {
        rows.push_back({warp::period_quadrature(energy, common.params), true, {}});
      } else {
        if (scan < 1) throw warp::DomainError("--scan must be >= 1");
        std::vector<double> grid_excess;
        if (band.empty()) {
          grid_excess = warp::band_excess_grid(scan, common.params);
        } else {
          const double c_min = warp::derive_constants(common.params).c_min;
          grid_excess = warp::band_excess_grid(scan, common.params, (band[0] - c_min) / -c_min,
                                               (band[1] - c_min) / -c_min);
        }
        rows = warp::period_scan_excess(grid_excess, common.params, {}, common.threads);
        for (const auto& r : rows) {
          if (!r.ok) std::cerr << "skipped: " << r.error << '\n';
        }
      }
      Sink sink(common.out);
      warp::io::write_period_csv(sink.stream(), rows);
      return 0;
    }

    if (*solve) {
      warp::SolveOptions opts;
      opts.enforce_threshold = !allow_sub;
      opts.threads = common.threads;
      const auto prof = warp::solve_period(target_T, common.params, samples, opts);
      if (prof.root_count > 1) {
        std::cerr << "note: " << prof.root_count
                  << " energies share this minimal period; the lowest is returned\n";
      }
      Sink sink(common.out);
      warp::io::write_profile_json(sink.stream(), prof);
      return 0;
    }

    if (*bifurcate) {
      warp::BranchScanOptions opts;
      opts.threads = common.threads;
      const auto diag = warp::scan_branches(t_max, grid, common.params, opts);
      Sink sink(common.out);
      warp::io::write_diagram_csv(sink.stream(), diag);
      if (!points_out.empty()) {
        Sink points(points_out);
        warp::io::write_branch_points_csv(points.stream(), diag);
      }
      for (const auto& b : diag.branch_points) {
        std::cerr << "branch point k = " << b.k << " at T = " << warp::io::format_number(b.T)
                  << '\n';
      }
      if (diag.degenerate) std::cerr << "degenerate: isochronous center, vertical branches\n";
      for (const auto& f : diag.failures) std::cerr << "failed: " << f << '\n';
      return 0;
    }

    if (*verify) {
      std::ifstream in(in_path, std::ios::binary);
      if (!in) throw warp::DomainError("cannot open " + in_path);
      const auto prof = warp::io::read_profile_json(in);
      const auto curv = warp::curvature_audit(prof, tol);
      const auto audit = warp::audit_profile(prof);
      Sink sink(common.out);
      warp::io::write_verify_json(sink.stream(), curv, audit);
      return (curv.pass && audit.pass && curv.convention_consistent) ? 0 : kExitVerifyFailed;
    }
  } catch (const warp::ThresholdViolation& e) {
    std::cerr << "threshold violation: " << e.what() << '\n';
    return kExitThreshold;
  } catch (const warp::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const warp::EnergyOutOfBand& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const warp::TooFewSamples& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const warp::NonPositiveWarp& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const warp::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
