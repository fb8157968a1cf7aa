#include "warp/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "warp/errors.hpp"
#include "warp/finite_diff.hpp"

namespace warp {

namespace {

std::vector<double> unique_f(const SolutionProfile& prof) {
  std::vector<double> f;
  f.reserve(prof.samples.size());
  for (std::size_t i = 0; i + 1 < prof.samples.size(); ++i) f.push_back(prof.samples[i].f);
  return f;
}

double spacing(const SolutionProfile& prof) { return prof.T / (prof.samples.size() - 1.0); }

}  // namespace

const char* to_string(Warping w) {
  return w == Warping::FSquared ? "dt^2 + f^2 h" : "dt^2 + f h";
}

ConformalReport conformal_field_check(const SolutionProfile& prof, Warping warping, double tol) {
  ConformalReport rep;
  rep.warping = warping;
  rep.tol = tol;
  const auto f = unique_f(prof);
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) w[i] = warping == Warping::FSquared ? f[i] * f[i] : f[i];
  const double h = spacing(prof);
  const auto df = periodic_derivatives(f, h);
  const auto dw = periodic_derivatives(w, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double fp = prof.samples[i].fp;
    rep.tt_residual = std::max(rep.tt_residual, std::abs(2.0 * df.d1[i] - 2.0 * fp));
    rep.fiber_residual = std::max(rep.fiber_residual, std::abs(f[i] * dw.d1[i] - 2.0 * fp * w[i]));
    rep.tt_scale = std::max(rep.tt_scale, std::abs(2.0 * fp));
    rep.fiber_scale = std::max(rep.fiber_scale, std::abs(2.0 * fp * w[i]));
  }
  // constant profiles have zero scale; fall back to a rounding-level floor
  const double floor = 1e-13;
  rep.tt_pass = rep.tt_residual <= tol * rep.tt_scale + floor;
  rep.pass = rep.fiber_residual <= tol * rep.fiber_scale + floor;
  return rep;
}

CurvatureReport curvature_audit(const SolutionProfile& prof, double tol) {
  if (prof.samples.size() < 64) {
    throw TooFewSamples("curvature_audit needs at least 64 samples, got " +
                        std::to_string(prof.samples.size()));
  }
  for (std::size_t i = 0; i < prof.samples.size(); ++i) {
    if (!(prof.samples[i].f > 0.0)) {
      throw NonPositiveWarp("warping function is not positive at sample " + std::to_string(i));
    }
  }
  const ModelParams& p = prof.params;
  const double m = p.n - 1.0;
  CurvatureReport rep;
  rep.tol = tol;
  const auto f = unique_f(prof);
  const auto der = periodic_derivatives(f, spacing(prof));
  rep.Rt_profile.reserve(prof.samples.size());
  for (std::size_t i = 0; i < prof.samples.size(); ++i) {
    const std::size_t k = (i + 1 == prof.samples.size()) ? 0 : i;
    const double fk = f[k];
    const double rt =
        (p.R - 2.0 * m * fk * der.d2[k] - m * (p.n - 2.0) * der.d1[k] * der.d1[k]) / (fk * fk);
    rep.Rt_profile.emplace_back(prof.samples[i].t, rt);
    rep.max_dev = std::max(rep.max_dev, std::abs(rt - p.Rt));
  }
  rep.pass = rep.max_dev < tol * p.Rt;
  rep.conformal_f2 = conformal_field_check(prof, Warping::FSquared);
  rep.conformal_f = conformal_field_check(prof, Warping::Linear);
  const bool constant = rep.conformal_f2.tt_scale == 0.0;
  rep.convention_consistent = rep.conformal_f2.pass && (constant || !rep.conformal_f.pass);
  return rep;
}

}  // namespace warp
