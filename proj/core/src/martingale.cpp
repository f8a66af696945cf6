#include "potlab/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "potlab/brownian.hpp"
#include "potlab/errors.hpp"
#include "potlab/parallel.hpp"
#include "potlab/rng.hpp"
#include "potlab/tolerances.hpp"

#if defined(POTLAB_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace potlab {

namespace {

#if defined(POTLAB_HAVE_QUADMATH)
using Wide = __float128;
Wide wide_exp(Wide x) { return expq(x); }
#else
using Wide = long double;
Wide wide_exp(Wide x) { return std::exp(x); }
#endif

}  // namespace

double lambda_bar_series(double v) {
  const Wide w = std::abs(v);
  Wide term = w * w / 2, sum = 0;
  for (int k = 3; k <= 8; ++k) {
    sum += term;
    term *= -w / k;
  }
  return static_cast<double>(sum);
}

double lambda_bar_closed(double v) {
  const double a = std::abs(v);
  if (a >= 1.0) return std::exp(-a) - 1.0 + a;
  // The closed form cancels badly for small |v|; near the series cutoff it
  // is evaluated in quad precision so both branches round to the same double.
  if (a < 1e-3) {
    const Wide w = a;
    return static_cast<double>(wide_exp(-w) - 1 + w);
  }
  const long double l = a;
  return static_cast<double>(std::expm1(-l) + l);
}

double lambda_bar(double v) {
  return std::abs(v) < tol::kLambdaSeriesCutoff ? lambda_bar_series(v) : lambda_bar_closed(v);
}

MartingaleSample::MartingaleSample(std::vector<double> index, std::size_t paths)
    : index_(std::move(index)), paths_(paths) {
  if (index_.empty()) throw DomainError("MartingaleSample: need at least one stage");
  if (paths_ == 0) throw DomainError("MartingaleSample: need at least one path");
  if (!std::is_sorted(index_.begin(), index_.end())) throw DomainError("MartingaleSample: index must be nondecreasing");
  values_.assign(paths_ * index_.size(), 0.0);
}

std::vector<double> MartingaleSample::stage(std::size_t j) const {
  if (j >= stages()) throw DomainError("MartingaleSample: stage out of range");
  std::vector<double> out(paths_);
  for (std::size_t i = 0; i < paths_; ++i) out[i] = (*this)(i, j);
  return out;
}

MaximalInequalityReport maximal_inequality_check(const MartingaleSample& z, double eps) {
  if (!(eps > 0.0)) throw DomainError("maximal_inequality_check: eps must be positive");
  const std::size_t n = z.paths();
  const std::size_t last = z.stages() - 1;

  std::vector<double> lambda_gap(n), abs0(n), abs_n(n);
  std::size_t over = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z0 = z(i, 0), zn = z(i, last);
    lambda_gap[i] = lambda_bar(zn) - lambda_bar(z0);
    abs0[i] = std::abs(z0);
    abs_n[i] = std::abs(zn);
    double spread = 0.0;
    for (std::size_t k = 1; k <= last; ++k) spread = std::max(spread, std::abs(z(i, k) - z0));
    if (spread > eps) ++over;
  }

  const McEstimate lhs = mc_estimate(lambda_gap);
  const McEstimate m0 = mc_estimate(abs0);
  const McEstimate mn = mc_estimate(abs_n);
  auto rhs_at = [eps](double moment) { return eps * eps * eps / 6.0 * std::exp(-3.0 / eps * moment); };

  MaximalInequalityReport report;
  report.eps = eps;
  report.lhs = lhs.mean;
  report.lhs_std_error = lhs.std_error;
  report.rhs = rhs_at(std::max(m0.mean, mn.mean));
  report.rhs_guarded = rhs_at(std::max(m0.upper(), mn.upper()));
  report.premise_holds = lhs.upper() < report.rhs_guarded;
  const McEstimate exceed = proportion(over, n);
  report.exceedance = exceed.mean;
  report.exceedance_std_error = exceed.std_error;
  report.bound = eps;
  report.conclusion_holds = exceed.mean < eps + 3.0 * exceed.std_error;
  return report;
}

MartingaleSample sample_Y_skeleton(std::uint64_t seed, std::uint64_t tag, const HarmonicFn& u,
                                   std::span<const double> radii, std::size_t n_paths, std::size_t workers) {
  if (radii.empty()) throw DomainError("sample_Y_skeleton: no radii");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0 && radii[j] < 1.0)) throw DomainError("sample_Y_skeleton: radii must lie in (0, 1)");
    if (j > 0 && !(radii[j] > radii[j - 1])) throw DomainError("sample_Y_skeleton: radii must increase");
  }
  const auto dim = static_cast<std::size_t>(u.dim);
  const std::vector<std::vector<double>> rows = parallel_map(n_paths, workers, [&](std::size_t i) {
    RngStream stream(seed, stream_for(tag, i));
    std::vector<double> row(radii.size());
    Point x(dim);
    for (std::size_t j = 0; j < radii.size(); ++j) {
      x = wos_exit_point(stream, x, radii[j]);
      row[j] = u(x);
    }
    return row;
  });
  MartingaleSample sample(std::vector<double>(radii.begin(), radii.end()), n_paths);
  for (std::size_t i = 0; i < n_paths; ++i)
    for (std::size_t j = 0; j < radii.size(); ++j) sample(i, j) = rows[i][j];
  return sample;
}

MonotonicityReport monotonicity_report(const HarmonicFn& u, std::span<const double> r_grid,
                                       const SurfaceQuadrature& quad) {
  if (r_grid.empty()) throw DomainError("monotonicity_report: empty grid");
  for (std::size_t j = 1; j < r_grid.size(); ++j)
    if (!(r_grid[j] > r_grid[j - 1])) throw DomainError("monotonicity_report: grid must increase");

  MonotonicityReport report;
  report.radii.assign(r_grid.begin(), r_grid.end());
  for (double r : r_grid) report.values.push_back(hardy_integrals(u, r, quad));

  report.max_i2 = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < report.values.size(); ++j) {
    const HardyIntegrals& h = report.values[j];
    report.max_i2 = std::max(report.max_i2, h.i2);
    report.max_identity_gap = std::max(report.max_identity_gap, std::abs(h.i3 - (h.i2 - 1.0 + h.i1)));
    if (j == 0) continue;
    const HardyIntegrals& prev = report.values[j - 1];
    report.min_step_i1 = std::min(report.min_step_i1, h.i1 - prev.i1);
    report.min_step_i2 = std::min(report.min_step_i2, h.i2 - prev.i2);
    report.min_step_i3 = std::min(report.min_step_i3, h.i3 - prev.i3);
  }
  report.i1_monotone = report.min_step_i1 >= -tol::kMonotoneStep;
  report.i2_monotone = report.min_step_i2 >= -tol::kMonotoneStep;
  report.i3_monotone = report.min_step_i3 >= -tol::kMonotoneStep;
  report.pass = report.i1_monotone && report.i2_monotone && report.i3_monotone && report.max_i2 <= 1.0 &&
                report.max_identity_gap <= 1e-12;
  return report;
}

DriftReport martingale_drift(const MartingaleSample& z, std::size_t stage_a, std::size_t stage_b,
                             std::size_t bins) {
  if (stage_a >= z.stages() || stage_b >= z.stages()) throw DomainError("martingale_drift: stage out of range");
  if (bins == 0 || bins > z.paths()) throw DomainError("martingale_drift: need 1 <= bins <= paths");

  std::vector<std::size_t> order(z.paths());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return z(i, stage_a) < z(j, stage_a); });

  DriftReport report;
  report.pass = true;
  const std::size_t n = z.paths();
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * n / bins, hi = (b + 1) * n / bins;
    std::vector<double> diffs;
    diffs.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) diffs.push_back(z(order[k], stage_b) - z(order[k], stage_a));
    const McEstimate est = mc_estimate(diffs);
    double score = 0.0;
    if (est.std_error > 0.0) {
      score = std::abs(est.mean) / est.std_error;
    } else if (est.mean != 0.0) {
      score = std::numeric_limits<double>::infinity();
    }
    report.max_abs_z = std::max(report.max_abs_z, score);
    if (score > 3.0) report.pass = false;
    report.bins.push_back(est);
  }
  return report;
}

}  // namespace potlab
