#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "potlab/harmonic.hpp"
#include "potlab/stats.hpp"

namespace potlab {

/// e^{-|v|} - 1 + |v|; power series below tol::kLambdaSeriesCutoff.
double lambda_bar(double v);

/// The two branches of lambda_bar, exposed so they can be compared at the
/// switchover. The series is accurate only for small |v|.
double lambda_bar_series(double v);
double lambda_bar_closed(double v);

/// Discrete-index samples of a martingale: values(path, stage).
class MartingaleSample {
 public:
  MartingaleSample(std::vector<double> index, std::size_t paths);

  std::size_t paths() const { return paths_; }
  std::size_t stages() const { return index_.size(); }
  std::span<const double> index() const { return index_; }

  double operator()(std::size_t path, std::size_t stage) const { return values_[path * stages() + stage]; }
  double& operator()(std::size_t path, std::size_t stage) { return values_[path * stages() + stage]; }

  std::vector<double> stage(std::size_t j) const;

 private:
  std::vector<double> index_;
  std::size_t paths_;
  std::vector<double> values_;
};

/// Finite-sample reading of the martingale maximal inequality
///   E lb(Z_n) - E lb(Z_0) < (1/6) eps^3 exp(-(3/eps)(E|Z_0| v E|Z_n|))
///   ==> P(max_k |Z_k - Z_0| > eps) < eps,
/// with lb = lambda_bar. The premise holds when lhs + 3 se is below the
/// rhs evaluated at E|Z| + 3 se; only then is the conclusion checked.
struct MaximalInequalityReport {
  double eps = 0.0;
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;           // at the point estimates
  double rhs_guarded = 0.0;   // at E|Z| upper 3-sigma bounds
  bool premise_holds = false;
  double exceedance = 0.0;
  double exceedance_std_error = 0.0;
  double bound = 0.0;         // eps
  bool conclusion_holds = false;  // exceedance < eps + 3 se; meaningful iff premise_holds
};

MaximalInequalityReport maximal_inequality_check(const MartingaleSample& z, double eps);

/// Y_r = u(B_tau(r)) at increasing radii, sampled exactly by chained
/// walk-on-spheres exits from the origin. Path i uses stream
/// stream_for(tag, i) of `seed`.
MartingaleSample sample_Y_skeleton(std::uint64_t seed, std::uint64_t tag, const HarmonicFn& u,
                                   std::span<const double> radii, std::size_t n_paths,
                                   std::size_t workers = 1);

struct MonotonicityReport {
  std::vector<double> radii;
  std::vector<HardyIntegrals> values;
  double min_step_i1 = 0.0;  // most negative consecutive difference (0 if none)
  double min_step_i2 = 0.0;
  double min_step_i3 = 0.0;
  double max_i2 = 0.0;
  double max_identity_gap = 0.0;  // max |I3 - (I2 - 1 + I1)|
  bool i1_monotone = false;
  bool i2_monotone = false;
  bool i3_monotone = false;
  // all three nondecreasing within tol::kMonotoneStep, I2 <= 1 and the
  // identity gap at most 1e-12
  bool pass = false;
};

MonotonicityReport monotonicity_report(const HarmonicFn& u, std::span<const double> r_grid,
                                       const SurfaceQuadrature& quad);

/// Binned martingale witness: paths are grouped into `bins` quantile bins
/// of Z_a; within each bin E[Z_b - Z_a] should vanish.
struct DriftReport {
  std::vector<McEstimate> bins;  // per-bin estimate of Z_b - Z_a
  double max_abs_z = 0.0;        // max |mean| / std_error over bins
  bool pass = false;             // every bin within 3 standard errors of 0
};

DriftReport martingale_drift(const MartingaleSample& z, std::size_t stage_a, std::size_t stage_b,
                             std::size_t bins = 10);

}  // namespace potlab
