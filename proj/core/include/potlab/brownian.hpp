#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "potlab/geom.hpp"
#include "potlab/rng.hpp"
#include "potlab/stats.hpp"

namespace potlab {

/// Standard normal CDF, 0.5 erfc(-x / sqrt 2).
double normal_cdf(double x);

/// P(sup_{s <= t} B_s >= lam) = 2 (1 - Phi(lam / sqrt t)) for 1-d Brownian
/// motion from 0. Throws DomainError unless t, lam > 0.
double reflection_prob(double t, double lam);

/// Smallest N >= 1 with 2 Phi(r_tilde / sqrt N) - 1 < 2^{-k}.
long tightness_N(double r_tilde, int k);

struct PathConfig {
  int m = 2;
  double dt = 1e-4;
  double horizon = 200.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool bridge_correction = true;

  /// Throws DomainError unless m >= 1, dt > 0 and horizon >= dt.
  void validate() const;
};

enum class ExitMethod { discretized, walk_on_spheres };

struct ExitEvent {
  double tau = 0.0;
  Point exit_point;
  ExitMethod method = ExitMethod::discretized;
  std::optional<double> dt_used;
  /// Horizon reached before the exit; tau is then the elapsed time and
  /// exit_point the last position.
  bool censored = false;
};

struct TracePoint {
  double t;
  Point x;
};

/// Exit of a discretised path from a family of concentric balls about 0.
struct NestedExit {
  std::vector<ExitEvent> crossings;  // one per radius, same order
  bool censored = false;             // outermost radius not reached
  double elapsed = 0.0;
  std::vector<TracePoint> trace;     // recorded path (see record_from)
};

/// Euler path from x0 with sqrt(dt) Gaussian increments until it leaves
/// D(0, radii.back()) or the horizon is reached.
///
/// Each radius records its first crossing: when a step ends outside, the
/// crossing is located by bisection on the linear interpolant and projected
/// radially; with bridge correction, a step that stays inside still crosses
/// with probability exp(-2 d_k d_{k+1} / dt) (d = distance to the sphere),
/// at the step midpoint. Trace points with t >= the crossing time of
/// radii[record_from] are kept, including the crossing points themselves;
/// pass record_from = radii.size() to keep nothing, or 0 with
/// record_everything to keep the whole path.
NestedExit simulate_nested_exit(const PathConfig& cfg, RngStream& stream, const Point& x0,
                                std::span<const double> radii, std::size_t record_from,
                                bool record_everything = false);

struct ExitResult {
  ExitEvent event;
  std::vector<TracePoint> trace;
};

/// First exit from D(0, r) with the stream (cfg.seed, cfg.stream_id).
/// Throws DomainError when ||x0|| >= r.
ExitResult simulate_exit(const PathConfig& cfg, const Point& x0, double r, bool keep_trace = true);

/// Exact-in-law exit point of Brownian motion from D(0, r) started at x:
/// rejection sampling of the Poisson kernel against the uniform law with
/// bound (1 - s^2) / (1 - s)^m, s = ||x|| / r.
Point wos_exit_point(RngStream& stream, const Point& x, double r);

/// Running-maximum estimate of P(sup_{[0,t]} B >= lam) for 1-d motion,
/// with the one-sided bridge correction exp(-2 (lam - a)(lam - b) / dt).
struct ReflectionReport {
  double target = 0.0;
  McEstimate estimate;
  double abs_error = 0.0;
};

ReflectionReport reflection_check(std::uint64_t seed, double t, double lam, double dt, std::size_t n_paths,
                                  bool bridge_correction = true, std::size_t workers = 1);

/// Censoring frequency of tau_{0,1} at the horizons N_{r_tilde,k} + 1.
struct TightnessRow {
  int k = 0;
  long n_table = 0;
  double horizon = 0.0;
  McEstimate censored;
  double bound = 0.0;  // 2^{-k+1}
  bool pass = false;   // censored.mean <= bound + 3 se
};

std::vector<TightnessRow> tightness_check(std::uint64_t seed, int m, double r_tilde, std::span<const int> ks,
                                          double dt, std::size_t n_paths, std::size_t workers = 1);

/// tau_{0, sqrt(scale)} versus scale * tau_{0,1} (independent streams).
struct ScalingReport {
  double scale = 1.0;
  KsResult ks;
  McEstimate tau_scaled;   // tau_{0, sqrt(scale)}
  McEstimate tau_unit_x;   // scale * tau_{0,1}
  double mean_gap_sigmas = 0.0;
  bool means_agree = false;  // within 3 combined standard errors
};

ScalingReport scaling_check(std::uint64_t seed, int m, double scale, double dt, std::size_t n_paths,
                            std::size_t workers = 1);

/// Coupled exits from D(0, r1) and D(0, r2) on the same path. The
/// constructor-time preconditions
///   0 <= r2 - r1 < 2^{-kappa-1},  2 Phi((r2 - r1) / sqrt(2^{-kappa-1})) - 1 < 2^{-kappa-1}
/// are checked and reported by name on failure.
struct ContinuityReport {
  int kappa = 0;
  double gap_threshold = 0.0;  // 2^{-kappa+4}
  McEstimate exceedance;       // P(tau2 - tau1 > gap_threshold)
  double bound = 0.0;          // 2^{-kappa+1}
  bool ordered = false;        // tau2 >= tau1 on every path
  std::size_t censored = 0;
  bool pass = false;
};

ContinuityReport exit_continuity_check(std::uint64_t seed, const Point& x, double r1, double r2, int kappa,
                                       double dt, std::size_t n_paths, std::size_t workers = 1);

}  // namespace potlab
