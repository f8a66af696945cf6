#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "potlab/brownian.hpp"
#include "potlab/harmonic.hpp"
#include "potlab/stats.hpp"

namespace potlab {

/// min(delta1(eps / 2), delta2(eps / 2)). Throws DomainError unless eps > 0.
double delta3(const RateData& rates, double eps);

/// b2 - 1 + b1, the limit of I3 as r -> 1.
double gamma_limit(const RateData& rates);

/// How the target accuracy of stage q is derived from b1:
///   linear:            (1/12) 2^{-q}  exp(-3 2^q b1)
///   cubic:             (1/6)  2^{-3q} exp(-3 2^q b1)
///   conservative_min:  the smaller of the two
enum class ScheduleVariant { linear, cubic, conservative_min };

std::string to_string(ScheduleVariant v);
/// Accepts "linear", "cubic" and "conservative-min"; throws DomainError otherwise.
ScheduleVariant parse_variant(const std::string& name);

double schedule_epsilon(ScheduleVariant v, double b1, int q);

/// r_q = 1 - delta3(eps_q), kept strictly increasing. The distances to the
/// boundary are stored alongside the radii because they are often far below
/// the spacing of doubles near 1 that is visible in the radii.
struct RadiusSchedule {
  int q_max = 0;
  ScheduleVariant variant = ScheduleVariant::conservative_min;
  RateData rates;
  std::vector<double> eps;    // eps_q
  std::vector<double> gaps;   // 1 - r_q, strictly decreasing in (0, 1)
  std::vector<double> radii;  // r_q, strictly increasing in (0, 1)

  /// Throws InvariantViolation when the radii or gaps break their ordering.
  void validate() const;
};

/// Builds the schedule for q = 1..q_max. A stage whose delta3 does not
/// shrink is moved halfway to the boundary from its predecessor. Throws
/// DomainError when a radius leaves (0, 1) in double precision.
RadiusSchedule radius_schedule(const RateData& rates, int q_max,
                               ScheduleVariant variant = ScheduleVariant::conservative_min);

/// Hand-made schedule from explicit radii (tests and what-if runs).
RadiusSchedule schedule_from_radii(const RateData& rates, std::vector<double> radii);

struct LimitRow {
  int q = 0;
  double radius = 0.0;
  double gap = 0.0;
  /// r_q >= r_trunc: the stage starts at the truncation exit and its
  /// supremum runs over an empty interval.
  bool clamped = false;
  double threshold = 0.0;  // 2^{-q+3}
  double bound = 0.0;      // 2^{-q+4}
  McEstimate exceedance;   // against V = u(B at exit from D(0, r_trunc))
  std::optional<McEstimate> exceedance_boundary;  // against the boundary values at the radial projection
  bool pass = false;       // exceedance <= bound + 3 se
};

struct LimitReport {
  std::string member;
  double r_trunc = 0.0;
  std::size_t n_paths = 0;
  std::size_t censored = 0;
  McEstimate censored_fraction;
  double censor_allowance = 0.0;  // tail bound from the tightness table at the horizon
  bool censoring_ok = false;
  std::vector<LimitRow> rows;
  McEstimate any_failure;  // paths exceeding at some q
  double budget = 0.0;     // sum of the per-q bounds
  bool budget_ok = false;
  std::optional<double> max_truth_gap;  // max |V - boundary V| over paths
  bool pass = false;
};

/// Runs the discretised engine from the origin to the exit from
/// D(0, r_trunc), recording the crossing of every scheduled radius, and
/// measures for each q how often sup_{tau(r_q) <= s < tau(r_trunc)} |V - u(B_s)|
/// exceeds 2^{-q+3}. Censored paths are excluded and counted.
LimitReport limit_experiment(const HarmonicFn& u, const RadiusSchedule& sched, const PathConfig& cfg,
                             std::size_t n_paths, double r_trunc = 0.999, std::size_t workers = 1);

/// Largest tail bound 2^{-k+1} certified by the tightness table at horizon t:
/// the smallest such bound with N_{2,k} + 1 <= t, or 2 when none applies.
double censor_allowance(double horizon);

}  // namespace potlab
