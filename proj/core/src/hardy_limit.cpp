#include "potlab/hardy_limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "potlab/errors.hpp"
#include "potlab/parallel.hpp"

namespace potlab {

namespace {
constexpr std::uint64_t kTagLimit = 0x4C;
}  // namespace

double delta3(const RateData& rates, double eps) {
  if (!(eps > 0.0)) throw DomainError("delta3: eps must be positive");
  return std::min(rates.delta1(0.5 * eps), rates.delta2(0.5 * eps));
}

double gamma_limit(const RateData& rates) { return rates.b2 - 1.0 + rates.b1; }

std::string to_string(ScheduleVariant v) {
  switch (v) {
    case ScheduleVariant::linear:
      return "linear";
    case ScheduleVariant::cubic:
      return "cubic";
    case ScheduleVariant::conservative_min:
      return "conservative-min";
  }
  return "unknown";
}

ScheduleVariant parse_variant(const std::string& name) {
  if (name == "linear") return ScheduleVariant::linear;
  if (name == "cubic") return ScheduleVariant::cubic;
  if (name == "conservative-min") return ScheduleVariant::conservative_min;
  throw DomainError("unknown schedule variant '" + name + "' (expected linear, cubic or conservative-min)");
}

double schedule_epsilon(ScheduleVariant v, double b1, int q) {
  if (q < 1) throw DomainError("schedule_epsilon: q must be at least 1");
  const double damping = std::exp(-3.0 * std::ldexp(1.0, q) * b1);
  const double linear = std::ldexp(1.0, -q) / 12.0 * damping;
  const double cubic = std::ldexp(1.0, -3 * q) / 6.0 * damping;
  switch (v) {
    case ScheduleVariant::linear:
      return linear;
    case ScheduleVariant::cubic:
      return cubic;
    case ScheduleVariant::conservative_min:
      return std::min(linear, cubic);
  }
  return std::min(linear, cubic);
}

void RadiusSchedule::validate() const {
  if (q_max < 1 || radii.size() != static_cast<std::size_t>(q_max) || gaps.size() != radii.size()) {
    throw InvariantViolation("RadiusSchedule: inconsistent sizes");
  }
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0 && radii[j] < 1.0)) throw InvariantViolation("RadiusSchedule: radius outside (0, 1)");
    if (!(gaps[j] > 0.0 && gaps[j] < 1.0)) throw InvariantViolation("RadiusSchedule: gap outside (0, 1)");
    if (j > 0 && !(radii[j] > radii[j - 1] && gaps[j] < gaps[j - 1])) {
      throw InvariantViolation("RadiusSchedule: radii must increase strictly");
    }
  }
}

RadiusSchedule radius_schedule(const RateData& rates, int q_max, ScheduleVariant variant) {
  if (q_max < 1) throw DomainError("radius_schedule: q_max must be at least 1");
  rates.validate();
  RadiusSchedule s;
  s.q_max = q_max;
  s.variant = variant;
  s.rates = rates;
  for (int q = 1; q <= q_max; ++q) {
    const double eps = schedule_epsilon(variant, rates.b1, q);
    if (!(eps > 0.0)) {
      throw DomainError("radius_schedule: eps_" + std::to_string(q) + " underflows; rates too coarse for q_max");
    }
    double gap = delta3(rates, eps);
    if (!s.gaps.empty() && !(gap < s.gaps.back())) gap = 0.5 * s.gaps.back();
    const double r = 1.0 - gap;
    if (!(gap > 0.0 && gap < 1.0) || !(r > 0.0 && r < 1.0) || (!s.radii.empty() && !(r > s.radii.back()))) {
      throw DomainError("radius_schedule: r_" + std::to_string(q) + " escapes (0, 1); rates too coarse for q_max");
    }
    s.eps.push_back(eps);
    s.gaps.push_back(gap);
    s.radii.push_back(r);
  }
  s.validate();
  return s;
}

RadiusSchedule schedule_from_radii(const RateData& rates, std::vector<double> radii) {
  RadiusSchedule s;
  s.q_max = static_cast<int>(radii.size());
  s.rates = rates;
  for (double r : radii) {
    s.gaps.push_back(1.0 - r);
    s.eps.push_back(0.0);
  }
  s.radii = std::move(radii);
  try {
    s.validate();
  } catch (const InvariantViolation& e) {
    throw DomainError(std::string("schedule_from_radii: ") + e.what());
  }
  return s;
}

double censor_allowance(double horizon) {
  double allowance = 2.0;
  for (int k = 0; k < 25; ++k) {
    if (static_cast<double>(tightness_N(2.0, k)) + 1.0 > horizon) break;
    allowance = std::ldexp(1.0, -k + 1);
  }
  return allowance;
}

namespace {

struct PathOutcome {
  bool censored = false;
  std::vector<unsigned char> exceeds;           // per q
  std::vector<unsigned char> exceeds_boundary;  // per q, when boundary values exist
  double truth_gap = 0.0;
};

}  // namespace

LimitReport limit_experiment(const HarmonicFn& u, const RadiusSchedule& sched, const PathConfig& cfg,
                             std::size_t n_paths, double r_trunc, std::size_t workers) {
  sched.validate();
  cfg.validate();
  if (!(r_trunc > 0.0 && r_trunc < 1.0)) throw DomainError("limit_experiment: r_trunc must lie in (0, 1)");
  if (u.dim != cfg.m) throw DomainError("limit_experiment: dimension of u differs from the path config");
  if (n_paths == 0) throw DomainError("limit_experiment: need at least one path");

  const std::size_t q_count = sched.radii.size();
  std::vector<double> effective(q_count);
  for (std::size_t j = 0; j < q_count; ++j) effective[j] = std::min(sched.radii[j], r_trunc);
  std::vector<double> nested = effective;
  nested.push_back(r_trunc);
  nested.erase(std::unique(nested.begin(), nested.end()), nested.end());
  // Index in `nested` of each stage's radius.
  std::vector<std::size_t> slot(q_count);
  for (std::size_t j = 0; j < q_count; ++j) {
    slot[j] = static_cast<std::size_t>(std::lower_bound(nested.begin(), nested.end(), effective[j]) - nested.begin());
  }

  std::vector<double> thresholds(q_count);
  for (std::size_t j = 0; j < q_count; ++j) thresholds[j] = std::ldexp(1.0, -static_cast<int>(j) + 2);

  const Point origin(static_cast<std::size_t>(cfg.m));
  const bool with_boundary = u.boundary.has_value();

  const std::vector<PathOutcome> outcomes = parallel_map(n_paths, workers, [&](std::size_t i) {
    RngStream stream(cfg.seed, stream_for(kTagLimit ^ (cfg.stream_id << 8), i));
    const NestedExit e = simulate_nested_exit(cfg, stream, origin, nested, 0);
    PathOutcome out;
    if (e.censored) {
      out.censored = true;
      return out;
    }
    const Point& exit_point = e.crossings.back().exit_point;
    const double v = u(exit_point);
    double v_boundary = 0.0;
    if (with_boundary) {
      v_boundary = (*u.boundary)(exit_point * (1.0 / exit_point.norm()));
      out.truth_gap = std::abs(v - v_boundary);
    }

    // Suffix maxima over the recorded points before the final exit.
    const std::size_t len = e.trace.size() - 1;
    std::vector<double> suffix(len + 1, 0.0), suffix_b(with_boundary ? len + 1 : 0, 0.0);
    for (std::size_t k = len; k-- > 0;) {
      const double w = u(e.trace[k].x);
      suffix[k] = std::max(suffix[k + 1], std::abs(v - w));
      if (with_boundary) suffix_b[k] = std::max(suffix_b[k + 1], std::abs(v_boundary - w));
    }
    out.exceeds.resize(q_count);
    if (with_boundary) out.exceeds_boundary.resize(q_count);
    for (std::size_t j = 0; j < q_count; ++j) {
      const double start = e.crossings[slot[j]].tau;
      const auto first = static_cast<std::size_t>(
          std::lower_bound(e.trace.begin(), e.trace.begin() + static_cast<std::ptrdiff_t>(len), start,
                           [](const TracePoint& p, double t) { return p.t < t; }) -
          e.trace.begin());
      out.exceeds[j] = suffix[first] > thresholds[j];
      if (with_boundary) out.exceeds_boundary[j] = suffix_b[first] > thresholds[j];
    }
    return out;
  });

  LimitReport report;
  report.member = u.name;
  report.r_trunc = r_trunc;
  report.n_paths = n_paths;
  report.censor_allowance = censor_allowance(cfg.horizon);

  std::vector<std::size_t> hits(q_count, 0), hits_b(q_count, 0);
  std::size_t any = 0;
  double truth_gap = 0.0;
  for (const PathOutcome& o : outcomes) {
    if (o.censored) {
      ++report.censored;
      continue;
    }
    bool failed = false;
    for (std::size_t j = 0; j < q_count; ++j) {
      hits[j] += o.exceeds[j];
      if (with_boundary) hits_b[j] += o.exceeds_boundary[j];
      failed = failed || o.exceeds[j];
    }
    any += failed;
    truth_gap = std::max(truth_gap, o.truth_gap);
  }
  const std::size_t used = n_paths - report.censored;
  report.censored_fraction = proportion(report.censored, n_paths);
  report.censoring_ok = report.censored_fraction.mean <= report.censor_allowance + 3.0 * report.censored_fraction.std_error;
  if (with_boundary) report.max_truth_gap = truth_gap;

  bool rows_pass = used > 0;
  for (std::size_t j = 0; j < q_count; ++j) {
    LimitRow row;
    row.q = static_cast<int>(j) + 1;
    row.radius = sched.radii[j];
    row.gap = sched.gaps[j];
    row.clamped = sched.radii[j] >= r_trunc;
    row.threshold = thresholds[j];
    row.bound = std::ldexp(1.0, -row.q + 4);
    report.budget += row.bound;
    if (used > 0) {
      row.exceedance = proportion(hits[j], used);
      if (with_boundary) row.exceedance_boundary = proportion(hits_b[j], used);
      row.pass = row.exceedance.mean <= row.bound + 3.0 * row.exceedance.std_error;
    }
    rows_pass = rows_pass && row.pass;
    report.rows.push_back(row);
  }
  if (used > 0) {
    report.any_failure = proportion(any, used);
    report.budget_ok = report.any_failure.mean <= report.budget + 3.0 * report.any_failure.std_error;
  }
  report.pass = rows_pass && report.censoring_ok && report.budget_ok;
  return report;
}

}  // namespace potlab
