#include "potlab/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "potlab/errors.hpp"
#include "potlab/harmonic.hpp"
#include "potlab/parallel.hpp"
#include "potlab/sphere_measure.hpp"
#include "potlab/tolerances.hpp"

namespace potlab {

namespace {

// exp(-a) is below 1e-17 past this; the bridge draw is skipped there.
constexpr double kBridgeCutoff = 40.0;

// Stream tags; every experiment draws from its own family of streams.
constexpr std::uint64_t kTagReflection = 0x52;
constexpr std::uint64_t kTagTightness = 0x54;
constexpr std::uint64_t kTagScaledBall = 0x53;
constexpr std::uint64_t kTagUnitBall = 0x55;
constexpr std::uint64_t kTagContinuity = 0x43;

Point radial_projection(const Point& p, double rho, const Point& fallback) {
  const double n = p.norm();
  if (n > 0.0) return p * (rho / n);
  const double nf = fallback.norm();
  return fallback * (rho / nf);
}

// Fraction lam in [0, 1] with ||a + lam (b - a)|| = rho, given ||a|| < rho <= ||b||.
double crossing_fraction(const Point& a, const Point& b, double rho) {
  const Point d = b - a;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((a + mid * d).norm() >= rho) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double reflection_prob(double t, double lam) {
  if (!(t > 0.0) || !(lam > 0.0)) throw DomainError("reflection_prob: t and lambda must be positive");
  return 2.0 * (1.0 - normal_cdf(lam / std::sqrt(t)));
}

long tightness_N(double r_tilde, int k) {
  if (!(r_tilde > 0.0)) throw DomainError("tightness_N: r_tilde must be positive");
  if (k < 0) throw DomainError("tightness_N: k must be nonnegative");
  const double target = std::ldexp(1.0, -k);
  auto ok = [&](long n) { return 2.0 * normal_cdf(r_tilde / std::sqrt(static_cast<double>(n))) - 1.0 < target; };
  if (ok(1)) return 1;
  long hi = 2;
  while (!ok(hi)) {
    if (hi > (std::numeric_limits<long>::max() / 4)) throw DomainError("tightness_N: table entry overflows");
    hi *= 2;
  }
  long lo = hi / 2;  // !ok(lo)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void PathConfig::validate() const {
  if (m < 1 || static_cast<std::size_t>(m) > Point::kMaxDim) throw DomainError("PathConfig: unsupported dimension");
  if (!(dt > 0.0)) throw DomainError("PathConfig: dt must be positive");
  if (!(horizon >= dt)) throw DomainError("PathConfig: horizon must be at least dt");
}

NestedExit simulate_nested_exit(const PathConfig& cfg, RngStream& stream, const Point& x0,
                                std::span<const double> radii, std::size_t record_from, bool record_everything) {
  cfg.validate();
  if (radii.empty()) throw DomainError("simulate_nested_exit: no radii");
  if (x0.dim() != static_cast<std::size_t>(cfg.m)) throw DomainError("simulate_nested_exit: start dimension");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0)) throw DomainError("simulate_nested_exit: radii must be positive");
    if (j > 0 && !(radii[j] > radii[j - 1])) throw DomainError("simulate_nested_exit: radii must increase");
  }
  if (!(x0.norm() < radii.front())) throw DomainError("simulate_nested_exit: start outside the innermost ball");

  const std::size_t n_radii = radii.size();
  const double sqrt_dt = std::sqrt(cfg.dt);
  const auto max_steps = static_cast<std::uint64_t>(std::ceil(cfg.horizon / cfg.dt - 1e-9));

  NestedExit out;
  out.crossings.reserve(n_radii);
  if (record_everything) out.trace.push_back({0.0, x0});

  Point x = x0;
  double norm_x = x.norm();
  std::size_t next = 0;
  double last_crossing = 0.0;
  Point x_new(x0.dim());

  auto record_crossing = [&](double tc, const Point& pc) {
    tc = std::max(tc, last_crossing);
    last_crossing = tc;
    ExitEvent ev;
    ev.tau = tc;
    ev.exit_point = pc;
    ev.method = ExitMethod::discretized;
    ev.dt_used = cfg.dt;
    out.crossings.push_back(ev);
    if (record_everything || next >= record_from) out.trace.push_back({tc, pc});
    ++next;
  };

  for (std::uint64_t k = 0; k < max_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const double t_new = static_cast<double>(k + 1) * cfg.dt;
    for (int i = 0; i < cfg.m; ++i) x_new[i] = x[i] + sqrt_dt * stream.normal();
    const double norm_new = x_new.norm();

    while (next < n_radii) {
      const double rho = radii[next];
      if (norm_new >= rho) {
        const double lam = crossing_fraction(x, x_new, rho);
        const Point p = x + lam * (x_new - x);
        record_crossing(t + lam * cfg.dt, radial_projection(p, rho, x_new));
        continue;
      }
      if (!cfg.bridge_correction) break;
      const double a = 2.0 * (rho - norm_x) * (rho - norm_new) / cfg.dt;
      if (a >= kBridgeCutoff || !(stream.uniform() < std::exp(-a))) break;
      const Point mid = 0.5 * (x + x_new);
      record_crossing(t + 0.5 * cfg.dt, radial_projection(mid, rho, x_new));
    }

    if (next == n_radii) {
      out.elapsed = out.crossings.back().tau;
      return out;
    }
    if (record_everything || next > record_from) out.trace.push_back({t_new, x_new});
    x = x_new;
    norm_x = norm_new;
  }

  out.censored = true;
  out.elapsed = static_cast<double>(max_steps) * cfg.dt;
  return out;
}

ExitResult simulate_exit(const PathConfig& cfg, const Point& x0, double r, bool keep_trace) {
  if (!(r > 0.0)) throw DomainError("simulate_exit: radius must be positive");
  if (!(x0.norm() < r)) throw DomainError("simulate_exit: start outside the open ball");
  RngStream stream(cfg.seed, cfg.stream_id);
  const double radii[] = {r};
  NestedExit nested = simulate_nested_exit(cfg, stream, x0, radii, 0, keep_trace);
  ExitResult result;
  result.trace = std::move(nested.trace);
  if (nested.censored) {
    result.event.tau = nested.elapsed;
    result.event.exit_point = result.trace.empty() ? x0 : result.trace.back().x;
    result.event.dt_used = cfg.dt;
    result.event.censored = true;
  } else {
    result.event = nested.crossings.front();
  }
  return result;
}

Point wos_exit_point(RngStream& stream, const Point& x, double r) {
  if (!(r > 0.0)) throw DomainError("wos_exit_point: radius must be positive");
  const double s = x.norm() / r;
  if (!(s < 1.0)) throw DomainError("wos_exit_point: start outside the open ball");
  const int m = static_cast<int>(x.dim());
  const Point origin(x.dim());
  if (s < tol::kCentreStart) return uniform_sphere_sample(stream, m, origin, r);
  const double bound = (1.0 - s * s) / std::pow(1.0 - s, m);
  for (;;) {
    const Point z = uniform_sphere_sample(stream, m, origin, r);
    const double density = poisson_kernel(origin, r, x, z);
    if (stream.uniform() * bound < density) return z;
  }
}

ReflectionReport reflection_check(std::uint64_t seed, double t, double lam, double dt, std::size_t n_paths,
                                  bool bridge_correction, std::size_t workers) {
  if (!(t > 0.0) || !(lam > 0.0) || !(dt > 0.0)) throw DomainError("reflection_check: t, lambda, dt must be positive");
  if (n_paths == 0) throw DomainError("reflection_check: need at least one path");
  const auto steps = static_cast<std::uint64_t>(std::llround(t / dt));
  const double sqrt_dt = std::sqrt(dt);
  const std::vector<double> hits = parallel_map(n_paths, workers, [&](std::size_t i) {
    RngStream stream(seed, stream_for(kTagReflection, i));
    double b = 0.0;
    for (std::uint64_t k = 0; k < steps; ++k) {
      const double b_new = b + sqrt_dt * stream.normal();
      if (b_new >= lam) return 1.0;
      if (bridge_correction) {
        const double a = 2.0 * (lam - b) * (lam - b_new) / dt;
        if (a < kBridgeCutoff && stream.uniform() < std::exp(-a)) return 1.0;
      }
      b = b_new;
    }
    return 0.0;
  });
  ReflectionReport report;
  report.target = reflection_prob(t, lam);
  report.estimate = mc_estimate(hits);
  report.abs_error = std::abs(report.estimate.mean - report.target);
  return report;
}

std::vector<TightnessRow> tightness_check(std::uint64_t seed, int m, double r_tilde, std::span<const int> ks,
                                          double dt, std::size_t n_paths, std::size_t workers) {
  if (ks.empty()) throw DomainError("tightness_check: no k values");
  if (n_paths == 0) throw DomainError("tightness_check: need at least one path");
  std::vector<TightnessRow> rows;
  double horizon = dt;
  for (int k : ks) {
    TightnessRow row;
    row.k = k;
    row.n_table = tightness_N(r_tilde, k);
    row.horizon = static_cast<double>(row.n_table) + 1.0;
    row.bound = std::ldexp(1.0, -k + 1);
    horizon = std::max(horizon, row.horizon);
    rows.push_back(row);
  }
  PathConfig cfg;
  cfg.m = m;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.seed = seed;
  const Point origin(static_cast<std::size_t>(m));
  const double unit[] = {1.0};
  const std::vector<double> taus = parallel_map(n_paths, workers, [&](std::size_t i) {
    RngStream stream(seed, stream_for(kTagTightness, i));
    const NestedExit e = simulate_nested_exit(cfg, stream, origin, unit, 1);
    return e.censored ? std::numeric_limits<double>::infinity() : e.crossings.front().tau;
  });
  for (auto& row : rows) {
    const auto over = static_cast<std::size_t>(
        std::count_if(taus.begin(), taus.end(), [&](double tau) { return tau > row.horizon; }));
    row.censored = proportion(over, taus.size());
    row.pass = row.censored.mean <= row.bound + 3.0 * row.censored.std_error;
  }
  return rows;
}

ScalingReport scaling_check(std::uint64_t seed, int m, double scale, double dt, std::size_t n_paths,
                            std::size_t workers) {
  if (!(scale > 0.0)) throw DomainError("scaling_check: scale must be positive");
  if (n_paths == 0) throw DomainError("scaling_check: need at least one path");
  PathConfig cfg;
  cfg.m = m;
  cfg.dt = dt;
  cfg.horizon = 1000.0 * std::max(1.0, scale);
  cfg.seed = seed;
  const Point origin(static_cast<std::size_t>(m));

  auto exit_times = [&](double radius, std::uint64_t tag, double factor) {
    const double radii[] = {radius};
    return parallel_map(n_paths, workers, [&, tag](std::size_t i) {
      RngStream stream(seed, stream_for(tag, i));
      const NestedExit e = simulate_nested_exit(cfg, stream, origin, radii, 1);
      return factor * (e.censored ? e.elapsed : e.crossings.front().tau);
    });
  };
  const std::vector<double> scaled = exit_times(std::sqrt(scale), kTagScaledBall, 1.0);
  const std::vector<double> unit = exit_times(1.0, kTagUnitBall, scale);

  ScalingReport report;
  report.scale = scale;
  report.ks = ks_two_sample(scaled, unit);
  report.tau_scaled = mc_estimate(scaled);
  report.tau_unit_x = mc_estimate(unit);
  const double se = std::hypot(report.tau_scaled.std_error, report.tau_unit_x.std_error);
  const double gap = std::abs(report.tau_scaled.mean - report.tau_unit_x.mean);
  report.mean_gap_sigmas = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  report.means_agree = report.mean_gap_sigmas <= 3.0;
  return report;
}

ContinuityReport exit_continuity_check(std::uint64_t seed, const Point& x, double r1, double r2, int kappa,
                                       double dt, std::size_t n_paths, std::size_t workers) {
  const double width = std::ldexp(1.0, -kappa - 1);
  const double gap = r2 - r1;
  if (!(gap >= 0.0 && gap < width)) {
    throw DomainError("exit_continuity_check: precondition 0 <= r'' - r' < 2^{-kappa-1} fails");
  }
  if (!(2.0 * normal_cdf(gap / std::sqrt(width)) - 1.0 < width)) {
    throw DomainError(
        "exit_continuity_check: precondition 2 Phi((r'' - r') / sqrt(2^{-kappa-1})) - 1 < 2^{-kappa-1} fails");
  }
  if (!(x.norm() < r1)) throw DomainError("exit_continuity_check: start outside D(0, r')");
  if (n_paths == 0) throw DomainError("exit_continuity_check: need at least one path");

  PathConfig cfg;
  cfg.m = static_cast<int>(x.dim());
  cfg.dt = dt;
  cfg.horizon = 1000.0;
  cfg.seed = seed;
  std::vector<double> radii{r1};
  if (r2 > r1) radii.push_back(r2);

  struct Pair {
    double tau1 = 0.0, tau2 = 0.0;
    int censored = 0;
  };
  const std::vector<Pair> pairs = parallel_map(n_paths, workers, [&](std::size_t i) {
    RngStream stream(seed, stream_for(kTagContinuity, i));
    const NestedExit e = simulate_nested_exit(cfg, stream, x, radii, radii.size());
    if (e.censored) return Pair{0.0, 0.0, 1};
    return Pair{e.crossings.front().tau, e.crossings.back().tau, 0};
  });

  ContinuityReport report;
  report.kappa = kappa;
  report.gap_threshold = std::ldexp(1.0, -kappa + 4);
  report.bound = std::ldexp(1.0, -kappa + 1);
  report.ordered = true;
  std::size_t over = 0, used = 0;
  for (const Pair& p : pairs) {
    if (p.censored) {
      ++report.censored;
      continue;
    }
    ++used;
    if (p.tau2 < p.tau1) report.ordered = false;
    if (p.tau2 - p.tau1 > report.gap_threshold) ++over;
  }
  if (used == 0) throw DomainError("exit_continuity_check: every path was censored");
  report.exceedance = proportion(over, used);
  report.pass = report.ordered && report.exceedance.mean <= report.bound + 3.0 * report.exceedance.std_error;
  return report;
}

}  // namespace potlab
