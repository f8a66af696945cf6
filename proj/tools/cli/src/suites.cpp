#include "potlab_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "potlab/brownian.hpp"
#include "potlab/errors.hpp"
#include "potlab/hardy_limit.hpp"
#include "potlab/harmonic.hpp"
#include "potlab/martingale.hpp"
#include "potlab/parallel.hpp"
#include "potlab/sphere_measure.hpp"
#include "potlab/stats.hpp"

namespace potlab::cli {

namespace {

// Stream tags owned by the suites (the library functions use their own).
constexpr std::uint64_t kTagAreaMc = 0x1001;
constexpr std::uint64_t kTagCentredExit = 0x1002;
constexpr std::uint64_t kTagOffCentreWos = 0x1003;
constexpr std::uint64_t kTagAgreementWos = 0x1004;
constexpr std::uint64_t kTagAgreementPath = 0x1005;
constexpr std::uint64_t kTagLambda = 0x1006;
constexpr std::uint64_t kTagSkeleton = 0x1007;

std::size_t paths_or(const RunContext& ctx, std::size_t fallback) { return ctx.cfg.n_paths.value_or(fallback); }

PathConfig path_config(const RunContext& ctx, int m, double dt_default) {
  PathConfig cfg;
  cfg.m = m;
  cfg.dt = ctx.cfg.dt.value_or(dt_default);
  cfg.horizon = ctx.cfg.horizon.value_or(200.0);
  cfg.seed = ctx.seed;
  return cfg;
}

Json estimate_json(const McEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["n"] = e.n;
  return j;
}

void finish(const SuiteResult& r, const CsvTable& table, const RunContext& ctx) {
  std::filesystem::create_directories(ctx.out);
  table.write(ctx.out / (r.suite + ".csv"), r.suite, ctx.seed);
  write_json(ctx.out / (r.suite + ".json"), to_json(r));
}

// P(z1 <= t) for z uniform on the unit (m-1)-sphere.
double first_coordinate_cdf(int m, double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = 0.5 * (m - 1);
  return boost::math::ibeta(a, a, 0.5 * (1.0 + t));
}

}  // namespace

RunContext RunContext::from(const RunConfig& cfg, std::size_t workers) {
  validate(cfg);
  RunContext ctx;
  ctx.cfg = cfg;
  ctx.seed = cfg.seed.value_or(kDefaultSeed);
  if (cfg.out_dir) ctx.out = *cfg.out_dir;
  ctx.workers = std::max<std::size_t>(workers, 1);
  return ctx;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"constants", "exit-dist",  "reflection", "tightness",
                                              "scaling",   "continuity", "martingale", "hardy-limit"};
  return names;
}

SuiteResult run_suite(const std::string& name, const RunContext& ctx) {
  if (name == "constants") return run_constants(ctx);
  if (name == "exit-dist") return run_exit_dist(ctx);
  if (name == "reflection") return run_reflection(ctx);
  if (name == "tightness") return run_tightness(ctx);
  if (name == "scaling") return run_scaling(ctx);
  if (name == "continuity") return run_continuity(ctx);
  if (name == "martingale") return run_martingale(ctx);
  if (name == "hardy-limit") return run_hardy_limit(ctx);
  throw ConfigError("unknown suite '" + name + "'");
}

SuiteResult run_constants(const RunContext& ctx) {
  SuiteResult r{"constants", ctx.seed, {}, Json::object()};
  CsvTable table({"quantity", "m", "method", "closed_form", "quadrature", "abs_err", "std_error", "tolerance", "pass"});
  const std::size_t mc_samples = paths_or(ctx, 1'000'000);

  for (int m = 2; m <= 5; ++m) {
    const bool gauss = m <= 3;
    const SurfaceQuadrature quad = gauss ? SurfaceQuadrature::gauss(m, 1.0)
                                         : SurfaceQuadrature::montecarlo(m, 1.0, mc_samples, ctx.seed,
                                                                         stream_for(kTagAreaMc, m));
    const Integral area = surface_integral([](const Point&) { return 1.0; }, quad);
    const double area_tol = gauss ? (m == 2 ? 1e-10 : 1e-8) : 5.0 * area.std_error;
    const std::string method = gauss ? "chart_gauss" : "chart_montecarlo";
    const std::string ms = std::to_string(m);

    const double closed_area = surface_area(m, 1.0);
    r.checks.push_back(close_check("area m=" + ms, "chart quadrature of 1 over the unit sphere equals sigma_" + ms,
                                   closed_area, area.value, area_tol));
    table.add({"area", ms, method, num(closed_area), num(area.value), num(std::abs(area.value - closed_area)),
               num(area.std_error), num(area_tol), flag(r.checks.back().pass)});

    // nu_m = sigma_m / m: the radial integral is exact, so the volume
    // inherits the surface rule's error scaled by 1/m.
    const double closed_vol = ball_volume(m, 1.0);
    const double vol = area.value / m, vol_se = area.std_error / m, vol_tol = area_tol / m;
    r.checks.push_back(close_check("volume m=" + ms, "radial integration of the surface rule equals nu_" + ms,
                                   closed_vol, vol, vol_tol));
    table.add({"volume", ms, method, num(closed_vol), num(vol), num(std::abs(vol - closed_vol)), num(vol_se),
               num(vol_tol), flag(r.checks.back().pass)});
  }
  const double two_pi_sq = 2.0 * std::numbers::pi * std::numbers::pi;
  r.checks.push_back(close_check("area m=4 closed form", "sigma_4 = 2 pi^2", two_pi_sq, surface_area(4, 1.0),
                                 4.0 * std::numeric_limits<double>::epsilon() * two_pi_sq));
  r.details["mc_samples"] = mc_samples;
  finish(r, table, ctx);
  return r;
}

SuiteResult run_exit_dist(const RunContext& ctx) {
  SuiteResult r{"exit-dist", ctx.seed, {}, Json::object()};
  const int m_centre = ctx.cfg.m.value_or(3);
  const int m_off = ctx.cfg.m.value_or(2);
  const std::size_t n_centre = paths_or(ctx, 20'000);
  const std::size_t n_wos = paths_or(ctx, 100'000);
  const std::size_t n_agree = paths_or(ctx, 10'000);
  const int width = std::max(m_centre, m_off);

  std::vector<std::string> columns{"case", "index", "tau", "censored"};
  for (int i = 1; i <= width; ++i) columns.push_back("z" + std::to_string(i));
  CsvTable table(columns);
  auto add_row = [&](const std::string& label, std::size_t i, const std::string& tau, bool censored,
                     const Point& z) {
    std::vector<std::string> row{label, num(i), tau, flag(censored)};
    for (int k = 0; k < width; ++k) row.push_back(static_cast<std::size_t>(k) < z.dim() ? num(z[k]) : "");
    table.add(std::move(row));
  };

  auto discretised_exits = [&](int m, const Point& x0, std::size_t n, std::uint64_t tag) {
    const PathConfig base = path_config(ctx, m, 1e-4);
    return parallel_map(n, ctx.workers, [&, tag](std::size_t i) {
      PathConfig cfg = base;
      cfg.stream_id = stream_for(tag, i);
      return simulate_exit(cfg, x0, 1.0, false).event;
    });
  };
  auto first_coordinates = [](const std::vector<ExitEvent>& events, std::size_t& censored) {
    std::vector<double> out;
    censored = 0;
    for (const auto& e : events) {
      if (e.censored) {
        ++censored;
      } else {
        out.push_back(e.exit_point[0]);
      }
    }
    return out;
  };

  // Centred start: the exit point is uniform on the sphere.
  const std::vector<ExitEvent> centre = discretised_exits(m_centre, Point(m_centre), n_centre, kTagCentredExit);
  for (std::size_t i = 0; i < centre.size(); ++i)
    add_row("centred_discretized", i, num(centre[i].tau), centre[i].censored, centre[i].exit_point);
  std::size_t centre_censored = 0;
  const std::vector<double> z1 = first_coordinates(centre, centre_censored);
  const KsResult ks_uniform = ks_one_sample(z1, [m_centre](double t) { return first_coordinate_cdf(m_centre, t); });
  r.checks.push_back(bound_check("centred uniformity",
                                 "exit point from the centre is uniform on the sphere (KS on z1 at 5%)",
                                 ks_uniform.threshold, ks_uniform.statistic, 0.0));

  // Off-centre start, exact sampler: E z1 = x1 because z1 is harmonic.
  Point x_off(m_off);
  x_off[0] = 0.5;
  const std::vector<Point> wos = parallel_map(n_wos, ctx.workers, [&](std::size_t i) {
    RngStream stream(ctx.seed, stream_for(kTagOffCentreWos, i));
    return wos_exit_point(stream, x_off, 1.0);
  });
  std::vector<double> wos_z1(wos.size());
  for (std::size_t i = 0; i < wos.size(); ++i) {
    wos_z1[i] = wos[i][0];
    add_row("offcentre_wos", i, "", false, wos[i]);
  }
  const McEstimate mean_z1 = mc_estimate(wos_z1);
  r.checks.push_back(close_check("off-centre Poisson mean",
                                 "E z1 under the Poisson kernel from x = (0.5, 0, ...) equals 0.5 (3 se)", 0.5,
                                 mean_z1.mean, 3.0 * mean_z1.std_error));

  // Engine agreement from the same off-centre start.
  const std::vector<Point> wos_a = parallel_map(n_agree, ctx.workers, [&](std::size_t i) {
    RngStream stream(ctx.seed, stream_for(kTagAgreementWos, i));
    return wos_exit_point(stream, x_off, 1.0);
  });
  const std::vector<ExitEvent> path_a = discretised_exits(m_off, x_off, n_agree, kTagAgreementPath);
  std::vector<double> wos_a_z1;
  for (std::size_t i = 0; i < wos_a.size(); ++i) {
    wos_a_z1.push_back(wos_a[i][0]);
    add_row("agreement_wos", i, "", false, wos_a[i]);
  }
  for (std::size_t i = 0; i < path_a.size(); ++i)
    add_row("agreement_discretized", i, num(path_a[i].tau), path_a[i].censored, path_a[i].exit_point);
  std::size_t agree_censored = 0;
  const std::vector<double> path_a_z1 = first_coordinates(path_a, agree_censored);
  const KsResult ks_agree = ks_two_sample(wos_a_z1, path_a_z1);
  r.checks.push_back(bound_check("engine agreement",
                                 "walk-on-spheres and discretized exit points share the law of z1 (KS at 5%)",
                                 ks_agree.threshold, ks_agree.statistic, 0.0));

  r.details["centred"] = {{"m", m_centre}, {"n", n_centre}, {"censored", centre_censored},
                          {"ks_statistic", ks_uniform.statistic}, {"ks_threshold", ks_uniform.threshold}};
  r.details["offcentre_wos"] = {{"m", m_off}, {"n", n_wos}, {"mean_z1", estimate_json(mean_z1)}};
  r.details["agreement"] = {{"m", m_off}, {"n", n_agree}, {"censored", agree_censored},
                            {"ks_statistic", ks_agree.statistic}, {"ks_threshold", ks_agree.threshold}};
  finish(r, table, ctx);
  return r;
}

SuiteResult run_reflection(const RunContext& ctx) {
  SuiteResult r{"reflection", ctx.seed, {}, Json::object()};
  const double t = 1.0, lam = 1.0;
  const double dt = ctx.cfg.dt.value_or(1e-5);
  const std::size_t n = paths_or(ctx, 10'000);
  const ReflectionReport rep = reflection_check(ctx.seed, t, lam, dt, n, true, ctx.workers);
  r.checks.push_back(close_check("running maximum", "P(sup_[0,1] B >= 1) = 2 (1 - Phi(1)) for 1-d motion",
                                 rep.target, rep.estimate.mean, 0.005));
  CsvTable table({"t", "lambda", "dt", "n_paths", "target", "estimate", "std_error", "abs_error", "pass"});
  table.add({num(t), num(lam), num(dt), num(n), num(rep.target), num(rep.estimate.mean),
             num(rep.estimate.std_error), num(rep.abs_error), flag(r.checks.back().pass)});
  r.details["estimate"] = estimate_json(rep.estimate);
  r.details["bridge_correction"] = true;
  finish(r, table, ctx);
  return r;
}

SuiteResult run_tightness(const RunContext& ctx) {
  SuiteResult r{"tightness", ctx.seed, {}, Json::object()};
  const int m = ctx.cfg.m.value_or(2);
  const double r_tilde = 2.0;
  const std::size_t n = paths_or(ctx, 10'000);
  const double dt = ctx.cfg.dt.value_or(1e-4);
  const int ks[] = {1, 2, 3};

  const long n21 = tightness_N(r_tilde, 1);
  r.checks.push_back(close_check("N_{2,1}", "smallest N with 2 Phi(2 / sqrt N) - 1 < 1/2 is 9", 9.0,
                                 static_cast<double>(n21), 0.0));
  const std::vector<TightnessRow> rows = tightness_check(ctx.seed, m, r_tilde, ks, dt, n, ctx.workers);
  CsvTable table({"k", "N", "horizon", "censored_fraction", "std_error", "bound", "pass"});
  for (const auto& row : rows) {
    r.checks.push_back(bound_check("censoring k=" + std::to_string(row.k),
                                   "P(tau_{0,1} > N_{2,k} + 1) <= 2^{-k+1} (3 se)", row.bound, row.censored.mean,
                                   3.0 * row.censored.std_error));
    table.add({num(row.k), std::to_string(row.n_table), num(row.horizon), num(row.censored.mean),
               num(row.censored.std_error), num(row.bound), flag(r.checks.back().pass)});
  }
  r.details["m"] = m;
  r.details["dt"] = dt;
  r.details["n_paths"] = n;
  finish(r, table, ctx);
  return r;
}

SuiteResult run_scaling(const RunContext& ctx) {
  SuiteResult r{"scaling", ctx.seed, {}, Json::object()};
  const int m = ctx.cfg.m.value_or(2);
  const double scale = 4.0;
  const double dt = ctx.cfg.dt.value_or(1e-4);
  const std::size_t n = paths_or(ctx, 10'000);
  const ScalingReport rep = scaling_check(ctx.seed, m, scale, dt, n, ctx.workers);
  r.checks.push_back(bound_check("exit-time scaling", "tau_{0,2} has the law of 4 tau_{0,1} (two-sample KS at 5%)",
                                 rep.ks.threshold, rep.ks.statistic, 0.0));
  CsvTable table({"scale", "n_paths", "dt", "ks_statistic", "ks_threshold", "mean_tau_scaled", "se_scaled",
                  "mean_scale_tau_unit", "se_unit", "mean_gap_sigmas", "pass"});
  table.add({num(scale), num(n), num(dt), num(rep.ks.statistic), num(rep.ks.threshold), num(rep.tau_scaled.mean),
             num(rep.tau_scaled.std_error), num(rep.tau_unit_x.mean), num(rep.tau_unit_x.std_error),
             num(rep.mean_gap_sigmas), flag(r.checks.back().pass)});
  r.details["tau_scaled"] = estimate_json(rep.tau_scaled);
  r.details["scale_tau_unit"] = estimate_json(rep.tau_unit_x);
  r.details["means_agree"] = rep.means_agree;
  finish(r, table, ctx);
  return r;
}

SuiteResult run_continuity(const RunContext& ctx) {
  SuiteResult r{"continuity", ctx.seed, {}, Json::object()};
  const int m = ctx.cfg.m.value_or(2);
  const double r1 = 0.9, r2 = 0.95;
  const int kappa = 2;
  const double dt = ctx.cfg.dt.value_or(1e-4);
  const std::size_t n = paths_or(ctx, 10'000);
  const ContinuityReport rep = exit_continuity_check(ctx.seed, Point(m), r1, r2, kappa, dt, n, ctx.workers);
  r.checks.push_back(bound_check("exit-time continuity", "P(tau(r'') - tau(r') > 2^{-kappa+4}) <= 2^{-kappa+1} (3 se)",
                                 rep.bound, rep.exceedance.mean, 3.0 * rep.exceedance.std_error));
  r.checks.push_back(truth_check("ordering", "tau(r') <= tau(r'') on every path", rep.ordered));
  CsvTable table({"r1", "r2", "kappa", "gap_threshold", "exceedance", "std_error", "bound", "censored", "pass"});
  table.add({num(r1), num(r2), num(kappa), num(rep.gap_threshold), num(rep.exceedance.mean),
             num(rep.exceedance.std_error), num(rep.bound), num(rep.censored), flag(rep.pass)});
  r.details["m"] = m;
  r.details["dt"] = dt;
  finish(r, table, ctx);
  return r;
}

SuiteResult run_martingale(const RunContext& ctx) {
  SuiteResult r{"martingale", ctx.seed, {}, Json::object()};
  CsvTable table({"section", "label", "quantity", "value"});

  // lambda_bar properties on random arguments.
  {
    RngStream stream(ctx.seed, stream_for(kTagLambda, 0));
    double worst_bound = -std::numeric_limits<double>::infinity();
    double worst_convexity = std::numeric_limits<double>::infinity();
    bool nonnegative = true;
    const double h = 1e-2;
    for (int i = 0; i < 10'000; ++i) {
      const double v = -10.0 + 20.0 * stream.uniform();
      const double lb = lambda_bar(v);
      nonnegative = nonnegative && lb >= 0.0;
      worst_bound = std::max(worst_bound, lb - std::abs(v));
      worst_convexity = std::min(worst_convexity, lambda_bar(v - h) - 2.0 * lb + lambda_bar(v + h));
    }
    double worst_branch = 0.0;
    for (double v : {1e-4, -1e-4}) {
      const double s = lambda_bar_series(v), c = lambda_bar_closed(v);
      worst_branch = std::max(worst_branch, std::abs(s - c) / c);
    }
    r.checks.push_back(truth_check("lambda_bar nonnegative", "lambda_bar(v) >= 0 on 10^4 draws from [-10, 10]",
                                   nonnegative));
    r.checks.push_back(bound_check("lambda_bar below |v|", "lambda_bar(v) <= |v| on 10^4 draws from [-10, 10]", 0.0,
                                   worst_bound, 0.0));
    r.checks.push_back(bound_check("lambda_bar convex", "second differences with h = 0.01 are >= -1e-12", 0.0,
                                   -worst_convexity, 1e-12));
    r.checks.push_back(bound_check("lambda_bar branches", "series and closed form agree at |v| = 1e-4", 0.0,
                                   worst_branch, 1e-16));
    table.add({"lambda_bar", "random", "max(lambda_bar - |v|)", num(worst_bound)});
    table.add({"lambda_bar", "random", "min second difference", num(worst_convexity)});
    table.add({"lambda_bar", "switchover", "relative branch gap", num(worst_branch)});
  }

  // Maximal inequality on the exit-time martingale of x1.
  const int m = ctx.cfg.m.value_or(2);
  const HarmonicFn u = catalog_member(m, "x1");
  const std::vector<double> radii{0.90, 0.9025, 0.905, 0.9075, 0.91};
  const std::size_t n = paths_or(ctx, 10'000);
  const MartingaleSample skeleton = sample_Y_skeleton(ctx.seed, kTagSkeleton, u, radii, n, ctx.workers);
  std::optional<MaximalInequalityReport> chosen;
  for (int k = 1; k <= 20; ++k) {
    const double eps = k / 20.0;
    const MaximalInequalityReport rep = maximal_inequality_check(skeleton, eps);
    const std::string label = "eps=" + num(eps);
    table.add({"maximal", label, "lhs", num(rep.lhs)});
    table.add({"maximal", label, "lhs_std_error", num(rep.lhs_std_error)});
    table.add({"maximal", label, "rhs_guarded", num(rep.rhs_guarded)});
    table.add({"maximal", label, "premise_holds", flag(rep.premise_holds)});
    table.add({"maximal", label, "exceedance", num(rep.exceedance)});
    table.add({"maximal", label, "exceedance_std_error", num(rep.exceedance_std_error)});
    if (rep.premise_holds && !chosen) chosen = rep;
  }
  r.checks.push_back(truth_check("maximal premise found",
                                 "some eps in {0.05, ..., 1} satisfies the premise with a 3 se margin",
                                 chosen.has_value()));
  if (chosen) {
    r.checks.push_back(strict_bound_check("maximal conclusion",
                                          "P(max_k |Z_k - Z_0| > eps) < eps at the smallest eps with the premise",
                                          chosen->eps, chosen->exceedance, 3.0 * chosen->exceedance_std_error));
    r.details["maximal_eps"] = chosen->eps;
  }

  // Fair coin: the premise must be reported as failing.
  {
    MartingaleSample coin({0.0, 1.0}, 2);
    coin(0, 1) = 1.0;
    coin(1, 1) = -1.0;
    const MaximalInequalityReport rep = maximal_inequality_check(coin, 0.5);
    r.checks.push_back(truth_check("fair coin premise", "Z0 = 0, Z1 = +-1, eps = 0.5: the premise fails",
                                   !rep.premise_holds));
    table.add({"fair_coin", "eps=0.5", "lhs", num(rep.lhs)});
    table.add({"fair_coin", "eps=0.5", "rhs", num(rep.rhs)});
    table.add({"fair_coin", "eps=0.5", "premise_holds", flag(rep.premise_holds)});
  }

  // The skeleton is a martingale and its moments match the Hardy integrals.
  {
    const DriftReport drift = martingale_drift(skeleton, 0, skeleton.stages() - 1, 10);
    r.checks.push_back(bound_check("martingale drift", "E[Y_0.91 - Y_0.90 | decile of Y_0.90] = 0 (3 se per bin)",
                                   3.0, drift.max_abs_z, 0.0));
    table.add({"drift", "deciles", "max |mean| / se", num(drift.max_abs_z)});
    const std::vector<double> y = skeleton.stage(0);
    std::vector<double> abs_y(y.size()), exp_y(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      abs_y[i] = std::abs(y[i]);
      exp_y[i] = std::exp(-std::abs(y[i]));
    }
    const HardyIntegrals h = hardy_integrals(u, radii.front(), member_quadrature(u));
    const McEstimate e_abs = mc_estimate(abs_y), e_exp = mc_estimate(exp_y);
    r.checks.push_back(close_check("E|Y_r| = I1(r)", "E|u(B_tau(0.9))| equals the sphere average of |u(0.9 z)|", h.i1,
                                   e_abs.mean, 3.0 * e_abs.std_error));
    r.checks.push_back(close_check("E exp(-|Y_r|) = I2(r)",
                                   "E exp(-|u(B_tau(0.9))|) equals the sphere average of exp(-|u(0.9 z)|)", h.i2,
                                   e_exp.mean, 3.0 * e_exp.std_error));
  }

  // Monotonicity of the Hardy integrals over the catalog.
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(0.1 * k);
  grid.push_back(0.95);
  for (int dim : {2, 3}) {
    for (const HarmonicFn& member : catalog(dim)) {
      const MonotonicityReport rep = monotonicity_report(member, grid, member_quadrature(member));
      const std::string label = "m=" + std::to_string(dim) + "/" + member.name;
      for (std::size_t j = 0; j < rep.radii.size(); ++j) {
        const std::string at = label + "/r=" + num(rep.radii[j]);
        table.add({"monotonicity", at, "i1", num(rep.values[j].i1)});
        table.add({"monotonicity", at, "i2", num(rep.values[j].i2)});
        table.add({"monotonicity", at, "i3", num(rep.values[j].i3)});
      }
      r.checks.push_back(bound_check(label + " I1 nondecreasing", "I1(r) is nondecreasing in r (steps >= -1e-8)", 0.0,
                                     -rep.min_step_i1, 1e-8));
      r.checks.push_back(bound_check(label + " I2 nondecreasing", "I2(r) is nondecreasing in r (steps >= -1e-8)", 0.0,
                                     -rep.min_step_i2, 1e-8));
      r.checks.push_back(bound_check(label + " I3 nondecreasing", "I3(r) is nondecreasing in r (steps >= -1e-8)", 0.0,
                                     -rep.min_step_i3, 1e-8));
      r.checks.push_back(bound_check(label + " I2 <= 1", "I2(r) <= 1", 1.0, rep.max_i2, 0.0));
      r.checks.push_back(bound_check(label + " identity", "I3 = I2 - 1 + I1 within 1e-12", 0.0, rep.max_identity_gap,
                                     1e-12));
    }
  }
  finish(r, table, ctx);
  return r;
}

SuiteResult run_hardy_limit(const RunContext& ctx) {
  SuiteResult r{"hardy-limit", ctx.seed, {}, Json::object()};
  const int m = ctx.cfg.m.value_or(2);
  const int q_max = ctx.cfg.q_max.value_or(3);
  const ScheduleVariant variant = parse_variant(ctx.cfg.variant.value_or("conservative-min"));
  const double r_trunc = ctx.cfg.r_trunc.value_or(0.999);
  const std::size_t n = paths_or(ctx, 10'000);
  const std::vector<std::string> members{"x1", "poisson_slice", "zero"};

  CsvTable table({"member", "q", "r_q", "gap", "clamped", "threshold", "bound", "exceedance", "std_error",
                  "exceedance_boundary", "std_error_boundary", "pass"});
  Json per_member = Json::object();
  for (std::size_t j = 0; j < members.size(); ++j) {
    const HarmonicFn u = catalog_member(m, members[j]);
    if (!u.hardy) throw DomainError("hardy-limit: no rate data for m = " + std::to_string(m));
    const RadiusSchedule sched = radius_schedule(*u.hardy, q_max, variant);
    PathConfig cfg = path_config(ctx, m, 1e-4);
    cfg.stream_id = j + 1;
    const LimitReport rep = limit_experiment(u, sched, cfg, n, r_trunc, ctx.workers);

    for (const LimitRow& row : rep.rows) {
      const std::string label = u.name + " q=" + std::to_string(row.q);
      if (u.name == "zero") {
        r.checks.push_back(close_check(label, "u = 0 never exceeds the threshold", 0.0, row.exceedance.mean, 0.0));
      } else {
        r.checks.push_back(bound_check(label,
                                       "P(sup_{tau(r_q) <= s < tau(r_trunc)} |V - u(B_s)| > 2^{-q+3}) <= 2^{-q+4} (3 se)",
                                       row.bound, row.exceedance.mean, 3.0 * row.exceedance.std_error));
      }
      table.add({u.name, num(row.q), num(row.radius), num(row.gap), flag(row.clamped), num(row.threshold),
                 num(row.bound), num(row.exceedance.mean), num(row.exceedance.std_error),
                 row.exceedance_boundary ? num(row.exceedance_boundary->mean) : "",
                 row.exceedance_boundary ? num(row.exceedance_boundary->std_error) : "", flag(row.pass)});
    }
    r.checks.push_back(bound_check(u.name + " censoring", "censored fraction within the tightness allowance (3 se)",
                                   rep.censor_allowance, rep.censored_fraction.mean,
                                   3.0 * rep.censored_fraction.std_error));
    r.checks.push_back(bound_check(u.name + " failure budget", "fraction of paths failing any q <= sum of bounds (3 se)",
                                   rep.budget, rep.any_failure.mean, 3.0 * rep.any_failure.std_error));

    // The default schedule dominates both single-chain variants.
    const RadiusSchedule lin = radius_schedule(*u.hardy, q_max, ScheduleVariant::linear);
    const RadiusSchedule cub = radius_schedule(*u.hardy, q_max, ScheduleVariant::cubic);
    const RadiusSchedule con = radius_schedule(*u.hardy, q_max, ScheduleVariant::conservative_min);
    bool dominates = true;
    for (int q = 0; q < q_max; ++q)
      dominates = dominates && con.gaps[q] <= lin.gaps[q] && con.gaps[q] <= cub.gaps[q];
    r.checks.push_back(truth_check(u.name + " schedule dominance",
                                   "conservative-min radii are at least the linear and cubic radii", dominates));

    Json info;
    info["b1"] = u.hardy->b1;
    info["b2"] = u.hardy->b2;
    info["gamma"] = gamma_limit(*u.hardy);
    info["variant"] = to_string(variant);
    info["gaps"] = sched.gaps;
    info["censored"] = rep.censored;
    info["censor_allowance"] = rep.censor_allowance;
    info["any_failure"] = estimate_json(rep.any_failure);
    info["budget"] = rep.budget;
    if (rep.max_truth_gap) info["max_truth_gap"] = *rep.max_truth_gap;
    per_member[u.name] = std::move(info);
  }
  r.details["m"] = m;
  r.details["r_trunc"] = r_trunc;
  r.details["n_paths"] = n;
  r.details["members"] = std::move(per_member);
  finish(r, table, ctx);
  return r;
}

ReportSummary run_report(const RunContext& ctx, bool run_missing) {
  ReportSummary out;
  Json suites = Json::array();
  for (const std::string& name : suite_names()) {
    const auto path = ctx.out / (name + ".json");
    if (run_missing && !std::filesystem::exists(path)) (void)run_suite(name, ctx);
    Json entry;
    entry["suite"] = name;
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      const Json verdict = Json::parse(in);
      entry["present"] = true;
      entry["pass"] = verdict.value("pass", false);
      entry["seed"] = verdict.value("seed", std::uint64_t{0});
      entry["verdict"] = verdict;
    } else {
      entry["present"] = false;
      entry["pass"] = false;
    }
    if (!entry["pass"].get<bool>()) ++out.failed;
    suites.push_back(std::move(entry));
  }
  out.summary["failed"] = out.failed;
  out.summary["suites"] = std::move(suites);
  std::filesystem::create_directories(ctx.out);
  write_json(ctx.out / "summary.json", out.summary);
  return out;
}

}  // namespace potlab::cli
