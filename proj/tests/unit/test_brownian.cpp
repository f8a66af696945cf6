#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "potlab/brownian.hpp"
#include "potlab/errors.hpp"
#include "potlab/parallel.hpp"
#include "potlab/tolerances.hpp"

using namespace potlab;

TEST(Brownian, NormalCdfMatchesSeries) {
  for (double x = -4.0; x <= 4.0; x += 0.25) EXPECT_NEAR(normal_cdf(x), oracle::normal_cdf_series(x), 1e-14);
}

TEST(Brownian, ReflectionProbability) {
  EXPECT_NEAR(reflection_prob(1.0, 1.0), 0.317310507862914, 1e-12);
  EXPECT_NEAR(reflection_prob(4.0, 2.0), reflection_prob(1.0, 1.0), 1e-15);
  EXPECT_THROW(reflection_prob(0.0, 1.0), DomainError);
  EXPECT_THROW(reflection_prob(1.0, -1.0), DomainError);
}

TEST(Brownian, TightnessTable) {
  EXPECT_EQ(tightness_N(2.0, 1), 9);
  EXPECT_EQ(tightness_N(2.0, 0), 1);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_EQ(tightness_N(2.0, k), oracle::tightness_scan(2.0, k)) << "k=" << k;
    EXPECT_GE(tightness_N(2.0, k + 1), tightness_N(2.0, k));
    EXPECT_GE(tightness_N(3.0, k), tightness_N(2.0, k));
  }
}

TEST(Brownian, ExitPointsLieOnTheSphere) {
  PathConfig cfg;
  cfg.m = 3;
  cfg.dt = 1e-3;
  cfg.seed = 5;
  for (std::uint64_t i = 0; i < 50; ++i) {
    cfg.stream_id = i;
    const ExitResult r = simulate_exit(cfg, Point{0.2, 0, 0}, 1.0, true);
    ASSERT_FALSE(r.event.censored);
    EXPECT_NEAR(r.event.exit_point.norm(), 1.0, tol::kExitOnSphere);
    EXPECT_GT(r.event.tau, 0.0);
    EXPECT_EQ(r.event.dt_used, 1e-3);
  }
  EXPECT_THROW(simulate_exit(cfg, Point{1.0, 0, 0}, 1.0), DomainError);
}

TEST(Brownian, ShortHorizonCensors) {
  PathConfig cfg;
  cfg.m = 2;
  cfg.dt = 1e-3;
  cfg.horizon = 0.01;
  const ExitResult r = simulate_exit(cfg, Point{0, 0}, 1.0);
  EXPECT_TRUE(r.event.censored);
  EXPECT_NEAR(r.event.tau, 0.01, 1e-12);
  EXPECT_LT(r.event.exit_point.norm(), 1.0);
}

TEST(Brownian, NestedCrossingsAreOrdered) {
  PathConfig cfg;
  cfg.m = 2;
  cfg.dt = 1e-4;
  const std::vector<double> radii{0.5, 0.8, 0.9};
  for (std::uint64_t i = 0; i < 30; ++i) {
    RngStream s(6, i);
    const NestedExit e = simulate_nested_exit(cfg, s, Point{0, 0}, radii, 1);
    ASSERT_FALSE(e.censored);
    ASSERT_EQ(e.crossings.size(), 3u);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(e.crossings[j].exit_point.norm(), radii[j], 1e-9);
    EXPECT_LE(e.crossings[0].tau, e.crossings[1].tau);
    EXPECT_LE(e.crossings[1].tau, e.crossings[2].tau);
    for (const TracePoint& p : e.trace) EXPECT_GE(p.t, e.crossings[1].tau);
  }
}

TEST(Brownian, WalkOnSpheresMeanAndSupport) {
  const Point x{0.5, 0.0};
  const int n = 40000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream s(7, static_cast<std::uint64_t>(i));
    const Point z = wos_exit_point(s, x, 1.0);
    EXPECT_NEAR(z.norm(), 1.0, 1e-12);
    sum += z[0];
  }
  // Var z1 <= 1, so 4 / sqrt(n) is a generous bound.
  EXPECT_NEAR(sum / n, 0.5, 4.0 / std::sqrt(static_cast<double>(n)));

  RngStream s(8, 0);
  const Point centred = wos_exit_point(s, Point{0, 0, 0}, 2.0);
  EXPECT_NEAR(centred.norm(), 2.0, 1e-12);
}

TEST(Brownian, WalkOnSpheresFavoursTheNearSide) {
  int right = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    RngStream s(9, static_cast<std::uint64_t>(i));
    right += wos_exit_point(s, Point{0.5, 0.0}, 1.0)[0] > 0.0;
  }
  // P(z1 > 0) = 1/2 + (2/pi) atan(1/2) ~ 0.7952 for the unit disc.
  EXPECT_NEAR(static_cast<double>(right) / n, 0.5 + 2.0 / std::numbers::pi * std::atan(0.5), 0.015);
}

TEST(Brownian, ContinuityPreconditions) {
  const ContinuityReport same = exit_continuity_check(3, Point{0, 0}, 0.9, 0.9, 2, 1e-3, 200);
  EXPECT_EQ(same.exceedance.mean, 0.0);
  EXPECT_TRUE(same.ordered);
  EXPECT_THROW(exit_continuity_check(3, Point{0, 0}, 0.9, 0.95625, 2, 1e-3, 200), DomainError);
  EXPECT_THROW(exit_continuity_check(3, Point{0, 0}, 0.9, 0.85, 2, 1e-3, 200), DomainError);
}

TEST(Brownian, ChecksIndependentOfWorkerCount) {
  const ReflectionReport a = reflection_check(4, 1.0, 1.0, 1e-3, 300, true, 1);
  const ReflectionReport b = reflection_check(4, 1.0, 1.0, 1e-3, 300, true, 3);
  EXPECT_EQ(a.estimate.mean, b.estimate.mean);
  const ScalingReport s1 = scaling_check(4, 2, 4.0, 1e-3, 100, 1);
  const ScalingReport s2 = scaling_check(4, 2, 4.0, 1e-3, 100, 2);
  EXPECT_EQ(s1.ks.statistic, s2.ks.statistic);
  EXPECT_EQ(s1.tau_scaled.mean, s2.tau_scaled.mean);
}

TEST(Brownian, PathConfigValidation) {
  PathConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.dt = 1.0;
  cfg.horizon = 0.5;
  EXPECT_THROW(cfg.validate(), DomainError);
}
