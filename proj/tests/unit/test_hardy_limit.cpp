#include <gtest/gtest.h>

#include <cmath>

#include "potlab/errors.hpp"
#include "potlab/hardy_limit.hpp"
#include "potlab/harmonic.hpp"

using namespace potlab;

namespace {

RateData identity_rates(double b1 = 0.0) {
  RateData r;
  r.b1 = b1;
  r.b2 = 1.0;
  r.delta1 = [](double eps) { return std::min(eps, 0.5); };
  r.delta2 = [](double eps) { return std::min(eps, 0.5); };
  return r;
}

}  // namespace

TEST(HardyLimit, Delta3TakesTheSmallerRate) {
  RateData r = identity_rates();
  r.delta2 = [](double eps) { return eps * eps; };
  EXPECT_DOUBLE_EQ(delta3(r, 0.2), 0.01);
  EXPECT_THROW(delta3(r, 0.0), DomainError);
}

TEST(HardyLimit, GammaIsTheLimitOfI3) {
  const HarmonicFn u = catalog_member(2, "x1");
  ASSERT_TRUE(u.hardy);
  const double gamma = gamma_limit(*u.hardy);
  const HardyIntegrals near_one = hardy_integrals(u, 0.999, member_quadrature(u));
  EXPECT_NEAR(gamma, u.hardy->b2 - 1.0 + u.hardy->b1, 0.0);
  EXPECT_NEAR(near_one.i3, gamma, 1e-3);
}

TEST(HardyLimit, LinearScheduleWithIdentityRates) {
  const RadiusSchedule s = radius_schedule(identity_rates(), 3, ScheduleVariant::linear);
  // eps_1 = 1/24, delta3 = eps_1 / 2.
  EXPECT_DOUBLE_EQ(s.eps[0], 1.0 / 24.0);
  EXPECT_DOUBLE_EQ(s.radii[0], 1.0 - 1.0 / 48.0);
  EXPECT_DOUBLE_EQ(s.gaps[2], 1.0 / 192.0);
  EXPECT_NO_THROW(s.validate());
}

TEST(HardyLimit, ConservativeScheduleDominates) {
  for (double b1 : {0.0, 0.1, 0.3}) {
    const RateData rates = identity_rates(b1);
    const RadiusSchedule lin = radius_schedule(rates, 4, ScheduleVariant::linear);
    const RadiusSchedule cub = radius_schedule(rates, 4, ScheduleVariant::cubic);
    const RadiusSchedule con = radius_schedule(rates, 4, ScheduleVariant::conservative_min);
    for (int q = 0; q < 4; ++q) {
      EXPECT_GE(con.radii[q], lin.radii[q]);
      EXPECT_GE(con.radii[q], cub.radii[q]);
      EXPECT_EQ(con.eps[q], std::min(lin.eps[q], cub.eps[q]));
    }
  }
}

TEST(HardyLimit, StepRatesStillGiveIncreasingRadii) {
  RateData r = identity_rates();
  r.delta1 = [](double) { return 0.1; };
  r.delta2 = [](double) { return 0.2; };
  const RadiusSchedule s = radius_schedule(r, 4);
  EXPECT_DOUBLE_EQ(s.gaps[0], 0.1);
  EXPECT_DOUBLE_EQ(s.gaps[1], 0.05);
  EXPECT_NO_THROW(s.validate());
}

TEST(HardyLimit, ScheduleRejectsUnderflow) {
  EXPECT_THROW(radius_schedule(identity_rates(5.0), 12), DomainError);
  EXPECT_THROW(radius_schedule(identity_rates(), 0), DomainError);
}

TEST(HardyLimit, VariantNames) {
  for (ScheduleVariant v : {ScheduleVariant::linear, ScheduleVariant::cubic, ScheduleVariant::conservative_min})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("fastest"), DomainError);
}

TEST(HardyLimit, CensorAllowance) {
  EXPECT_DOUBLE_EQ(censor_allowance(200.0), 0.25);
  EXPECT_DOUBLE_EQ(censor_allowance(10.0), 1.0);
  EXPECT_DOUBLE_EQ(censor_allowance(0.5), 2.0);
}

TEST(HardyLimit, ZeroMemberNeverExceeds) {
  const HarmonicFn u = catalog_member(2, "zero");
  const RadiusSchedule s = radius_schedule(*u.hardy, 3);
  PathConfig cfg;
  cfg.m = 2;
  cfg.dt = 1e-3;
  cfg.seed = 19;
  const LimitReport rep = limit_experiment(u, s, cfg, 300);
  for (const LimitRow& row : rep.rows) EXPECT_EQ(row.exceedance.mean, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(HardyLimit, HandMadeScheduleIsNonDegenerate) {
  const HarmonicFn u = catalog_member(2, "x1");
  const RadiusSchedule s = schedule_from_radii(*u.hardy, {0.5, 0.8, 0.95});
  PathConfig cfg;
  cfg.m = 2;
  cfg.dt = 1e-4;
  cfg.seed = 23;
  const LimitReport a = limit_experiment(u, s, cfg, 400, 0.999, 1);
  const LimitReport b = limit_experiment(u, s, cfg, 400, 0.999, 2);
  ASSERT_EQ(a.rows.size(), 3u);
  for (const LimitRow& row : a.rows) EXPECT_FALSE(row.clamped);
  // Thresholds 4 and 2 cannot be crossed since |V - u| <= 2.
  EXPECT_EQ(a.rows[0].exceedance.mean, 0.0);
  EXPECT_EQ(a.rows[1].exceedance.mean, 0.0);
  EXPECT_TRUE(a.max_truth_gap.has_value());
  EXPECT_LT(*a.max_truth_gap, 0.01);
  for (std::size_t q = 0; q < 3; ++q) EXPECT_EQ(a.rows[q].exceedance.mean, b.rows[q].exceedance.mean);
  EXPECT_TRUE(a.pass);
}

TEST(HardyLimit, ExperimentValidatesInputs) {
  const HarmonicFn u = catalog_member(2, "x1");
  const RadiusSchedule s = schedule_from_radii(*u.hardy, {0.5, 0.8});
  PathConfig cfg;
  cfg.m = 3;
  EXPECT_THROW(limit_experiment(u, s, cfg, 10), DomainError);
  cfg.m = 2;
  EXPECT_THROW(limit_experiment(u, s, cfg, 10, 1.0), DomainError);
  EXPECT_THROW(schedule_from_radii(*u.hardy, {0.8, 0.5}), DomainError);
}
