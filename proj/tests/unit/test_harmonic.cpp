#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "potlab/errors.hpp"
#include "potlab/harmonic.hpp"
#include "potlab/martingale.hpp"

using namespace potlab;

namespace {

constexpr double kPi = std::numbers::pi;

HarmonicFn make(const std::string& name, int m, Field f) {
  HarmonicFn u;
  u.name = name;
  u.dim = m;
  u.eval = std::move(f);
  return u;
}

}  // namespace

TEST(Harmonic, KernelExamples) {
  const Point o{0, 0};
  EXPECT_NEAR(poisson_kernel(o, 1.0, Point{0.5, 0}, Point{1, 0}), 3.0, 1e-15);
  EXPECT_NEAR(poisson_kernel(o, 1.0, Point{0.5, 0}, Point{-1, 0}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(poisson_kernel(o, 1.0, o, Point{0, 1}), 1.0, 1e-15);
  EXPECT_NEAR(poisson_kernel(Point{0, 0, 0}, 2.0, Point{0, 0, 0}, Point{0, 2, 0}), 1.0, 1e-15);
  EXPECT_THROW(poisson_kernel(o, 1.0, Point{1.0, 0}, Point{0, 1}), DomainError);
  EXPECT_THROW(poisson_kernel(o, 1.0, o, Point{0.5, 0}), DomainError);
}

TEST(Harmonic, KernelIntegratesToOne) {
  for (int m : {2, 3}) {
    const Point y = m == 2 ? Point{0.1, 0.2} : Point{0.1, 0.0, -0.2};
    for (double r : {0.5, 1.0, 1.7}) {
      Point x = y;
      x[0] += 0.6 * r;
      const double mass =
          poisson_extend([](const Point&) { return 1.0; }, y, r, x, SurfaceQuadrature::gauss(m)).value;
      EXPECT_NEAR(mass, 1.0, 1e-8) << "m=" << m << " r=" << r;
    }
  }
}

TEST(Harmonic, PoissonExtensionReproducesHarmonicData) {
  const Point o{0, 0};
  const SurfaceQuadrature q = SurfaceQuadrature::gauss(2);
  const Point x{0.3, -0.4};
  EXPECT_NEAR(poisson_extend([](const Point& z) { return z[0]; }, o, 1.0, x, q).value, 0.3, 1e-12);
  EXPECT_NEAR(poisson_extend([](const Point& z) { return z[0] * z[0] - z[1] * z[1]; }, o, 1.0, x, q).value,
              0.09 - 0.16, 1e-12);
  // z1^2 is not harmonic: its extension is (1 + x1^2 - x2^2) / 2.
  EXPECT_NEAR(poisson_extend([](const Point& z) { return z[0] * z[0]; }, o, 1.0, x, q).value,
              0.5 * (1.0 + 0.09 - 0.16), 1e-12);
}

TEST(Harmonic, MeanValueResidual) {
  const SurfaceQuadrature q = SurfaceQuadrature::gauss(2);
  const HarmonicFn saddle = make("saddle", 2, [](const Point& x) { return x[0] * x[0] - x[1] * x[1]; });
  EXPECT_LE(mean_value_residual(saddle, Point{0.2, 0.1}, 0.5, q), 1e-13);
  // |x|^2 has average |y|^2 + r^2 over the circle, so the residual is r^2.
  const HarmonicFn bowl = make("bowl", 2, [](const Point& x) { return x.norm_squared(); });
  EXPECT_NEAR(mean_value_residual(bowl, Point{0.1, 0.1}, 0.5, q), 0.25, 1e-12);
  EXPECT_THROW(mean_value_residual(saddle, Point{0.6, 0}, 0.5, q), DomainError);
}

TEST(Harmonic, FiniteDifferenceLaplacian) {
  const HarmonicFn bowl = make("bowl", 3, [](const Point& x) { return x.norm_squared(); });
  EXPECT_NEAR(laplacian_fd(bowl, Point{0.1, 0.2, 0.3}), 6.0, 1e-6);
  const HarmonicFn saddle = make("saddle", 2, [](const Point& x) { return x[0] * x[0] - x[1] * x[1]; });
  EXPECT_NEAR(laplacian_fd(saddle, Point{0.3, 0.3}), 0.0, 1e-6);
}

TEST(Harmonic, HardyIntegralsOfX1AgainstSimpson) {
  const HarmonicFn x1 = catalog_member(2, "x1");
  for (double r : {0.3, 0.7, 0.95}) {
    const HardyIntegrals h = hardy_integrals(x1, r, SurfaceQuadrature::gauss(2));
    const double i2 = oracle::simpson([r](double t) { return std::exp(-std::abs(r * std::cos(t))); }, 0.0, 2 * kPi) /
                      (2 * kPi);
    // |u| has a kink on the equator, where the Gauss rule converges only
    // quadratically in the node count.
    EXPECT_NEAR(h.i1, 2.0 * r / kPi, 1e-6);
    EXPECT_NEAR(h.i2, i2, 1e-6);
    EXPECT_NEAR(h.i3, h.i2 - 1.0 + h.i1, 1e-12);
  }
}

TEST(Harmonic, ZeroMemberIntegrals) {
  const HardyIntegrals h = hardy_integrals(catalog_member(2, "zero"), 0.5, SurfaceQuadrature::gauss(2));
  EXPECT_EQ(h.i1, 0.0);
  EXPECT_EQ(h.i2, 1.0);
  EXPECT_EQ(h.i3, 0.0);
}

TEST(Harmonic, CatalogMembersAreHarmonic) {
  for (int m : {2, 3}) {
    for (const HarmonicFn& u : catalog(m)) {
      EXPECT_EQ(u.dim, m);
      for (const Point& x : {Point(static_cast<std::size_t>(m)), Point::unit(static_cast<std::size_t>(m), 0) * 0.4}) {
        EXPECT_LE(std::abs(laplacian_fd(u, x)), 1e-4) << u.name;
      }
      EXPECT_LE(mean_value_residual(u, Point::unit(static_cast<std::size_t>(m), 1) * 0.2, 0.5, member_quadrature(u)),
                1e-8)
          << u.name;
    }
  }
}

TEST(Harmonic, CatalogRates) {
  const HarmonicFn x1 = catalog_member(2, "x1");
  ASSERT_TRUE(x1.hardy);
  EXPECT_NEAR(x1.hardy->b1, 2.0 / kPi, 1e-6);
  EXPECT_NO_THROW(x1.hardy->validate());

  const HarmonicFn slice = catalog_member(2, "poisson_slice");
  for (double r : {0.2, 0.6, 0.95}) {
    EXPECT_NEAR(hardy_integrals(slice, r, member_quadrature(slice)).i1, 1.0, 1e-8);
  }

  const HarmonicFn zero = catalog_member(2, "zero");
  ASSERT_TRUE(zero.hardy);
  EXPECT_EQ(zero.hardy->b1, 0.0);
  EXPECT_EQ(zero.hardy->b2, 1.0);
  EXPECT_EQ(zero.hardy->delta1(0.1), 1.0 - 0.99);  // the smallest gap of the default grid
  EXPECT_THROW(catalog_member(2, "nope"), DomainError);
}

TEST(Harmonic, RatesShrinkWithEpsilon) {
  for (int m : {2, 3}) {
    for (const HarmonicFn& u : catalog(m)) {
      ASSERT_TRUE(u.hardy) << u.name;
      double prev1 = 0.0, prev2 = 0.0;
      for (double eps = 1e-6; eps < 2.0; eps *= 3.0) {
        const double d1 = u.hardy->delta1(eps), d2 = u.hardy->delta2(eps);
        EXPECT_GT(d1, 0.0);
        EXPECT_LT(d1, 1.0);
        EXPECT_GE(d1, prev1) << u.name;
        EXPECT_GE(d2, prev2) << u.name;
        prev1 = d1;
        prev2 = d2;
      }
    }
  }
}

TEST(Harmonic, MaximumModulusOnCatalog) {
  // A harmonic function on a ball is bounded by its maximum on the sphere.
  for (const HarmonicFn& u : catalog(2)) {
    double boundary_max = 0.0;
    for (const QuadratureNode& node : surface_nodes(SurfaceQuadrature::gauss(2, 0.8, 256)))
      boundary_max = std::max(boundary_max, std::abs(u(node.point)));
    for (double rho : {0.0, 0.3, 0.6, 0.79})
      for (double t : {0.0, 1.0, 2.5, 4.0})
        EXPECT_LE(std::abs(u(Point{rho * std::cos(t), rho * std::sin(t)})), boundary_max + 1e-9) << u.name;
  }
}

TEST(Harmonic, EstimateRatesRejectsDecreasingI1) {
  const HarmonicFn bad = make("shrinking", 2, [](const Point& x) { return 1.0 - x.norm_squared(); });
  const std::vector<double> grid{0.2, 0.5, 0.8};
  EXPECT_THROW(estimate_rates(bad, grid, SurfaceQuadrature::gauss(2)), InvariantViolation);
}
