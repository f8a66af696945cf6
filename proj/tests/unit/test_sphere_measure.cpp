#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "potlab/errors.hpp"
#include "potlab/geom.hpp"
#include "potlab/sphere_measure.hpp"

using namespace potlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(SphereMeasure, ClosedFormAreas) {
  EXPECT_NEAR(surface_area(2), 2 * kPi, 1e-15);
  EXPECT_NEAR(surface_area(3), 4 * kPi, 1e-14);
  EXPECT_NEAR(surface_area(4), 2 * kPi * kPi, 1e-14);
  EXPECT_NEAR(surface_area(5), 8 * kPi * kPi / 3, 1e-13);
  EXPECT_NEAR(surface_area(3, 2.0), 16 * kPi, 1e-13);
  EXPECT_NEAR(ball_volume(2), kPi, 1e-15);
  EXPECT_NEAR(ball_volume(3), 4 * kPi / 3, 1e-14);
  EXPECT_NEAR(ball_volume(3, 0.5), kPi / 6, 1e-15);
  EXPECT_THROW(surface_area(1), DomainError);
}

TEST(SphereMeasure, GaussAreaAndMoments) {
  const auto one = [](const Point&) { return 1.0; };
  EXPECT_NEAR(surface_integral(one, SurfaceQuadrature::gauss(2)).value, 2 * kPi, 1e-10);
  EXPECT_NEAR(surface_integral(one, SurfaceQuadrature::gauss(3)).value, 4 * kPi, 1e-8);
  const SurfaceQuadrature q3 = SurfaceQuadrature::gauss(3);
  EXPECT_NEAR(surface_integral([](const Point& z) { return z[0]; }, q3).value, 0.0, 1e-12);
  EXPECT_NEAR(surface_integral([](const Point& z) { return z[0] * z[0]; }, q3).value, 4 * kPi / 3, 1e-8);
  EXPECT_NEAR(surface_integral([](const Point& z) { return z[2] * z[2]; }, q3).value, 4 * kPi / 3, 1e-8);
}

TEST(SphereMeasure, AreaScalesWithRadius) {
  const auto one = [](const Point&) { return 1.0; };
  for (int m : {2, 3}) {
    const double r = 0.7;
    EXPECT_NEAR(surface_integral(one, SurfaceQuadrature::gauss(m, r)).value, std::pow(r, m - 1) * surface_area(m),
                1e-8);
  }
}

TEST(SphereMeasure, MonteCarloAreaWithinFiveSigma) {
  for (int m : {4, 5, 6}) {
    const Integral a =
        surface_integral([](const Point&) { return 1.0; }, SurfaceQuadrature::montecarlo(m, 1.0, 200000, 21));
    EXPECT_GT(a.std_error, 0.0);
    EXPECT_LE(std::abs(a.value - surface_area(m)), 5.0 * a.std_error) << "m=" << m;
  }
}

TEST(SphereMeasure, AverageIsRotationInvariant) {
  const auto g = [](const Point& z) { return std::exp(z[0]) + z[1] * z[1]; };
  const SurfaceQuadrature q = SurfaceQuadrature::gauss(3);
  const double base = sphere_average(g, Point(3), q).value;
  const RotationMatrix a = rotation_to(Point{0.0, 0.6, 0.8});
  const double rotated = sphere_average([&](const Point& z) { return g(a.apply(z)); }, Point(3), q).value;
  EXPECT_NEAR(base, rotated, 1e-8);
}

TEST(SphereMeasure, AverageAboutShiftedCentre) {
  const Point y{0.2, -0.1};
  const double avg = sphere_average([](const Point& z) { return z[0]; }, y, SurfaceQuadrature::gauss(2, 0.3)).value;
  EXPECT_NEAR(avg, 0.2, 1e-12);
}

TEST(SphereMeasure, UniformSamplesLieOnTheSphere) {
  RngStream s(31, 0);
  const Point y{0.1, 0.2, 0.3};
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Point z = uniform_sphere_sample(s, 3, y, 0.5);
    EXPECT_NEAR(distance(z, y), 0.5, 1e-12);
    sum += z[0] - y[0];
  }
  // E z1 = 0, sd of the mean 0.5 / sqrt(3 n).
  EXPECT_LE(std::abs(sum / n), 4.0 * 0.5 / std::sqrt(3.0 * n));
}

TEST(SphereMeasure, ShellAverageOfRadialFunctions) {
  RngStream s(32, 0);
  const McEstimate one = shell_average([](const Point&) { return 1.0; }, 3, 0.5, 1.0, 1000, s);
  EXPECT_EQ(one.mean, 1.0);
  EXPECT_EQ(one.std_error, 0.0);
  const McEstimate z1 = shell_average([](const Point& z) { return z[0]; }, 3, 0.5, 1.0, 20000, s);
  EXPECT_LE(std::abs(z1.mean), 4.0 * z1.std_error);
  EXPECT_THROW(shell_average([](const Point&) { return 1.0; }, 3, 1.0, 0.5, 10, s), DomainError);
}

TEST(SphereMeasure, QuadratureValidation) {
  EXPECT_THROW(SurfaceQuadrature::gauss(4).validate(), DomainError);
  EXPECT_THROW(SurfaceQuadrature::gauss(2, -1.0).validate(), DomainError);
}
