#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "potlab/errors.hpp"
#include "potlab/geom.hpp"
#include "potlab/rng.hpp"
#include "potlab/sphere_measure.hpp"
#include "potlab/tolerances.hpp"

using namespace potlab;

namespace {

Point random_unit(RngStream& s, int m) { return uniform_sphere_sample(s, m, Point(static_cast<std::size_t>(m)), 1.0); }

}  // namespace

TEST(Geom, AngleExamples) {
  EXPECT_NEAR(angle(Point{1, 0}, Point{0, 1}), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(angle(Point{1, 0}, Point{-1, 0}), std::numbers::pi, 1e-15);
  EXPECT_NEAR(angle(Point{1, 1, 0}, Point{2, 2, 0}), 0.0, 1e-7);
  EXPECT_NEAR(angle(Point{1, 0, 0}, Point{1, 1, 0}), std::numbers::pi / 4, 1e-15);
  EXPECT_THROW(angle(Point{0, 0}, Point{1, 0}), DomainError);
}

TEST(Geom, BallSpecValidation) {
  BallSpec ok{Point{0, 0}, 1.0, 0.5};
  EXPECT_NO_THROW(ok.validate());
  EXPECT_TRUE(ok.contains(Point{0.7, 0}));
  EXPECT_FALSE(ok.contains(Point{0.2, 0}));
  EXPECT_FALSE(ok.contains(Point{1.0, 0}));
  EXPECT_THROW((BallSpec{Point{0, 0}, -1.0, std::nullopt}.validate()), DomainError);
  EXPECT_THROW((BallSpec{Point{0, 0}, 1.0, 1.5}.validate()), DomainError);
}

TEST(Geom, RotationAtE1IsIdentity) {
  for (std::size_t m : {2u, 3u, 5u}) {
    const RotationMatrix a = rotation_to(Point::unit(m, 0));
    EXPECT_LE(a.distance_to(RotationMatrix::identity(m)), 1e-15);
  }
}

TEST(Geom, QuarterTurnInThePlane) {
  const RotationMatrix a = rotation_to(Point{0, 1});
  EXPECT_NEAR(a(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(a(0, 1), -1.0, 1e-15);
  EXPECT_NEAR(a(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(a(1, 1), 0.0, 1e-15);
}

TEST(Geom, RotationPropertiesOnRandomTargets) {
  for (int m : {2, 3, 5}) {
    RngStream s(11, static_cast<std::uint64_t>(m));
    for (int i = 0; i < 1000; ++i) {
      const Point z = random_unit(s, m);
      const RotationMatrix a = rotation_to(z);
      EXPECT_LE(a.orthogonality_error(), tol::kOrthogonality);
      EXPECT_NEAR(a.determinant(), 1.0, 1e-12);
      EXPECT_LE(distance(a.apply(Point::unit(static_cast<std::size_t>(m), 0)), z), 1e-12);
    }
  }
}

TEST(Geom, RotationFixesTheComplement) {
  const Point z{0.6, 0.8, 0.0};
  const RotationMatrix a = rotation_to(z);
  EXPECT_LE(distance(a.apply(Point{0, 0, 1}), Point{0, 0, 1}), 1e-15);
}

TEST(Geom, RotationIndependentOfSeedOrder) {
  RngStream s(12, 0);
  const std::vector<std::size_t> reversed{4, 3, 2, 1, 0};
  const std::vector<std::size_t> shuffled{2, 0, 4, 1, 3};
  for (int i = 0; i < 100; ++i) {
    const Point z = random_unit(s, 5);
    const RotationMatrix a = rotation_to(z);
    EXPECT_LE(a.distance_to(rotation_to(z, std::span<const std::size_t>(reversed))), 1e-12);
    EXPECT_LE(a.distance_to(rotation_to(z, std::span<const std::size_t>(shuffled))), 1e-12);
  }
}

TEST(Geom, RotationContinuousNearE1) {
  for (double t : {1e-3, 1e-5, 1e-7}) {
    const Point z{std::cos(t), std::sin(t), 0.0};
    EXPECT_LE(rotation_to(z).distance_to(RotationMatrix::identity(3)), 4.0 * t + 1e-8);
  }
}

TEST(Geom, RotationRejectsNonUnitTargets) {
  EXPECT_THROW(rotation_to(Point{2, 0}), DomainError);
}

TEST(Geom, RotateAboutFixesCentreAndPreservesDistance) {
  RngStream s(13, 0);
  for (int i = 0; i < 200; ++i) {
    const Point y = random_unit(s, 3) * 0.3;
    const Point z = random_unit(s, 3) * 0.5 + y;
    const RotationMatrix a = rotation_to(random_unit(s, 3));
    EXPECT_LE(distance(rotate_about(a, y, y), y), 1e-15);
    EXPECT_NEAR(distance(rotate_about(a, y, z), y), distance(z, y), 1e-14);
  }
}
