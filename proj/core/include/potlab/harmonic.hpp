#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potlab/geom.hpp"
#include "potlab/sphere_measure.hpp"

namespace potlab {

using Field = std::function<double(const Point&)>;

/// Limits and convergence rates of the Hardy integrals of a harmonic
/// function u on the unit ball:
///   I1(r) = avg |u(r z)|   -> b1,   |b1 - I1(r)| < eps for 1 - r < delta1(eps)
///   I2(r) = avg e^{-|u(r z)|} -> b2, |b2 - I2(r)| < eps for 1 - r < delta2(eps)
/// delta1 and delta2 take values in (0, 1) and shrink as eps shrinks.
struct RateData {
  double p = 1.0;
  double b0 = 0.0;  // strict upper bound on I1 over (0, 1)
  double b1 = 0.0;
  std::function<double(double)> delta1;
  double b2 = 1.0;
  std::function<double(double)> delta2;

  /// Throws InvariantViolation unless p >= 1, b1 >= 0, b2 in [0, 1] and
  /// both rates are callable.
  void validate() const;
};

/// A harmonic function on the open unit ball with the metadata the
/// limit experiments need.
struct HarmonicFn {
  std::string name;
  int dim = 2;
  Field eval;
  /// modulus(r, eps): |u(x) - u(x')| <= eps whenever |x - x'| <= modulus
  /// and both points lie in the closed ball of radius r < 1.
  std::function<double(double, double)> modulus;
  /// Continuous boundary values, when u extends continuously to the sphere.
  std::optional<Field> boundary;
  std::optional<RateData> hardy;

  double operator()(const Point& x) const { return eval(x); }
};

/// Poisson kernel of D(y, r), relative to the uniform distribution on the
/// sphere: r^{m-2} (r^2 - |x - y|^2) / |z - x|^m. Reduces to
/// (1 - |x|^2) / |z - x|^m on the unit ball.
double poisson_kernel(const Point& y, double r, const Point& x, const Point& z);

/// Poisson integral of boundary data g at x in D(y, r); quad supplies the
/// rule (its radius is replaced by r).
Integral poisson_extend(const Field& g, const Point& y, double r, const Point& x,
                        const SurfaceQuadrature& quad);

/// |u(y) - average of u over the sphere of radius r about y|.
/// The closed ball B(y, r) must lie inside the open unit ball.
double mean_value_residual(const HarmonicFn& u, const Point& y, double r, const SurfaceQuadrature& quad);

/// Central second-difference Laplacian. The ball of radius h around x must
/// lie inside the unit ball.
double laplacian_fd(const HarmonicFn& u, const Point& x, double h = 1e-3);

struct HardyIntegrals {
  double i1 = 0.0;  // avg |u(r z)|
  double i2 = 0.0;  // avg exp(-|u(r z)|)
  double i3 = 0.0;  // avg lambda_bar(u(r z))
};

/// All three integrals share one set of nodes; I3 agrees with I2 - 1 + I1
/// to rounding.
HardyIntegrals hardy_integrals(const HarmonicFn& u, double r, const SurfaceQuadrature& quad);

/// Rates estimated from the Hardy integrals on an increasing grid in (0, 1).
///
/// b1, b2 are linear extrapolations to r = 1 from the last two grid points
/// (b2 clipped to 1). delta(eps) is half the distance to 1 of the first grid
/// radius beyond which every tabulated |b - I| is below eps; below the
/// grid's resolution the same linear model is used. Every delta is capped
/// at the smallest grid gap (including 1 - r_last).
///
/// Throws InvariantViolation when I1 decreases by more than
/// tol::kMonotoneStep or when I2 is not monotone in either direction.
RateData estimate_rates(const HarmonicFn& u, std::span<const double> r_grid, const SurfaceQuadrature& quad);

/// Default grid used by catalog(): 0.1, 0.2, ..., 0.9, 0.95, 0.99.
std::vector<double> default_rate_grid();

/// Harmonic test functions for dimension m (u(0) = 0 except the Poisson
/// slice, which keeps avg k = 1):
///   zero; coordinate functions x_i; for m = 2, Re and Im of (x1 + i x2)^n
///   for n = 2..4 (n = 1 gives the coordinates); for m = 3, x1 x2 and x1 x2 x3; the Poisson slice
///   x -> k_{0,1}(x, e_m).
/// Rates are attached for m in {2, 3}. Results are cached per m.
std::vector<HarmonicFn> catalog(int m);

/// The Gauss rule used for a catalog member's Hardy integrals; the Poisson
/// slice needs a finer rule because of its peak near the pole.
SurfaceQuadrature member_quadrature(const HarmonicFn& u);

/// One catalog entry by name; throws DomainError when absent.
HarmonicFn catalog_member(int m, const std::string& name);

}  // namespace potlab
