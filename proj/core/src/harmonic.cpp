#include "potlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "potlab/errors.hpp"
#include "potlab/martingale.hpp"
#include "potlab/tolerances.hpp"

namespace potlab {

void RateData::validate() const {
  if (!(p >= 1.0)) throw InvariantViolation("RateData: exponent p must be at least 1");
  if (!(b1 >= 0.0)) throw InvariantViolation("RateData: b1 must be nonnegative");
  if (!(b2 >= 0.0 && b2 <= 1.0)) throw InvariantViolation("RateData: b2 must lie in [0, 1]");
  if (!delta1 || !delta2) throw InvariantViolation("RateData: missing rate function");
}

double poisson_kernel(const Point& y, double r, const Point& x, const Point& z) {
  if (!(r > 0.0)) throw DomainError("poisson_kernel: radius must be positive");
  if (x.dim() != y.dim() || z.dim() != y.dim()) throw DomainError("poisson_kernel: dimension mismatch");
  const double dx2 = (x - y).norm_squared();
  if (!(dx2 < r * r)) throw DomainError("poisson_kernel: x outside the open ball");
  if (std::abs(distance(z, y) - r) > tol::kOnSphere * std::max(1.0, r)) {
    throw DomainError("poisson_kernel: z is not on the sphere");
  }
  const int m = static_cast<int>(y.dim());
  return std::pow(r, m - 2) * (r * r - dx2) / std::pow(distance(z, x), m);
}

Integral poisson_extend(const Field& g, const Point& y, double r, const Point& x,
                        const SurfaceQuadrature& quad) {
  if (!(distance(x, y) < r)) throw DomainError("poisson_extend: x outside the open ball");
  const SurfaceQuadrature q = quad.with_radius(r);
  return sphere_average(
      [&](const Point& z) {
        // The rule's nodes are on the sphere to rounding; project to keep
        // the kernel's on-sphere check exact.
        Point zz = z - y;
        zz *= r / zz.norm();
        zz += y;
        return poisson_kernel(y, r, x, zz) * g(zz);
      },
      y, q);
}

double mean_value_residual(const HarmonicFn& u, const Point& y, double r, const SurfaceQuadrature& quad) {
  if (!(r > 0.0)) throw DomainError("mean_value_residual: radius must be positive");
  if (!(y.norm() + r < 1.0)) throw DomainError("mean_value_residual: closed ball leaves the unit ball");
  const Integral avg = sphere_average(u.eval, y, quad.with_radius(r));
  return std::abs(u(y) - avg.value);
}

double laplacian_fd(const HarmonicFn& u, const Point& x, double h) {
  if (!(h > 0.0)) throw DomainError("laplacian_fd: step must be positive");
  if (!(x.norm() + h < 1.0)) throw DomainError("laplacian_fd: step leaves the unit ball");
  const double centre = u(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Point plus = x, minus = x;
    plus[i] += h;
    minus[i] -= h;
    sum += (u(plus) - 2.0 * centre + u(minus)) / (h * h);
  }
  return sum;
}

HardyIntegrals hardy_integrals(const HarmonicFn& u, double r, const SurfaceQuadrature& quad) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("hardy_integrals: r must lie in (0, 1)");
  const SurfaceQuadrature unit = quad.with_radius(1.0);
  // Normalising by the rule's own total weight keeps I3 = I2 - 1 + I1 to
  // rounding even though the weights reproduce the area only approximately.
  ExactSum s1, s2, s3, total;
  visit_surface_nodes(unit, [&](const Point& z, double w) {
    const double v = u(z * r);
    s1.add(w * std::abs(v));
    s2.add(w * std::exp(-std::abs(v)));
    s3.add(w * lambda_bar(v));
    total.add(w);
  });
  const double area = total.value();
  return {s1.value() / area, s2.value() / area, s3.value() / area};
}

namespace {

struct RateTable {
  std::vector<double> radii;
  std::vector<double> tail_max;  // max_{i >= j} |b - I_i|
  double smallest_gap = 1.0;
};

double table_delta(const RateTable& t, double eps) {
  if (!(eps > 0.0)) throw DomainError("rate: eps must be positive");
  double delta = 0.0;
  const std::size_t n = t.radii.size();
  std::size_t j = 0;
  while (j < n && !(t.tail_max[j] < eps)) ++j;
  if (j < n) {
    delta = 0.5 * (1.0 - t.radii[j]);
  } else {
    // Below the grid's resolution: |b - I(r)| ~ D_n (1 - r) / (1 - r_n).
    delta = 0.5 * eps * (1.0 - t.radii[n - 1]) / t.tail_max[n - 1];
  }
  return std::min(delta, t.smallest_gap);
}

double extrapolate_to_one(std::span<const double> r, std::span<const double> v) {
  const std::size_t n = r.size();
  if (n < 2) return v[n - 1];
  const double slope = (v[n - 1] - v[n - 2]) / (r[n - 1] - r[n - 2]);
  return v[n - 1] + slope * (1.0 - r[n - 1]);
}

}  // namespace

RateData estimate_rates(const HarmonicFn& u, std::span<const double> r_grid, const SurfaceQuadrature& quad) {
  if (r_grid.size() < 2) throw DomainError("estimate_rates: need at least two grid radii");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0)) throw DomainError("estimate_rates: radii must lie in (0, 1)");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw DomainError("estimate_rates: radii must increase");
  }

  const std::size_t n = r_grid.size();
  std::vector<double> i1(n), i2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const HardyIntegrals h = hardy_integrals(u, r_grid[j], quad);
    i1[j] = h.i1;
    i2[j] = h.i2;
  }

  bool i2_up = true, i2_down = true;
  for (std::size_t j = 1; j < n; ++j) {
    if (i1[j] - i1[j - 1] < -tol::kMonotoneStep) {
      throw InvariantViolation("estimate_rates: I1 decreases between r = " + std::to_string(r_grid[j - 1]) +
                               " and r = " + std::to_string(r_grid[j]));
    }
    if (i2[j] - i2[j - 1] < -tol::kMonotoneStep) i2_up = false;
    if (i2[j] - i2[j - 1] > tol::kMonotoneStep) i2_down = false;
  }
  if (!i2_up && !i2_down) throw InvariantViolation("estimate_rates: I2 is not monotone on the grid");

  RateData rates;
  rates.p = 1.0;
  rates.b1 = std::max(extrapolate_to_one(r_grid, i1), i1.back());
  rates.b2 = std::clamp(extrapolate_to_one(r_grid, i2), 0.0, 1.0);
  rates.b0 = std::max(rates.b1, *std::max_element(i1.begin(), i1.end())) * (1.0 + 1e-6) + 1e-9;

  double smallest_gap = 1.0 - r_grid[n - 1];
  for (std::size_t j = 1; j < n; ++j) smallest_gap = std::min(smallest_gap, r_grid[j] - r_grid[j - 1]);

  auto make_table = [&](const std::vector<double>& values, double limit) {
    RateTable t;
    t.radii.assign(r_grid.begin(), r_grid.end());
    t.tail_max.resize(n);
    double running = 0.0;
    for (std::size_t j = n; j-- > 0;) {
      running = std::max(running, std::abs(limit - values[j]));
      t.tail_max[j] = running;
    }
    t.smallest_gap = smallest_gap;
    return t;
  };
  const RateTable t1 = make_table(i1, rates.b1);
  const RateTable t2 = make_table(i2, rates.b2);
  rates.delta1 = [t1](double eps) { return table_delta(t1, eps); };
  rates.delta2 = [t2](double eps) { return table_delta(t2, eps); };
  rates.validate();
  return rates;
}

std::vector<double> default_rate_grid() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}

namespace {

HarmonicFn make_member(std::string name, int m, Field eval, std::function<double(double)> lipschitz,
                       std::optional<Field> boundary) {
  HarmonicFn u;
  u.name = std::move(name);
  u.dim = m;
  u.eval = std::move(eval);
  u.modulus = [lipschitz = std::move(lipschitz)](double r, double eps) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("modulus: radius must lie in [0, 1)");
    const double l = lipschitz(r);
    return l > 0.0 ? eps / l : 2.0;
  };
  u.boundary = std::move(boundary);
  return u;
}

std::complex<double> z_power(const Point& x, int n) {
  return std::pow(std::complex<double>(x[0], x[1]), n);
}

}  // namespace

namespace {

std::vector<HarmonicFn> build_catalog(int m) {
  if (m < 2 || static_cast<std::size_t>(m) > Point::kMaxDim) throw DomainError("catalog: unsupported dimension");
  std::vector<HarmonicFn> out;

  out.push_back(make_member("zero", m, [](const Point&) { return 0.0; }, [](double) { return 0.0; },
                            Field([](const Point&) { return 0.0; })));

  for (int i = 0; i < m; ++i) {
    Field coord = [i](const Point& x) { return x[i]; };
    out.push_back(make_member("x" + std::to_string(i + 1), m, coord, [](double) { return 1.0; }, coord));
  }

  if (m == 2) {
    // n = 1 coincides with the coordinate functions.
    for (int n = 2; n <= 4; ++n) {
      Field re = [n](const Point& x) { return z_power(x, n).real(); };
      Field im = [n](const Point& x) { return z_power(x, n).imag(); };
      auto lip = [n](double r) { return n * std::pow(r, n - 1); };
      out.push_back(make_member("re_z" + std::to_string(n), m, re, lip, re));
      out.push_back(make_member("im_z" + std::to_string(n), m, im, lip, im));
    }
  }

  if (m == 3) {
    Field x1x2 = [](const Point& x) { return x[0] * x[1]; };
    Field x1x2x3 = [](const Point& x) { return x[0] * x[1] * x[2]; };
    out.push_back(make_member("x1x2", m, x1x2, [](double r) { return r; }, x1x2));
    out.push_back(make_member("x1x2x3", m, x1x2x3, [](double r) { return r * r / std::sqrt(3.0); }, x1x2x3));
  }

  {
    // Kept unnormalised (u(0) = 1) so that I1 is identically 1.
    const Point pole = Point::unit(static_cast<std::size_t>(m), static_cast<std::size_t>(m - 1));
    const Point origin(static_cast<std::size_t>(m));
    Field slice = [pole, m](const Point& x) {
      return (1.0 - x.norm_squared()) / std::pow(distance(pole, x), m);
    };
    auto lip = [m](double r) { return (2.0 + 2.0 * m) / std::pow(1.0 - r, m); };
    out.push_back(make_member("poisson_slice", m, slice, lip, std::nullopt));
  }

  if (m == 2 || m == 3) {
    const std::vector<double> grid = default_rate_grid();
    for (auto& u : out) {
      u.hardy = estimate_rates(u, grid, member_quadrature(u));
    }
  }
  return out;
}

}  // namespace

SurfaceQuadrature member_quadrature(const HarmonicFn& u) {
  const bool peaked = u.name == "poisson_slice";
  return SurfaceQuadrature::gauss(u.dim, 1.0, peaked ? (u.dim == 2 ? 2048 : 256) : 0);
}

std::vector<HarmonicFn> catalog(int m) {
  static std::mutex mutex;
  static std::map<int, std::vector<HarmonicFn>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_catalog(m)).first;
  return it->second;
}

HarmonicFn catalog_member(int m, const std::string& name) {
  for (auto& u : catalog(m))
    if (u.name == name) return u;
  throw DomainError("catalog: no member named '" + name + "' for m = " + std::to_string(m));
}

}  // namespace potlab
