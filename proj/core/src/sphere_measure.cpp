#include "potlab/sphere_measure.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "potlab/errors.hpp"

namespace potlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Area of the unit (k-1)-sphere in R^k, k >= 1 (two points when k = 1).
double unit_sphere_area(int k) {
  if (k == 1) return 2.0;
  if (k % 2 == 0) {
    const int half = k / 2;
    return std::pow(kPi, half) * k / std::tgamma(half + 1.0);
  }
  double odd_product = 1.0;  // 1 * 3 * ... * (k - 2)
  for (int j = 3; j <= k - 2; j += 2) odd_product *= j;
  return std::pow(2.0, (k + 1) / 2) * std::pow(kPi, (k - 1) / 2) / odd_product;
}

void check_m(int m, const char* who) {
  if (m < 2) throw DomainError(std::string(who) + ": dimension m must be at least 2");
  if (static_cast<std::size_t>(m) > Point::kMaxDim) {
    throw DomainError(std::string(who) + ": dimension exceeds Point::kMaxDim");
  }
}

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  const int order = static_cast<int>(n);
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(order);
  x.clear();
  w.clear();
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(order, z);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x.push_back(z);
    w.push_back(weight);
    if (z != 0.0) {
      x.push_back(-z);
      w.push_back(weight);
    }
  }
}

using NodeVisitor = std::function<void(const Point&, double)>;

void chebyshev_circle(const SurfaceQuadrature& q, const NodeVisitor& visit) {
  const std::size_t n = q.node_count;
  const double w = q.r * kPi / static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = (2.0 * static_cast<double>(k) - 1.0) * kPi / (2.0 * static_cast<double>(n));
    const double theta = std::cos(a);
    const double height = std::sin(a);  // sqrt(1 - theta^2), exact on this grid
    visit(Point{q.r * theta, q.r * height}, w);
    visit(Point{q.r * theta, -q.r * height}, w);
  }
}

void polar_sphere(const SurfaceQuadrature& q, const NodeVisitor& visit) {
  // theta = sin(u) (cos phi, sin phi): the chart weight 1/sqrt(1-|theta|^2)
  // cancels against d theta = sin u cos u du dphi.
  std::vector<double> x, w;
  gauss_legendre(q.node_count, x, w);
  const std::size_t n_phi = 2 * q.node_count;
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  std::vector<double> cos_phi(n_phi), sin_phi(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    cos_phi[j] = std::cos(dphi * static_cast<double>(j));
    sin_phi[j] = std::sin(dphi * static_cast<double>(j));
  }
  const double r2 = q.r * q.r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = 0.25 * kPi * (x[i] + 1.0);
    const double su = std::sin(u), cu = std::cos(u);
    const double weight = r2 * su * w[i] * 0.25 * kPi * dphi;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double a = q.r * su * cos_phi[j], b = q.r * su * sin_phi[j];
      visit(Point{a, b, q.r * cu}, weight);
      visit(Point{a, b, -q.r * cu}, weight);
    }
  }
}

void chart_montecarlo(const SurfaceQuadrature& q, const NodeVisitor& visit) {
  const std::size_t m = static_cast<std::size_t>(q.m);
  const double base = std::pow(q.r, q.m - 1) * 0.5 * kPi * unit_sphere_area(q.m - 1) /
                      static_cast<double>(q.node_count);
  RngStream stream(q.seed, q.stream_id);
  const Point origin(m - 1);
  for (std::size_t i = 0; i < q.node_count; ++i) {
    const double u = 0.5 * kPi * stream.uniform();
    const Point dir = uniform_sphere_sample(stream, q.m - 1, origin, 1.0);
    const double su = std::sin(u);
    const double weight = base * std::pow(su, q.m - 2);
    Point up(m), down(m);
    for (std::size_t k = 0; k + 1 < m; ++k) up[k] = down[k] = q.r * su * dir[k];
    up[m - 1] = q.r * std::cos(u);
    down[m - 1] = -up[m - 1];
    visit(up, weight);
    visit(down, weight);
  }
}

}  // namespace

double surface_area(int m, double r) {
  check_m(m, "surface_area");
  if (!(r > 0.0)) throw DomainError("surface_area: radius must be positive");
  return std::pow(r, m - 1) * unit_sphere_area(m);
}

double ball_volume(int m, double r) {
  check_m(m, "ball_volume");
  if (!(r > 0.0)) throw DomainError("ball_volume: radius must be positive");
  return std::pow(r, m) * unit_sphere_area(m) / m;
}

SurfaceQuadrature SurfaceQuadrature::gauss(int m, double r, std::size_t nodes) {
  SurfaceQuadrature q;
  q.m = m;
  q.r = r;
  q.method = QuadratureMethod::chart_gauss;
  q.node_count = nodes != 0 ? nodes : (m == 2 ? 1024 : 128);
  q.validate();
  return q;
}

SurfaceQuadrature SurfaceQuadrature::montecarlo(int m, double r, std::size_t samples,
                                                std::uint64_t seed, std::uint64_t stream_id) {
  SurfaceQuadrature q;
  q.m = m;
  q.r = r;
  q.method = QuadratureMethod::chart_montecarlo;
  q.node_count = samples;
  q.seed = seed;
  q.stream_id = stream_id;
  q.validate();
  return q;
}

SurfaceQuadrature SurfaceQuadrature::automatic(int m, double r, std::size_t mc_samples,
                                               std::uint64_t seed) {
  if (m == 2 || m == 3) return gauss(m, r);
  return montecarlo(m, r, mc_samples, seed);
}

SurfaceQuadrature SurfaceQuadrature::with_radius(double radius) const {
  SurfaceQuadrature q = *this;
  q.r = radius;
  q.validate();
  return q;
}

void SurfaceQuadrature::validate() const {
  check_m(m, "SurfaceQuadrature");
  if (!(r > 0.0)) throw DomainError("SurfaceQuadrature: radius must be positive");
  if (node_count < 1) throw DomainError("SurfaceQuadrature: node_count must be at least 1");
  if (method == QuadratureMethod::chart_gauss && m != 2 && m != 3) {
    throw DomainError("SurfaceQuadrature: chart_gauss supports m = 2 and m = 3 only");
  }
}

void visit_surface_nodes(const SurfaceQuadrature& quad, const NodeVisitor& visit) {
  quad.validate();
  if (quad.method == QuadratureMethod::chart_montecarlo) {
    chart_montecarlo(quad, visit);
  } else if (quad.m == 2) {
    chebyshev_circle(quad, visit);
  } else {
    polar_sphere(quad, visit);
  }
}

std::vector<QuadratureNode> surface_nodes(const SurfaceQuadrature& quad) {
  std::vector<QuadratureNode> nodes;
  visit_surface_nodes(quad, [&](const Point& p, double w) { nodes.push_back({p, w}); });
  return nodes;
}

Integral surface_integral(const SphereFunction& g, const SurfaceQuadrature& quad) {
  if (quad.method == QuadratureMethod::chart_gauss) {
    ExactSum s;
    visit_surface_nodes(quad, [&](const Point& p, double w) { s.add(w * g(p)); });
    return {s.value(), 0.0};
  }
  // One Monte Carlo sample = both hemisphere images.
  const double n = static_cast<double>(quad.node_count);
  std::vector<double> per_sample;
  per_sample.reserve(quad.node_count);
  bool first_half = true;
  double pending = 0.0;
  visit_surface_nodes(quad, [&](const Point& p, double w) {
    if (first_half) {
      pending = w * g(p);
    } else {
      per_sample.push_back(n * (pending + w * g(p)));
    }
    first_half = !first_half;
  });
  const McEstimate est = mc_estimate(per_sample);
  return {est.mean, est.std_error};
}

Integral sphere_average(const SphereFunction& g, const Point& y, const SurfaceQuadrature& quad) {
  if (y.dim() != static_cast<std::size_t>(quad.m)) throw DomainError("sphere_average: centre dimension");
  const Integral total = surface_integral([&](const Point& z) { return g(y + z); }, quad);
  const double area = surface_area(quad.m, quad.r);
  return {total.value / area, total.std_error / area};
}

Point uniform_sphere_sample(RngStream& stream, int m, const Point& y, double r) {
  if (m < 1 || y.dim() != static_cast<std::size_t>(m)) throw DomainError("uniform_sphere_sample: dimension");
  if (!(r > 0.0)) throw DomainError("uniform_sphere_sample: radius must be positive");
  Point g(static_cast<std::size_t>(m));
  double n = 0.0;
  do {
    for (int i = 0; i < m; ++i) g[i] = stream.normal();
    n = g.norm();
  } while (n < 1e-300);
  g *= r / n;
  return y + g;
}

McEstimate shell_average(const SphereFunction& g, int m, double s, double r, std::size_t n,
                         RngStream& stream) {
  check_m(m, "shell_average");
  if (!(s > 0.0) || !(s < r)) throw DomainError("shell_average: need 0 < s < r");
  if (n == 0) throw DomainError("shell_average: need at least one sample");
  std::vector<double> values;
  values.reserve(n);
  Point x(static_cast<std::size_t>(m));
  while (values.size() < n) {
    for (int i = 0; i < m; ++i) x[i] = r * (2.0 * stream.uniform() - 1.0);
    const double d = x.norm();
    if (d <= s || d >= r) continue;
    values.push_back(g(x * (r / d)));
  }
  return mc_estimate(values);
}

}  // namespace potlab
