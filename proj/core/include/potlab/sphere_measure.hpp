#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "potlab/geom.hpp"
#include "potlab/rng.hpp"
#include "potlab/stats.hpp"

namespace potlab {

using SphereFunction = std::function<double(const Point&)>;

/// sigma_{m,r}: total surface area of the (m-1)-sphere of radius r,
/// from the even/odd closed forms of sigma_{m,1}.
double surface_area(int m, double r = 1.0);

/// nu_{m,r} = r^m sigma_{m,1} / m.
double ball_volume(int m, double r = 1.0);

enum class QuadratureMethod {
  chart_gauss,       // deterministic, m = 2 or 3
  chart_montecarlo,  // any m >= 2
};

/// Quadrature over the sphere of radius r centred at 0, through the
/// two-hemisphere chart z = (r theta, +-r sqrt(1 - |theta|^2)).
///
/// node_count meaning by method:
///   chart_gauss, m = 2: Chebyshev-Gauss nodes in theta.
///   chart_gauss, m = 3: Gauss-Legendre nodes in the colatitude u
///                       (theta = sin u); 2 * node_count azimuth nodes.
///   chart_montecarlo:   number of chart samples (each gives two nodes).
struct SurfaceQuadrature {
  int m = 2;
  double r = 1.0;
  QuadratureMethod method = QuadratureMethod::chart_gauss;
  std::size_t node_count = 512;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  static SurfaceQuadrature gauss(int m, double r = 1.0, std::size_t nodes = 0);
  static SurfaceQuadrature montecarlo(int m, double r, std::size_t samples, std::uint64_t seed,
                                      std::uint64_t stream_id = 0);
  /// Gauss for m in {2, 3}, Monte Carlo with `mc_samples` otherwise.
  static SurfaceQuadrature automatic(int m, double r = 1.0, std::size_t mc_samples = 200000,
                                     std::uint64_t seed = 1);

  SurfaceQuadrature with_radius(double radius) const;
  void validate() const;
};

struct QuadratureNode {
  Point point;
  double weight;
};

/// Streams the nodes and weights of the rule, sum_i w_i g(z_i) ~
/// sigma_{m,0,r}(g), without materialising them. Monte Carlo rules visit
/// the two hemisphere images of each sample consecutively.
void visit_surface_nodes(const SurfaceQuadrature& quad,
                         const std::function<void(const Point&, double)>& visit);

/// Materialised form of visit_surface_nodes.
std::vector<QuadratureNode> surface_nodes(const SurfaceQuadrature& quad);

/// Estimate of sigma_{m,0,r}(g) with its standard error (zero for Gauss).
struct Integral {
  double value = 0.0;
  double std_error = 0.0;
};

Integral surface_integral(const SphereFunction& g, const SurfaceQuadrature& quad);

/// Average of g under the uniform distribution on the sphere of radius
/// quad.r centred at y.
Integral sphere_average(const SphereFunction& g, const Point& y, const SurfaceQuadrature& quad);

/// Uniform point on the sphere of radius r centred at y (normalised Gaussian).
Point uniform_sphere_sample(RngStream& stream, int m, const Point& y, double r);

/// Monte Carlo average of g(r x / ||x||) over the shell s < ||x|| < r in R^m,
/// by rejection from the bounding cube.
McEstimate shell_average(const SphereFunction& g, int m, double s, double r, std::size_t n,
                         RngStream& stream);

}  // namespace potlab
