#include "potlab/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "potlab/errors.hpp"
#include "potlab/tolerances.hpp"

namespace potlab {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > Point::kMaxDim) {
    throw DomainError("point dimension must be in [1, " + std::to_string(Point::kMaxDim) +
                      "], got " + std::to_string(dim));
  }
}

void check_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

}  // namespace

Point::Point(std::size_t dim) : dim_(dim) { check_dim(dim); }

Point::Point(std::initializer_list<double> coords) : dim_(coords.size()) {
  check_dim(dim_);
  std::copy(coords.begin(), coords.end(), data_.begin());
}

Point::Point(std::span<const double> coords) : dim_(coords.size()) {
  check_dim(dim_);
  std::copy(coords.begin(), coords.end(), data_.begin());
}

Point Point::unit(std::size_t dim, std::size_t axis) {
  Point p(dim);
  if (axis >= dim) throw DomainError("basis axis out of range");
  p[axis] = 1.0;
  return p;
}

double Point::norm_squared() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += data_[i] * data_[i];
  return s;
}

double Point::norm() const { return std::sqrt(norm_squared()); }

Point& Point::operator+=(const Point& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (std::size_t i = 0; i < dim_; ++i) data_[i] *= s;
  return *this;
}

bool operator==(const Point& a, const Point& b) {
  return a.dim_ == b.dim_ && std::equal(a.data_.begin(), a.data_.begin() + a.dim_, b.data_.begin());
}

double dot(const Point& a, const Point& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

void BallSpec::validate() const {
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  if (inner_radius && !(*inner_radius > 0.0 && *inner_radius < radius)) {
    throw DomainError("shell inner radius must lie in (0, radius)");
  }
}

bool BallSpec::contains(const Point& x) const {
  const double d = distance(x, center);
  if (inner_radius && d <= *inner_radius) return false;
  return d < radius;
}

RotationMatrix::RotationMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

RotationMatrix RotationMatrix::identity(std::size_t dim) {
  RotationMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) a(i, i) = 1.0;
  return a;
}

Point RotationMatrix::apply(const Point& x) const {
  if (x.dim() != dim_) throw DomainError("matrix/vector dimension mismatch");
  Point y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

RotationMatrix RotationMatrix::transpose() const {
  RotationMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix dimension mismatch");
  RotationMatrix c(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < a.dim_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double RotationMatrix::orthogonality_error() const {
  const RotationMatrix g = transpose() * *this;
  return g.distance_to(identity(dim_));
}

double RotationMatrix::determinant() const {
  // Gaussian elimination with partial pivoting on a copy.
  std::vector<double> lu = entries_;
  const std::size_t n = dim_;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu[r * n + col]) > std::abs(lu[pivot * n + col])) pivot = r;
    if (lu[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[col * n + j], lu[pivot * n + j]);
      det = -det;
    }
    const double p = lu[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu[r * n + col] / p;
      for (std::size_t j = col; j < n; ++j) lu[r * n + j] -= f * lu[col * n + j];
    }
  }
  return det;
}

double RotationMatrix::distance_to(const RotationMatrix& other) const {
  if (dim_ != other.dim_) throw DomainError("matrix dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double d = entries_[i] - other.entries_[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double angle(const Point& x, const Point& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw DomainError("angle: zero-norm vector");
  const double c = std::clamp(dot(x, y) / (nx * ny), -1.0, 1.0);
  return std::acos(c);
}

RotationMatrix rotation_to(const Point& z, std::optional<std::span<const std::size_t>> seed_order) {
  const std::size_t m = z.dim();
  if (m < 2) throw DomainError("rotation_to: dimension must be at least 2");
  if (std::abs(z.norm() - 1.0) > tol::kUnitNorm) throw DomainError("rotation_to: z is not a unit vector");

  const Point e1 = Point::unit(m, 0);
  if (distance(z, e1) < tol::kReferencePoint) return RotationMatrix::identity(m);

  std::vector<std::size_t> order(m);
  if (seed_order) {
    if (seed_order->size() != m) throw DomainError("rotation_to: seed order must list every axis");
    order.assign(seed_order->begin(), seed_order->end());
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m; ++i)
      if (sorted[i] != i) throw DomainError("rotation_to: seed order is not a permutation");
  } else {
    std::iota(order.begin(), order.end(), std::size_t{0});
  }

  // Orthonormal frame: e1, then the unit direction of z - (cos t) e1, then
  // Gram-Schmidt over the standard basis for the complement.
  const double cos_t = std::clamp(z[0], -1.0, 1.0);
  std::vector<Point> frame{e1};
  Point w = z - cos_t * e1;
  const double sin_t = w.norm();
  const bool antipodal = sin_t < tol::kGramSchmidtResidual;
  if (!antipodal) frame.push_back(w * (1.0 / sin_t));

  for (std::size_t axis : order) {
    if (frame.size() == m) break;
    Point v = Point::unit(m, axis);
    for (const Point& f : frame) v -= dot(v, f) * f;
    const double n = v.norm();
    if (n < tol::kGramSchmidtResidual) continue;
    frame.push_back(v * (1.0 / n));
  }
  if (frame.size() != m) throw DomainError("rotation_to: failed to complete an orthonormal basis");

  // z = -e1: the rotation by pi in the plane of e1 and the first complement
  // vector. Every such plane gives a valid a_z; the choice is deterministic.
  const double s = antipodal ? 0.0 : sin_t;
  const double c = antipodal ? -1.0 : cos_t;

  // a_z = E R E^T with R the plane rotation on the first two frame vectors.
  RotationMatrix a(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double f1i = frame[0][i], f1j = frame[0][j];
      const double f2i = frame[1][i], f2j = frame[1][j];
      double v = c * (f1i * f1j + f2i * f2j) + s * (f2i * f1j - f1i * f2j);
      for (std::size_t k = 2; k < m; ++k) v += frame[k][i] * frame[k][j];
      a(i, j) = v;
    }
  }
  return a;
}

Point rotate_about(const RotationMatrix& a, const Point& y, const Point& z) {
  if (a.dim() != y.dim() || y.dim() != z.dim()) throw DomainError("rotate_about: dimension mismatch");
  return y + a.apply(z - y);
}

}  // namespace potlab
