#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace potlab {

/// A point (column vector) of R^m with inline storage.
///
/// Dimensions up to kMaxDim are supported; the path engines copy points
/// on every step, so the coordinates never live on the heap.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 16;

  Point() = default;
  /// The origin of R^dim.
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  /// Standard basis vector e_axis of R^dim (axis is zero based).
  static Point unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const { return dim_; }
  std::span<const double> coords() const { return {data_.data(), dim_}; }
  std::span<double> coords() { return {data_.data(), dim_}; }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  double norm_squared() const;
  double norm() const;

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }
  friend bool operator==(const Point& a, const Point& b);

 private:
  std::array<double, kMaxDim> data_{};
  std::size_t dim_ = 0;
};

double dot(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Open ball D(center, radius), or the shell s < ||x - center|| < radius
/// when inner_radius is set.
struct BallSpec {
  Point center;
  double radius = 1.0;
  std::optional<double> inner_radius;

  /// Throws DomainError unless radius > 0 and 0 < inner_radius < radius.
  void validate() const;
  bool contains(const Point& x) const;
};

/// Square real matrix stored row major. Orthogonality is not enforced by
/// the type; see orthogonality_error() and determinant().
class RotationMatrix {
 public:
  RotationMatrix() = default;
  explicit RotationMatrix(std::size_t dim);  // zero matrix

  static RotationMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

  Point apply(const Point& x) const;
  RotationMatrix transpose() const;
  friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b);

  /// Frobenius norm of a^T a - I.
  double orthogonality_error() const;
  double determinant() const;
  /// Frobenius distance to another matrix of the same size.
  double distance_to(const RotationMatrix& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Unsigned angle in [0, pi] between two nonzero vectors.
double angle(const Point& x, const Point& y);

/// The rotation a_z with a_z e1 = z.
///
/// a_z rotates by the angle between e1 and z inside span{e1, z} and fixes
/// the orthogonal complement pointwise. The complement basis is produced by
/// Gram-Schmidt over the standard basis, visited in `seed_order` when given
/// (a permutation of 0..m-1). The result does not depend on that order.
/// Returns the identity within tol::kReferencePoint of e1.
RotationMatrix rotation_to(const Point& z,
                           std::optional<std::span<const std::size_t>> seed_order = std::nullopt);

/// y + a (z - y): rotation of R^m about the point y.
Point rotate_about(const RotationMatrix& a, const Point& y, const Point& z);

}  // namespace potlab
