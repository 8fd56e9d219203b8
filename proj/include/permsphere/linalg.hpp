#pragma once

// Geometric substrate: the zero-sum hyperplane, the Helmert basis, the
// extreme rays of the ordered cone and the simplex vertices.

#include <cstddef>
#include <span>
#include <vector>

namespace permsphere {

using Vector = std::vector<double>;

// Dense row-major matrix. Only materialized for q <= kMaxDenseDim.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr std::size_t kMaxDenseDim = 1000;
inline constexpr std::size_t kMaxEnumerationDim = 9;

/// A raw configuration x in R^q with nondecreasing entries, q >= 2.
class Configuration {
 public:
  /// Throws invalid_dimension for q < 2, invalid_argument if unsorted or non-finite.
  explicit Configuration(Vector entries);
  static Configuration from_unsorted(Vector entries);

  std::span<const double> entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return entries_.size(); }

 private:
  Vector entries_;
};

/// A nonzero, sorted, zero-sum vector y with its Euclidean norm cached.
class CenteredConfiguration {
 public:
  /// Validates sortedness, zero sum within 1e-12 * q * max|y_i| and y != 0.
  explicit CenteredConfiguration(Vector entries);

  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::size_t dim() const noexcept { return entries_.size(); }
  double norm() const noexcept { return norm_; }

 private:
  Vector entries_;
  double norm_ = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
// Neumaier-compensated sum.
double compensated_sum(std::span<const double> a);
// a - mean(a) * e
Vector center(std::span<const double> a);

/// Orthogonal q x q Helmert matrix; first column e/sqrt(q), column j >= 2 is
/// (1,...,1,-(j-1),0,...,0)/sqrt((j-1)j).
Matrix helmert_matrix(std::size_t q);
/// Column j (1-based) of the Helmert matrix, without materializing the matrix.
Vector helmert_column(std::size_t q, std::size_t j);
/// Omega_q = I - ee'/q.
Matrix centering_matrix(std::size_t q);

/// y = x - mean(x) e. Constant x is rejected with zero_projection.
CenteredConfiguration center_project(const Configuration& x);

struct ExtremeRay {
  std::size_t q;
  std::size_t k;
  Vector entries;
};

/// Unit generator z_k of the ordered zero-sum cone, 1 <= k <= q-1.
ExtremeRay extreme_ray(std::size_t q, std::size_t k);
/// Closed form of z_k'z_l: sqrt(k(q-l)/((q-k)l)) for k <= l.
double extreme_ray_inner(std::size_t q, std::size_t k, std::size_t l);

/// y'z_k for k = 1..q-1 in O(q) using prefix and suffix sums.
Vector ray_projections(std::span<const double> y);

struct SimplexVertex {
  std::size_t q;
  std::size_t i;
  Vector entries;
};

/// f_i = (q e_i - e)/sqrt(q(q-1)), 1 <= i <= q.
SimplexVertex simplex_vertex(std::size_t q, std::size_t i);

/// Every distinct permutation of y exactly once (multiset permutations when
/// entries tie). Throws too_large for q > kMaxEnumerationDim.
std::vector<Vector> orbit_enumerate(std::span<const double> y);
std::vector<Vector> orbit_enumerate(const CenteredConfiguration& y);

}  // namespace permsphere
