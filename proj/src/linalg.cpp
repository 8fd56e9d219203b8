#include "permsphere/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "permsphere/error.hpp"

namespace permsphere {

namespace {

void require_dim(std::size_t q, std::size_t min_q = 2) {
  if (q < min_q) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension q=" + std::to_string(q) + " must be at least " + std::to_string(min_q));
  }
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Configuration::Configuration(Vector entries) : entries_(std::move(entries)) {
  require_dim(entries_.size());
  for (double v : entries_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "configuration entries must be finite");
  }
  if (!std::is_sorted(entries_.begin(), entries_.end())) {
    throw Error(ErrorCode::invalid_argument, "configuration entries must be nondecreasing");
  }
}

Configuration Configuration::from_unsorted(Vector entries) {
  std::sort(entries.begin(), entries.end());
  return Configuration(std::move(entries));
}

CenteredConfiguration::CenteredConfiguration(Vector entries) : entries_(std::move(entries)) {
  const std::size_t q = entries_.size();
  require_dim(q);
  for (double v : entries_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "configuration entries must be finite");
  }
  if (!std::is_sorted(entries_.begin(), entries_.end())) {
    throw Error(ErrorCode::invalid_argument, "centered configuration must be nondecreasing");
  }
  const double scale = max_abs(entries_);
  if (scale == 0.0) throw Error(ErrorCode::zero_projection, "the zero vector has no orbit on a sphere");
  const double sum = compensated_sum(entries_);
  if (std::abs(sum) > 1e-12 * static_cast<double>(q) * scale) {
    throw Error(ErrorCode::invalid_argument, "centered configuration must sum to zero");
  }
  norm_ = norm2(entries_);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled to avoid overflow for the large-q configurations (entries ~ q).
  const double m = max_abs(a);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) {
    const double r = v / m;
    s += r * r;
  }
  return m * std::sqrt(s);
}

double compensated_sum(std::span<const double> a) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : a) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

Vector center(std::span<const double> a) {
  const double mean = compensated_sum(a) / static_cast<double>(a.size());
  Vector out(a.begin(), a.end());
  for (double& v : out) v -= mean;
  return out;
}

Matrix helmert_matrix(std::size_t q) {
  require_dim(q);
  if (q > kMaxDenseDim) {
    throw Error(ErrorCode::too_large, "dense Helmert matrix limited to q <= " + std::to_string(kMaxDenseDim));
  }
  Matrix m(q, q);
  for (std::size_t j = 1; j <= q; ++j) {
    const Vector col = helmert_column(q, j);
    for (std::size_t i = 0; i < q; ++i) m(i, j - 1) = col[i];
  }
  return m;
}

Vector helmert_column(std::size_t q, std::size_t j) {
  require_dim(q);
  if (j < 1 || j > q) throw Error(ErrorCode::index_out_of_range, "Helmert column index out of range");
  Vector col(q, 0.0);
  if (j == 1) {
    std::fill(col.begin(), col.end(), 1.0 / std::sqrt(static_cast<double>(q)));
    return col;
  }
  const double jm1 = static_cast<double>(j - 1);
  const double denom = std::sqrt(jm1 * static_cast<double>(j));
  for (std::size_t i = 0; i + 1 < j; ++i) col[i] = 1.0 / denom;
  col[j - 1] = -jm1 / denom;
  return col;
}

Matrix centering_matrix(std::size_t q) {
  require_dim(q);
  if (q > kMaxDenseDim) throw Error(ErrorCode::too_large, "dense centering matrix limited to q <= 1000");
  Matrix m(q, q);
  const double off = -1.0 / static_cast<double>(q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) m(i, j) = (i == j ? 1.0 : 0.0) + off;
  }
  return m;
}

CenteredConfiguration center_project(const Configuration& x) {
  const auto entries = x.entries();
  const std::size_t q = entries.size();
  Vector y = center(entries);
  // Second pass removes the rounding left by a large common offset.
  y = center(y);
  const double threshold = 1e-12 * std::sqrt(static_cast<double>(q)) * max_abs(entries);
  if (norm2(y) <= threshold) {
    throw Error(ErrorCode::zero_projection, "constant configuration projects to the zero vector");
  }
  // Centering a sorted vector keeps it sorted; exact ties survive unchanged.
  return CenteredConfiguration(std::move(y));
}

ExtremeRay extreme_ray(std::size_t q, std::size_t k) {
  require_dim(q);
  if (k < 1 || k > q - 1) throw Error(ErrorCode::index_out_of_range, "extreme ray index must satisfy 1 <= k <= q-1");
  const double qd = static_cast<double>(q);
  const double kd = static_cast<double>(k);
  const double lo = -std::sqrt((qd - kd) / kd) / std::sqrt(qd);
  const double hi = std::sqrt(kd / (qd - kd)) / std::sqrt(qd);
  Vector v(q);
  for (std::size_t i = 0; i < q; ++i) v[i] = i < k ? lo : hi;
  return {q, k, std::move(v)};
}

double extreme_ray_inner(std::size_t q, std::size_t k, std::size_t l) {
  require_dim(q);
  if (k < 1 || l < 1 || k > q - 1 || l > q - 1) {
    throw Error(ErrorCode::index_out_of_range, "extreme ray index must satisfy 1 <= k <= q-1");
  }
  if (k > l) std::swap(k, l);
  const double qd = static_cast<double>(q);
  return std::sqrt(static_cast<double>(k) * (qd - static_cast<double>(l)) /
                   ((qd - static_cast<double>(k)) * static_cast<double>(l)));
}

Vector ray_projections(std::span<const double> y) {
  const std::size_t q = y.size();
  require_dim(q);
  // prefix[k] = y_1 + ... + y_k, suffix[k] = y_{k+1} + ... + y_q
  Vector prefix(q + 1, 0.0), suffix(q + 1, 0.0);
  {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      const double yv = y[i] - c;
      const double t = s + yv;
      c = (t - s) - yv;
      s = t;
      prefix[i + 1] = s;
    }
  }
  {
    double s = 0.0, c = 0.0;
    for (std::size_t i = q; i-- > 0;) {
      const double yv = y[i] - c;
      const double t = s + yv;
      c = (t - s) - yv;
      s = t;
      suffix[i] = s;
    }
  }
  const double qd = static_cast<double>(q);
  const double rq = std::sqrt(qd);
  Vector out(q - 1);
  for (std::size_t k = 1; k < q; ++k) {
    const double kd = static_cast<double>(k);
    const double lo = std::sqrt((qd - kd) / kd);
    const double hi = std::sqrt(kd / (qd - kd));
    out[k - 1] = (hi * suffix[k] - lo * prefix[k]) / rq;
  }
  return out;
}

SimplexVertex simplex_vertex(std::size_t q, std::size_t i) {
  require_dim(q);
  if (i < 1 || i > q) throw Error(ErrorCode::index_out_of_range, "simplex vertex index must satisfy 1 <= i <= q");
  const double qd = static_cast<double>(q);
  const double s = std::sqrt(qd * (qd - 1.0));
  Vector v(q, -1.0 / s);
  v[i - 1] = (qd - 1.0) / s;
  return {q, i, std::move(v)};
}

std::vector<Vector> orbit_enumerate(std::span<const double> y) {
  if (y.size() > kMaxEnumerationDim) {
    throw Error(ErrorCode::too_large,
                "orbit enumeration limited to q <= 9 (q! points); use sampled permutations instead");
  }
  Vector cur(y.begin(), y.end());
  std::sort(cur.begin(), cur.end());
  std::vector<Vector> out;
  do {
    out.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

std::vector<Vector> orbit_enumerate(const CenteredConfiguration& y) { return orbit_enumerate(y.entries()); }

}  // namespace permsphere
