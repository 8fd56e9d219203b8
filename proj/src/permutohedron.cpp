#include "permsphere/permutohedron.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "permsphere/error.hpp"
#include "permsphere/specfun.hpp"

namespace permsphere {

namespace {

constexpr double kMembershipSlack = 1e-10;

// Top-k partial sums of a descending copy of v against those of y (y sorted
// ascending, so its top entries are read from the back).
bool majorized_by(std::span<const double> y_ascending, Vector& v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  const std::size_t q = v.size();
  double sv = 0.0, sy = 0.0;
  for (std::size_t k = 0; k + 1 < q; ++k) {
    sv += v[k];
    sy += y_ascending[q - 1 - k];
    if (sv > sy + kMembershipSlack) return false;
  }
  return true;
}

void require_volume_dim(std::size_t q) {
  if (q < 2) throw Error(ErrorCode::invalid_dimension, "volumes require q >= 2");
}

}  // namespace

bool hull_contains(const CenteredConfiguration& y, std::span<const double> v) {
  if (v.size() != y.dim()) throw Error(ErrorCode::invalid_dimension, "point and configuration differ in length");
  const double n = norm2(v);
  if (std::abs(compensated_sum(v)) > 1e-9 * n) throw Error(ErrorCode::domain, "point must be zero-sum");
  Vector w(v.begin(), v.end());
  return majorized_by(y.entries(), w);
}

double log_regular_volume(std::size_t q) {
  require_volume_dim(q);
  const double qd = static_cast<double>(q);
  return (qd - 1.5) * std::log(qd);
}

double regular_volume(std::size_t q) {
  require_volume_dim(q);
  if (q <= 30) return std::pow(static_cast<double>(q), static_cast<double>(q) - 1.5);
  return std::exp(log_regular_volume(q));
}

double log_ball_volume(std::size_t q, double r) {
  require_volume_dim(q);
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::domain, "ball radius must be positive");
  const double d = static_cast<double>(q) - 1.0;
  return 0.5 * d * std::log(std::numbers::pi) + d * std::log(r) - log_gamma(0.5 * d + 1.0);
}

double ball_volume(std::size_t q, double r) { return std::exp(log_ball_volume(q, r)); }

RegularRatio regular_ratio(std::size_t q) {
  RegularRatio r;
  r.exact = std::exp(log_regular_volume(q) - log_ball_volume(q, regular_norm(q)));
  r.asymptote = 1.0750 * std::pow(0.7026, 0.5 * (static_cast<double>(q) - 1.0));
  r.ratio = r.exact / r.asymptote;
  return r;
}

CubeRatio cube_ratio(std::size_t q) {
  require_volume_dim(q);
  const double qd = static_cast<double>(q);
  CubeRatio c;
  c.exact = std::exp(0.5 * (qd - 1.0) * std::log((qd * qd - 1.0) / 3.0) + (1.5 - qd) * std::log(qd));
  c.asymptote = std::exp(0.5 * std::log(qd) - 0.5 * (qd - 1.0) * std::log(3.0));
  c.ratio = c.exact / c.asymptote;
  return c;
}

McEstimate mc_volume_ratio(Family family, std::size_t q, std::uint64_t samples, std::uint64_t seed) {
  if (q < 3 || q > 30) throw Error(ErrorCode::domain, "mc_volume_ratio requires 3 <= q <= 30");
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "samples must be at least 1");
  const CenteredConfiguration y = family_configuration(family, q);
  const double radius = regular_norm(q);
  auto counts = run_chunks<std::uint64_t>(samples, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    std::uint64_t hits = 0;
    Vector v(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_ball_point(rng, v, radius);
      if (majorized_by(y.entries(), v)) ++hits;
    }
    return hits;
  });
  return McEstimate::proportion(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), samples, seed);
}

VolumeReport volume_report(Family family, std::size_t q, std::uint64_t samples, std::uint64_t seed) {
  VolumeReport r;
  r.q = q;
  r.family = family;
  r.ball_volume = ball_volume(q, regular_norm(q));
  if (family == Family::regular) {
    r.closed_form_used = true;
    r.hull_volume = regular_volume(q);
    r.ratio = regular_ratio(q).exact;
  } else if (samples == 0) {
    throw Error(ErrorCode::invalid_argument, "no closed-form volume for this family; pass a sample count");
  }
  if (samples > 0) {
    r.mc = mc_volume_ratio(family, q, samples, seed);
    if (!r.closed_form_used) {
      r.ratio = r.mc.value;
      r.hull_volume = r.mc.value * r.ball_volume;
    }
  }
  return r;
}

}  // namespace permsphere
