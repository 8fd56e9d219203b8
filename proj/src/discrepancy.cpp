#include "permsphere/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "permsphere/error.hpp"
#include "permsphere/specfun.hpp"

namespace permsphere {

namespace {

constexpr double kTieTolerance = 1e-10;
constexpr std::size_t kMaxExhaustiveDim = 8;
// Stream index reserved for the sequential refinement phase of the oracle.
constexpr std::uint64_t kRefineStream = 0xffffffffffffffffULL;

void require_cap_dim(std::size_t q) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "cap quantities require q >= 3, got q=" + std::to_string(q));
}

// cap_area extended to the closed interval.
double cap_area_clamped(std::size_t q, double t) {
  if (t >= 1.0) return 0.0;
  if (t <= -1.0) return 1.0;
  return cap_area(q, t);
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  Vector prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
  return compensated_sum(prod);
}

// Objective of the oracle at a unit zero-sum w: the sorted dot product.
double sorted_objective(std::span<const double> y_sorted, Vector& w, double y_norm) {
  std::sort(w.begin(), w.end());
  return dot(y_sorted, w) / y_norm;
}

void center_normalize(Vector& w) {
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  for (double& v : w) v -= mean;
  const double n = norm2(w);
  for (double& v : w) v /= n;
}

// sup_t |empirical survival - model survival| for sorted sample values, using
// both one-sided limits at every distinct jump point.
template <class Survival>
double scan_survival(std::span<const double> sorted, Survival&& model) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double m = model(sorted[i]);
    const double at_or_above = static_cast<double>(sorted.size() - i) / n;
    const double above = static_cast<double>(sorted.size() - j) / n;
    worst = std::max({worst, std::abs(at_or_above - m), std::abs(above - m)});
    i = j;
  }
  return worst;
}

struct BestDirection {
  double value = std::numeric_limits<double>::infinity();
  Vector w;
};

}  // namespace

ThresholdResult orbit_threshold(const CenteredConfiguration& y) {
  const Vector proj = ray_projections(y.entries());
  const double min_proj = *std::min_element(proj.begin(), proj.end());
  ThresholdResult r;
  r.t = min_proj / y.norm();
  for (std::size_t k = 0; k < proj.size(); ++k) {
    if (proj[k] / y.norm() - r.t <= kTieTolerance) r.argmin.push_back(k + 1);
  }
  return r;
}

double orbit_threshold_oracle(const CenteredConfiguration& y, std::uint64_t directions, std::uint64_t seed) {
  if (directions < 1) throw Error(ErrorCode::invalid_argument, "directions must be at least 1");
  const std::size_t q = y.dim();
  const auto ys = y.entries();
  const std::uint64_t refine_steps = directions / 4;
  const std::uint64_t global = directions - refine_steps;

  auto chunks = run_chunks<BestDirection>(global, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    BestDirection best;
    Vector w(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, w, 1.0);
      const double v = sorted_objective(ys, w, y.norm());
      if (v < best.value) {
        best.value = v;
        best.w = w;
      }
    }
    return best;
  });
  BestDirection best;
  for (auto& c : chunks) {
    if (c.value < best.value) best = std::move(c);
  }

  Rng rng = Rng::stream(seed, kRefineStream);
  double sigma = 0.1;
  int failures = 0;
  Vector cand(q);
  for (std::uint64_t s = 0; s < refine_steps && sigma > 1e-13; ++s) {
    for (std::size_t i = 0; i < q; ++i) cand[i] = best.w[i] + sigma * rng.normal();
    center_normalize(cand);
    const double v = sorted_objective(ys, cand, y.norm());
    if (v < best.value) {
      best.value = v;
      best.w = cand;
      failures = 0;
    } else if (++failures >= 50) {
      sigma *= 0.5;
      failures = 0;
    }
  }
  return best.value;
}

void CapSpec::validate() const {
  if (center.size() < 3) throw Error(ErrorCode::invalid_dimension, "cap center needs q >= 3");
  const double n = norm2(center);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::invalid_argument, "cap center must be a nonzero finite vector");
  if (std::abs(compensated_sum(center)) > 1e-10 * n * std::sqrt(static_cast<double>(center.size()))) {
    throw Error(ErrorCode::invalid_argument, "cap center must lie in the zero-sum hyperplane");
  }
  if (!(t >= -1.0 && t < 1.0)) throw Error(ErrorCode::domain, "cap threshold must satisfy -1 <= t < 1");
}

DiscrepancyReport lecd_report(const CenteredConfiguration& y, Family family) {
  const std::size_t q = y.dim();
  require_cap_dim(q);
  const ThresholdResult thr = orbit_threshold(y);
  DiscrepancyReport r;
  r.q = q;
  r.family = family;
  r.t_star = thr.t;
  r.lecd = cap_area_clamped(q, thr.t);
  r.lecad = std::acos(std::clamp(thr.t, -1.0, 1.0));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.wendel_upper = thr.t > 0.0 && thr.t < 1.0 ? cap_area_wendel_bound(q, thr.t) : nan;
  r.gaussian_lower = q >= 5 && thr.t >= 0.0 && thr.t < 1.0 ? cap_area_gaussian_bound(q, thr.t) : nan;
  r.argmin = thr.argmin;
  return r;
}

DiscrepancyReport lecd_report(Family family, std::size_t q) {
  return lecd_report(family_configuration(family, q), family);
}

McEstimate cap_fraction(const CenteredConfiguration& y, const CapSpec& cap, CapMode mode, std::uint64_t n,
                        std::uint64_t seed) {
  cap.validate();
  const std::size_t q = y.dim();
  if (cap.center.size() != q) throw Error(ErrorCode::invalid_dimension, "cap center and configuration differ in length");
  const double w_norm = norm2(cap.center);
  const double level = y.norm() * w_norm * cap.t;
  const double band = 1e-12 * y.norm() * w_norm;
  auto inside = [&](std::span<const double> v) { return dot(v, cap.center) - level > band; };

  if (mode == CapMode::exhaustive) {
    if (q > kMaxExhaustiveDim) {
      throw Error(ErrorCode::too_large, "exhaustive cap counts need q <= 8; use sampled mode");
    }
    const auto orbit = orbit_enumerate(y);
    const auto hits = static_cast<std::uint64_t>(std::count_if(orbit.begin(), orbit.end(), [&](const Vector& v) { return inside(v); }));
    McEstimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(orbit.size());
    e.std_error = 0.0;
    e.n = orbit.size();
    e.seed = seed;
    return e;
  }

  if (n < 1) throw Error(ErrorCode::invalid_argument, "sample count must be at least 1");
  auto counts = run_chunks<std::uint64_t>(n, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    std::uint64_t hits = 0;
    Vector v(y.entries().begin(), y.entries().end());
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t i = q; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
      if (inside(v)) ++hits;
    }
    return hits;
  });
  return McEstimate::proportion(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), n, seed);
}

McEstimate nscd_lower_bound(const CenteredConfiguration& y, std::uint64_t directions, std::uint64_t seed) {
  const std::size_t q = y.dim();
  require_cap_dim(q);
  if (q > kMaxExhaustiveDim) throw Error(ErrorCode::too_large, "nscd_lower_bound needs q <= 8");
  const auto orbit = orbit_enumerate(y);

  auto scan_direction = [&](std::span<const double> w_unit) {
    Vector s(orbit.size());
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      s[j] = std::clamp(dot(orbit[j], w_unit) / y.norm(), -1.0, 1.0);
    }
    std::sort(s.begin(), s.end());
    return scan_survival(s, [q](double t) { return cap_area_clamped(q, t); });
  };

  double worst = 0.0;
  for (std::size_t k : orbit_threshold(y).argmin) worst = std::max(worst, scan_direction(extreme_ray(q, k).entries));

  auto chunks = run_chunks<double>(directions, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    double local = 0.0;
    Vector w(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, w, 1.0);
      local = std::max(local, scan_direction(w));
    }
    return local;
  });
  for (double c : chunks) worst = std::max(worst, c);

  McEstimate e;
  e.value = worst;
  e.std_error = 0.0;
  e.n = directions;
  e.seed = seed;
  return e;
}

double marginal_distance(const CenteredConfiguration& y) {
  const std::size_t q = y.dim();
  require_cap_dim(q);
  const double scale = std::sqrt(static_cast<double>(q) / static_cast<double>(q - 1)) / y.norm();
  return scan_survival(y.entries(), [q, scale](double s) { return cap_area_clamped(q, s * scale); });
}

double marginal_distance(Family family, std::size_t q) {
  return marginal_distance(family_configuration(family, q));
}

EmptyCapCertificate empty_cap_certificate(const CenteredConfiguration& y) {
  const std::size_t q = y.dim();
  require_cap_dim(q);
  const ThresholdResult thr = orbit_threshold(y);
  const Vector proj = ray_projections(y.entries());

  EmptyCapCertificate c;
  c.ray = thr.argmin.front();
  c.rays = thr.argmin;
  c.cap.center = extreme_ray(q, c.ray).entries;
  for (double& v : c.cap.center) v *= y.norm();
  c.cap.t = thr.t;
  // Rearrangement: the sorted permutation maximizes (Py)'w for sorted w.
  Vector w_sorted = c.cap.center;
  std::sort(w_sorted.begin(), w_sorted.end());
  c.max_inner = compensated_dot(y.entries(), w_sorted);
  c.bound = y.norm() * y.norm() * thr.t;
  for (std::size_t k : thr.argmin) c.ray_thresholds.push_back(proj[k - 1] / y.norm());
  c.verified = std::abs(c.max_inner - c.bound) <= 1e-12 * y.norm() * y.norm();
  return c;
}

}  // namespace permsphere
