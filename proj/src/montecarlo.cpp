#include "permsphere/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "permsphere/error.hpp"
#include "permsphere/specfun.hpp"

namespace permsphere {

namespace {

void require_sphere(std::size_t q, double r) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "sampling requires q >= 3");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
}

std::uint64_t total(const std::vector<std::uint64_t>& counts) {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

double cap_area_clamped(std::size_t q, double t) {
  if (t >= 1.0) return 0.0;
  if (t <= -1.0) return 1.0;
  return cap_area(q, t);
}

template <class Sampler>
Matrix fill_rows(std::size_t q, std::uint64_t n, std::uint64_t seed, Sampler&& sampler) {
  Matrix m(n, q);
  run_chunks<char>(n, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    for (std::uint64_t i = begin; i < end; ++i) sampler(rng, m.row(i));
    return char{0};
  });
  return m;
}

}  // namespace

Matrix sphere_sample(std::size_t q, double r, std::uint64_t n, std::uint64_t seed) {
  require_sphere(q, r);
  return fill_rows(q, n, seed, [r](Rng& rng, std::span<double> row) { sample_sphere_point(rng, row, r); });
}

Matrix ball_sample(std::size_t q, double r, std::uint64_t n, std::uint64_t seed) {
  require_sphere(q, r);
  return fill_rows(q, n, seed, [r](Rng& rng, std::span<double> row) { sample_ball_point(rng, row, r); });
}

CoverageSpec coverage_spec(Family family, std::size_t q) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "coverage requires q >= 3");
  const double qd = static_cast<double>(q);
  CoverageSpec s;
  s.family = family;
  s.q = q;
  if (family == Family::regular) {
    s.t_cap = std::sqrt(3.0 / (qd + 1.0));
    s.two_sided = true;
    s.caps = 2 * q;
  } else if (family == Family::normal) {
    const NormalWeights w = normal_weights(q);
    s.t_cap = std::sqrt(qd / (qd - 1.0)) * w.a_breve.back() / w.norm_a;
    s.two_sided = false;
    s.caps = q;
  } else {
    throw Error(ErrorCode::invalid_argument, "coverage caps are defined for the regular and normal families");
  }
  s.coordinate_threshold = regular_norm(q) * s.t_cap * std::sqrt((qd - 1.0) / qd);
  return s;
}

CoverageResult ape_coverage(const CoverageSpec& spec, std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sample count must be at least 1");
  const std::size_t q = spec.q;
  const double radius = regular_norm(q);
  CoverageResult res;
  res.spec = spec;
  res.cap_level = radius * radius * spec.t_cap;

  // Emptiness: for a cap centered at +-||ybar|| f_i the largest (Py)'w over all
  // permutations is the sorted dot product with the sorted center.
  const CenteredConfiguration y = family_configuration(spec.family, q);
  Vector center = simplex_vertex(q, q).entries;
  for (double& v : center) v *= radius;
  Vector plus = center, minus = center;
  for (double& v : minus) v = -v;
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  res.max_orbit_inner = dot(y.entries(), plus);
  if (spec.two_sided) res.max_orbit_inner = std::max(res.max_orbit_inner, dot(y.entries(), minus));
  res.empty_verified = res.max_orbit_inner - res.cap_level <= 1e-12 * radius * radius;

  const double c = spec.coordinate_threshold;
  auto counts = run_chunks<std::uint64_t>(n, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    std::uint64_t hits = 0;
    Vector v(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, v, radius);
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      const double stat = spec.two_sided ? std::max(*hi, -*lo) : *hi;
      if (stat > c) ++hits;
    }
    return hits;
  });
  res.coverage = McEstimate::proportion(total(counts), n, seed);
  res.complement = 1.0 - res.coverage.value;
  return res;
}

HypothesisTestResult hypothesis_test(std::size_t q, std::uint64_t n, std::uint64_t seed) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "hypothesis_test requires q >= 3");
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sample count must be at least 1");
  HypothesisTestResult r;
  r.q = q;
  r.critical_value = 0.5 * (static_cast<double>(q) - 1.0);
  const double radius = regular_norm(q);
  auto counts = run_chunks<std::uint64_t>(n, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    std::uint64_t rejections = 0;
    Vector v(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, v, radius);
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      if (std::max(*hi, -*lo) <= r.critical_value) ++rejections;
    }
    return rejections;
  });
  r.size = McEstimate::proportion(total(counts), n, seed);
  // The statistic is permutation invariant and the entries of ybar are exact
  // half-integers, so one evaluation decides the whole orbit.
  const CenteredConfiguration y = regular(q);
  double stat = 0.0;
  for (double v : y.entries()) stat = std::max(stat, std::abs(v));
  r.power = stat <= r.critical_value ? 1.0 : 0.0;
  return r;
}

std::vector<Vector> draw_thresholds(std::size_t n_dim, std::size_t draws, std::uint64_t seed) {
  if (n_dim < 2) throw Error(ErrorCode::invalid_dimension, "n_dim must be at least 2");
  Rng rng(seed);
  std::vector<Vector> out(draws, Vector(n_dim));
  for (auto& t : out) {
    for (double& v : t) v = rng.uniform_open0();
  }
  return out;
}

namespace {

// Counter layout per threshold set: joint, n marginals, then (n-1) prefix and
// (n-1) suffix counts for the splits.
std::size_t counters_per_set(std::size_t n) { return 1 + n + 2 * (n - 1); }

double product_se(std::span<const McEstimate> parts, double product) {
  double rel = 0.0;
  for (const auto& p : parts) {
    if (p.value <= 0.0) return 0.0;
    rel += (p.std_error / p.value) * (p.std_error / p.value);
  }
  return product * std::sqrt(rel);
}

}  // namespace

SubindependenceReport subindependence_check(std::size_t n_dim, std::span<const Vector> threshold_sets,
                                            std::uint64_t trials, std::uint64_t seed, bool with_splits) {
  if (n_dim < 2) throw Error(ErrorCode::invalid_dimension, "n_dim must be at least 2");
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  for (const auto& t : threshold_sets) {
    if (t.size() != n_dim) throw Error(ErrorCode::invalid_argument, "each threshold set needs n_dim entries");
    for (double v : t) {
      if (!(v > 0.0)) throw Error(ErrorCode::invalid_argument, "thresholds must be positive");
    }
  }
  const std::size_t stride = counters_per_set(n_dim);
  const std::size_t sets = threshold_sets.size();

  auto chunks = run_chunks<std::vector<std::uint64_t>>(trials, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    std::vector<std::uint64_t> c(stride * sets, 0);
    Vector u(n_dim);
    std::vector<char> below(n_dim);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_unit_sphere_full(rng, u);
      for (std::size_t s = 0; s < sets; ++s) {
        const Vector& t = threshold_sets[s];
        std::uint64_t* cs = c.data() + s * stride;
        bool all = true;
        for (std::size_t j = 0; j < n_dim; ++j) {
          below[j] = u[j] <= t[j];
          if (below[j]) ++cs[1 + j];
          all = all && below[j];
        }
        if (all) ++cs[0];
        if (!with_splits) continue;
        bool prefix = true;
        for (std::size_t r = 1; r < n_dim; ++r) {
          prefix = prefix && below[r - 1];
          if (prefix) ++cs[1 + n_dim + (r - 1)];
        }
        bool suffix = true;
        for (std::size_t r = n_dim - 1; r >= 1; --r) {
          suffix = suffix && below[r];
          if (suffix) ++cs[1 + n_dim + (n_dim - 1) + (r - 1)];
        }
      }
    }
    return c;
  });
  std::vector<std::uint64_t> counts(stride * sets, 0);
  for (const auto& c : chunks) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += c[i];
  }

  SubindependenceReport rep;
  rep.n_dim = n_dim;
  rep.trials = trials;
  rep.seed = seed;
  rep.all_pass = true;
  for (std::size_t s = 0; s < sets; ++s) {
    const std::uint64_t* cs = counts.data() + s * stride;
    SubindependenceRow row;
    row.thresholds = threshold_sets[s];
    row.joint = McEstimate::proportion(cs[0], trials, seed);
    std::vector<McEstimate> marg;
    row.mc_product = 1.0;
    row.exact_product = 1.0;
    for (std::size_t j = 0; j < n_dim; ++j) {
      marg.push_back(McEstimate::proportion(cs[1 + j], trials, seed));
      row.mc_product *= marg.back().value;
      row.exact_product *= 1.0 - cap_area_clamped(n_dim + 1, row.thresholds[j]);
    }
    row.mc_product_se = product_se(marg, row.mc_product);
    const double se = row.joint.std_error;
    row.pass = row.joint.value <= row.exact_product + 3.0 * se &&
               row.joint.value <= row.mc_product + 3.0 * std::hypot(se, row.mc_product_se);
    if (with_splits) {
      for (std::size_t r = 1; r < n_dim; ++r) {
        SplitRow sr;
        sr.r = r;
        sr.joint = row.joint;
        const McEstimate parts[2] = {McEstimate::proportion(cs[1 + n_dim + (r - 1)], trials, seed),
                                     McEstimate::proportion(cs[1 + n_dim + (n_dim - 1) + (r - 1)], trials, seed)};
        sr.product = parts[0].value * parts[1].value;
        sr.product_se = product_se(parts, sr.product);
        sr.pass = sr.joint.value <= sr.product + 3.0 * std::hypot(se, sr.product_se);
        row.pass = row.pass && sr.pass;
        row.splits.push_back(sr);
      }
    }
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

SlepianReport slepian_halfspace_check(std::size_t q, double threshold, std::uint64_t trials, std::uint64_t seed) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "slepian_halfspace_check requires q >= 3");
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (std::isnan(threshold)) throw Error(ErrorCode::invalid_argument, "threshold is NaN");
  const double qd = static_cast<double>(q);
  const double radius = regular_norm(q);
  const double f_scale = std::sqrt(qd / (qd - 1.0));

  struct Counts {
    std::uint64_t h = 0;
    std::uint64_t k = 0;
  };
  auto chunks = run_chunks<Counts>(trials, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    Counts c;
    Vector v(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, v, radius);
      // v'f_i = sqrt(q/(q-1)) v_i for zero-sum v.
      bool in_h = true;
      for (std::size_t j = 1; j < q && in_h; ++j) in_h = f_scale * v[j] <= threshold;
      // v'gamma_j = (v_1 + ... + v_{j-1} - (j-1) v_j) / sqrt((j-1) j).
      bool in_k = true;
      double prefix = 0.0;
      for (std::size_t j = 2; j <= q && in_k; ++j) {
        prefix += v[j - 2];
        const double jm = static_cast<double>(j - 1);
        in_k = (prefix - jm * v[j - 1]) / std::sqrt(jm * (jm + 1.0)) <= threshold;
      }
      c.h += in_h;
      c.k += in_k;
    }
    return c;
  });
  std::uint64_t h = 0, k = 0;
  for (const auto& c : chunks) {
    h += c.h;
    k += c.k;
  }
  SlepianReport r;
  r.q = q;
  r.threshold = threshold;
  r.halfspaces_f = McEstimate::proportion(h, trials, seed);
  r.halfspaces_gamma = McEstimate::proportion(k, trials, seed);
  r.analytic_product = std::pow(1.0 - cap_area_clamped(q, threshold / radius), qd - 1.0);
  r.slepian_pass = r.halfspaces_f.value <=
                   r.halfspaces_gamma.value + 3.0 * std::hypot(r.halfspaces_f.std_error, r.halfspaces_gamma.std_error);
  r.product_pass = r.halfspaces_gamma.value <= r.analytic_product + 3.0 * r.halfspaces_gamma.std_error;
  return r;
}

}  // namespace permsphere
