#include "permsphere/configs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "permsphere/error.hpp"
#include "permsphere/random.hpp"
#include "permsphere/specfun.hpp"

namespace permsphere {

namespace {

void require_dim(std::size_t q, std::size_t min_q = 2) {
  if (q < min_q) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension q=" + std::to_string(q) + " must be at least " + std::to_string(min_q));
  }
}

double sum_of_squares(std::span<const double> a) {
  Vector sq(a.size());
  std::transform(a.begin(), a.end(), sq.begin(), [](double v) { return v * v; });
  return compensated_sum(sq);
}

Vector rescale(std::span<const double> a, double norm_a, double target) {
  Vector out(a.size());
  const double f = target / norm_a;
  std::transform(a.begin(), a.end(), out.begin(), [f](double v) { return v * f; });
  return out;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::regular: return "regular";
    case Family::maximal: return "maximal";
    case Family::normal: return "normal";
    case Family::simplex: return "simplex";
    case Family::custom: return "custom";
  }
  return "custom";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::regular, Family::maximal, Family::normal, Family::simplex, Family::custom}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

double regular_norm(std::size_t q) {
  const double qd = static_cast<double>(q);
  return std::sqrt(qd * (qd * qd - 1.0) / 12.0);
}

CenteredConfiguration regular(std::size_t q) {
  require_dim(q);
  Vector y(q);
  const double mid = 0.5 * (static_cast<double>(q) + 1.0);
  for (std::size_t k = 1; k <= q; ++k) y[k - 1] = static_cast<double>(k) - mid;
  return CenteredConfiguration(std::move(y));
}

MaximalWeights maximal_weights(std::size_t q) {
  require_dim(q);
  const double qd = static_cast<double>(q);
  const double scale = 3.0 / (qd * (qd + 1.0));
  MaximalWeights w;
  w.q = q;
  w.b.resize(q);
  for (std::size_t k = 1; k <= q; ++k) {
    const double kd = static_cast<double>(k);
    w.b[k - 1] = std::sqrt(scale * kd * (qd - kd));
  }
  // b_{k-1} - b_k written as (b_{k-1}^2 - b_k^2)/(b_{k-1} + b_k); the numerator
  // is 3(2k-q-1)/(q(q+1)), which keeps the differences exact in sign and
  // antisymmetric under k -> q+1-k.
  w.a_hat.resize(q);
  for (std::size_t k = 1; k <= q; ++k) {
    const double prev = k == 1 ? 0.0 : w.b[k - 2];
    const double cur = w.b[k - 1];
    const double numer = scale * (2.0 * static_cast<double>(k) - qd - 1.0);
    w.a_hat[k - 1] = numer / (prev + cur);
  }
  w.norm_a = std::sqrt(sum_of_squares(w.a_hat));
  return w;
}

MaximalConfiguration maximal(std::size_t q) {
  MaximalWeights w = maximal_weights(q);
  CenteredConfiguration y(rescale(w.a_hat, w.norm_a, regular_norm(q)));
  return {std::move(y), std::move(w)};
}

NormalWeights normal_weights(std::size_t q) {
  require_dim(q);
  NormalWeights w;
  w.q = q;
  w.a_breve.resize(q);
  const double denom = static_cast<double>(q) + 1.0;
  for (std::size_t k = 1; 2 * k <= q + 1; ++k) {
    const double v = normal_quantile(static_cast<double>(k) / denom);
    w.a_breve[k - 1] = v;
    w.a_breve[q - k] = -v;
  }
  if (q % 2 == 1) w.a_breve[q / 2] = 0.0;
  w.norm_a = std::sqrt(sum_of_squares(w.a_breve));
  return w;
}

NormalConfiguration normal(std::size_t q) {
  NormalWeights w = normal_weights(q);
  CenteredConfiguration y(rescale(w.a_breve, w.norm_a, regular_norm(q)));
  return {std::move(y), std::move(w)};
}

CenteredConfiguration simplex_configuration(std::size_t q) {
  require_dim(q);
  const SimplexVertex f = simplex_vertex(q, q);
  return CenteredConfiguration(rescale(f.entries, 1.0, regular_norm(q)));
}

CenteredConfiguration family_configuration(Family family, std::size_t q) {
  switch (family) {
    case Family::regular: return regular(q);
    case Family::maximal: return maximal(q).y;
    case Family::normal: return normal(q).y;
    case Family::simplex: return simplex_configuration(q);
    case Family::custom: break;
  }
  throw Error(ErrorCode::invalid_argument, "custom configurations must be supplied explicitly");
}

double ck(std::size_t q, std::size_t k) {
  require_dim(q);
  if (k < 1 || k > q) throw Error(ErrorCode::index_out_of_range, "c_k index must satisfy 1 <= k <= q");
  const double qd = static_cast<double>(q);
  const double kd = static_cast<double>(k);
  const double d = std::sqrt((kd - 1.0) * (qd - kd + 1.0)) - std::sqrt(kd * (qd - kd));
  return d * d;
}

double ck_expanded(std::size_t q, std::size_t k) {
  require_dim(q);
  if (k < 1 || k > q) throw Error(ErrorCode::index_out_of_range, "c_k index must satisfy 1 <= k <= q");
  const double qd = static_cast<double>(q);
  const double kd = static_cast<double>(k);
  const double qbar = 0.5 * (qd + 1.0);
  const double dk = std::sqrt(kd * (kd - 1.0) * (qd - kd) * (qd - kd + 1.0));
  return 2.0 * ((qd * qd - 1.0) / 4.0 - (kd - qbar) * (kd - qbar) - dk);
}

double maximal_norm_sq_from_ck(std::size_t q) {
  require_dim(q);
  Vector c(q);
  for (std::size_t k = 1; k <= q; ++k) c[k - 1] = ck(q, k);
  const double qd = static_cast<double>(q);
  return 3.0 / (qd * (qd + 1.0)) * compensated_sum(c);
}

NormBounds maximal_norm_bounds(std::size_t q) {
  require_dim(q, 3);
  const double qd = static_cast<double>(q);
  NormBounds nb;
  const double lower_sq = 3.0 * (std::log(2.0 * qd + 1.0) - 2.0) / (2.0 * (qd + 1.0));
  nb.lower = lower_sq > 0.0 ? std::sqrt(lower_sq) : 0.0;
  nb.upper = std::sqrt(3.0 * (2.0 * std::log(2.0 * qd - 1.0) + 1.0) / (2.0 * (qd + 1.0)));
  nb.exact = maximal_weights(q).norm_a;
  return nb;
}

double maximal_threshold(std::size_t q) {
  const double qd = static_cast<double>(q);
  return std::sqrt(3.0 / (qd + 1.0)) / maximal_weights(q).norm_a;
}

double ray_objective(std::span<const double> z) {
  const Vector proj = ray_projections(z);
  return *std::min_element(proj.begin(), proj.end()) / norm2(z);
}

namespace {

struct OptimalityChunk {
  double max_objective = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  std::uint64_t near = 0;
  std::uint64_t majorization_failures = 0;
};

// Top sums of z dominate those of z_hat: sum_{i>k} z_i >= sum_{i>k} zhat_i.
bool dominates_top_sums(std::span<const double> z, std::span<const double> zhat) {
  double sz = 0.0, sh = 0.0;
  for (std::size_t i = z.size(); i-- > 1;) {
    sz += z[i];
    sh += zhat[i];
    if (sz < sh - 1e-9) return false;
  }
  return true;
}

}  // namespace

OptimalityReport verify_maximal_optimality(std::size_t q, std::uint64_t trials, std::uint64_t seed) {
  require_dim(q, 3);
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  const MaximalWeights w = maximal_weights(q);
  const Vector zhat = rescale(w.a_hat, w.norm_a, 1.0);
  const double lambda_hat = std::sqrt(3.0 / (static_cast<double>(q) + 1.0)) / w.norm_a;

  auto chunks = run_chunks<OptimalityChunk>(trials, seed, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, Rng& rng) {
    OptimalityChunk acc;
    Vector z(q);
    for (std::uint64_t i = begin; i < end; ++i) {
      sample_sphere_point(rng, z, 1.0);
      std::sort(z.begin(), z.end());
      const double obj = ray_objective(z);
      acc.max_objective = std::max(acc.max_objective, obj);
      if (obj > lambda_hat + 1e-12) ++acc.violations;
      if (obj >= lambda_hat - 1e-9) {
        ++acc.near;
        if (!dominates_top_sums(z, zhat)) ++acc.majorization_failures;
      }
    }
    return acc;
  });

  OptimalityReport report;
  report.q = q;
  report.trials = trials;
  report.seed = seed;
  report.lambda_hat = lambda_hat;
  report.max_objective = -std::numeric_limits<double>::infinity();
  for (const auto& c : chunks) {
    report.max_objective = std::max(report.max_objective, c.max_objective);
    report.violations += c.violations;
    report.near_optimizers += c.near;
    report.majorization_failures += c.majorization_failures;
  }
  report.gap = lambda_hat - report.max_objective;
  return report;
}

QuantileTail quantile_tail_diagnostic(std::size_t q) {
  if (q < 10) throw Error(ErrorCode::invalid_dimension, "quantile_tail_diagnostic requires q >= 10");
  const double qd = static_cast<double>(q);
  QuantileTail out;
  // Phi^{-1}(q/(q+1)) = -Phi^{-1}(1/(q+1)) avoids rounding q/(q+1) near 1.
  out.exact = -normal_quantile(1.0 / (qd + 1.0));
  out.approx = std::sqrt(2.0 * std::log(qd + 1.0));
  out.ratio = out.approx / out.exact;
  return out;
}

}  // namespace permsphere
