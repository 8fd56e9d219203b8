#pragma once

// Regular, maximal and normal configurations in the ordered zero-sum cone,
// all normalized to the regular norm sqrt(q(q^2-1)/12).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "permsphere/linalg.hpp"

namespace permsphere {

enum class Family { regular, maximal, normal, simplex, custom };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// sqrt(q(q^2-1)/12), the norm of (-(q-1)/2, ..., (q-1)/2).
double regular_norm(std::size_t q);

/// Evenly spaced entries k - (q+1)/2.
CenteredConfiguration regular(std::size_t q);

struct MaximalWeights {
  std::size_t q = 0;
  Vector b;       // b_1..b_q, b_k = sqrt(3k(q-k)/(q(q+1))); b_0 = 0 implied
  Vector a_hat;   // a_k = b_{k-1} - b_k, k = 1..q
  double norm_a = 0.0;
};

struct MaximalConfiguration {
  CenteredConfiguration y;
  MaximalWeights weights;
};

MaximalWeights maximal_weights(std::size_t q);
/// ||y_bar|| * a_hat / ||a_hat||, the unique minimizer of the largest empty cap.
MaximalConfiguration maximal(std::size_t q);

struct NormalWeights {
  std::size_t q = 0;
  Vector a_breve;  // Phi^{-1}(k/(q+1)), exactly antisymmetric
  double norm_a = 0.0;
};

struct NormalConfiguration {
  CenteredConfiguration y;
  NormalWeights weights;
};

NormalWeights normal_weights(std::size_t q);
NormalConfiguration normal(std::size_t q);

/// The simplex vertex f_q scaled to the regular norm.
CenteredConfiguration simplex_configuration(std::size_t q);

/// Dispatch for regular/maximal/normal/simplex; custom throws invalid_argument.
CenteredConfiguration family_configuration(Family family, std::size_t q);

/// c_k = [sqrt((k-1)(q-k+1)) - sqrt(k(q-k))]^2.
double ck(std::size_t q, std::size_t k);
/// The same quantity as 2[(q^2-1)/4 - (k-(q+1)/2)^2 - sqrt(k(k-1)(q-k)(q-k+1))].
double ck_expanded(std::size_t q, std::size_t k);
/// ||a_hat||^2 = 3/(q(q+1)) * sum_k c_k.
double maximal_norm_sq_from_ck(std::size_t q);

struct NormBounds {
  double lower = 0.0;  // clamped at 0 where log(2q+1) < 2
  double exact = 0.0;
  double upper = 0.0;
};

NormBounds maximal_norm_bounds(std::size_t q);

/// sqrt(3/(q+1)) / ||a_hat||: the largest achievable min_k z'z_k over unit z
/// in the ordered cone.
double maximal_threshold(std::size_t q);

/// min_k z'z_k / ||z||.
double ray_objective(std::span<const double> z);

struct OptimalityReport {
  std::size_t q = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double lambda_hat = 0.0;
  double max_objective = 0.0;
  double gap = 0.0;  // lambda_hat - max_objective
  std::uint64_t violations = 0;
  std::uint64_t near_optimizers = 0;
  std::uint64_t majorization_failures = 0;
};

/// Random search over sorted unit zero-sum vectors for a counterexample to the
/// optimality of the maximal configuration.
OptimalityReport verify_maximal_optimality(std::size_t q, std::uint64_t trials, std::uint64_t seed);

struct QuantileTail {
  double exact = 0.0;   // Phi^{-1}(q/(q+1))
  double approx = 0.0;  // sqrt(2 log(q+1))
  double ratio = 0.0;   // approx / exact
};

QuantileTail quantile_tail_diagnostic(std::size_t q);

}  // namespace permsphere
