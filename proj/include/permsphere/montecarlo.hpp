#pragma once

// Seeded Monte Carlo experiments on the sphere of the zero-sum hyperplane:
// empty-cap coverage, the range test, and the subindependence and Slepian
// inequalities.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "permsphere/configs.hpp"
#include "permsphere/linalg.hpp"
#include "permsphere/random.hpp"

namespace permsphere {

/// n x q matrix of i.i.d. uniform points on the sphere of radius r in the
/// zero-sum hyperplane. q >= 3, r > 0.
Matrix sphere_sample(std::size_t q, double r, std::uint64_t n, std::uint64_t seed);
/// n x q matrix of i.i.d. uniform points in the ball of radius r.
Matrix ball_sample(std::size_t q, double r, std::uint64_t n, std::uint64_t seed);

/// Caps around +-f_i (regular, 2q caps) or +f_i (normal, q caps) on the sphere
/// of radius ||ybar||.
struct CoverageSpec {
  Family family = Family::regular;
  std::size_t q = 0;
  double t_cap = 0.0;
  double coordinate_threshold = 0.0;  // ||ybar|| t_cap sqrt((q-1)/q)
  bool two_sided = true;
  std::size_t caps = 0;
};

CoverageSpec coverage_spec(Family family, std::size_t q);

struct CoverageResult {
  CoverageSpec spec;
  McEstimate coverage;  // fraction of the sphere inside at least one cap
  double complement = 0.0;
  double max_orbit_inner = 0.0;  // max over caps and permutations of (Py)'w
  double cap_level = 0.0;        // ||ybar||^2 t_cap
  bool empty_verified = false;   // no orbit point strictly inside any cap
};

CoverageResult ape_coverage(const CoverageSpec& spec, std::uint64_t n, std::uint64_t seed);

struct HypothesisTestResult {
  std::size_t q = 0;
  double critical_value = 0.0;  // (q-1)/2
  McEstimate size;              // P[reject] under the uniform law on the sphere
  double power = 0.0;           // exact: every permutation of ybar is rejected
};

/// Rejects uniformity iff max_i |Y_i - mean(Y)| <= (q-1)/2.
HypothesisTestResult hypothesis_test(std::size_t q, std::uint64_t n, std::uint64_t seed);

struct SplitRow {
  std::size_t r = 0;
  McEstimate joint;
  double product = 0.0;     // P[first r] * P[last n-r]
  double product_se = 0.0;  // delta method
  bool pass = false;
};

struct SubindependenceRow {
  Vector thresholds;
  McEstimate joint;         // P[U_i <= t_i for all i]
  double mc_product = 0.0;  // product of estimated marginals
  double mc_product_se = 0.0;
  double exact_product = 0.0;  // product of 1 - cap_area(n+1, t_i)
  bool pass = false;
  std::vector<SplitRow> splits;
};

struct SubindependenceReport {
  std::size_t n_dim = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SubindependenceRow> rows;
  bool all_pass = false;
};

/// Joint and product probabilities for every threshold set on one shared set
/// of uniform points of the unit sphere in R^{n_dim}. A row passes when the
/// joint estimate is at most the exact product plus 3 of its standard errors
/// and at most the estimated product plus 3 combined standard errors.
SubindependenceReport subindependence_check(std::size_t n_dim, std::span<const Vector> threshold_sets,
                                            std::uint64_t trials, std::uint64_t seed, bool with_splits = false);

/// `draws` threshold vectors with entries uniform on (0, 1].
std::vector<Vector> draw_thresholds(std::size_t n_dim, std::size_t draws, std::uint64_t seed);

struct SlepianReport {
  std::size_t q = 0;
  double threshold = 0.0;
  McEstimate halfspaces_f;      // all i >= 2: v'f_i <= threshold
  McEstimate halfspaces_gamma;  // all Helmert columns j >= 2: v'gamma_j <= threshold
  double analytic_product = 0.0;  // [1 - cap_area(q, threshold/||ybar||)]^{q-1}
  bool slepian_pass = false;
  bool product_pass = false;
};

/// Points uniform on the sphere of radius ||ybar||.
SlepianReport slepian_halfspace_check(std::size_t q, double threshold, std::uint64_t trials, std::uint64_t seed);

}  // namespace permsphere
