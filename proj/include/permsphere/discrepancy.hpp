#pragma once

// Largest empty caps of permutation orbits, cap counts and lower bounds on the
// normalized cap discrepancy.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permsphere/configs.hpp"
#include "permsphere/linalg.hpp"
#include "permsphere/random.hpp"

namespace permsphere {

struct ThresholdResult {
  double t = 0.0;                  // t(Pi(y))
  std::vector<std::size_t> argmin;  // rays k (1-based) attaining the minimum
};

/// (1/||y||) min_k y'z_k in O(q). Ties within 1e-10 are all reported.
ThresholdResult orbit_threshold(const CenteredConfiguration& y);

/// Direct search over sorted directions w: min of y'w / (||y|| ||w||) where
/// the maximizing permutation is the sorted one. A global random phase is
/// followed by a local random refinement of the best direction; every
/// evaluated point is feasible, so the result never undercuts orbit_threshold.
double orbit_threshold_oracle(const CenteredConfiguration& y, std::uint64_t directions, std::uint64_t seed);

/// Open cap {v : v'w > ||v|| ||w|| t}.
struct CapSpec {
  Vector center;
  double t = 0.0;

  /// Throws invalid_argument unless the center is nonzero and zero-sum within
  /// 1e-10 relative, and domain unless -1 <= t < 1.
  void validate() const;
};

struct DiscrepancyReport {
  std::size_t q = 0;
  Family family = Family::custom;
  double t_star = 0.0;
  double lecd = 0.0;
  double lecad = 0.0;
  double wendel_upper = 0.0;    // NaN when t_star is outside (0, 1)
  double gaussian_lower = 0.0;  // NaN for q < 5
  std::vector<std::size_t> argmin;
};

DiscrepancyReport lecd_report(const CenteredConfiguration& y, Family family = Family::custom);
DiscrepancyReport lecd_report(Family family, std::size_t q);

enum class CapMode { exhaustive, sampled };

inline constexpr std::uint64_t kDefaultPermutationSamples = 100000;

/// Fraction of orbit points strictly inside the cap. Points within
/// 1e-12 ||v|| ||w|| of the boundary count as outside. Exhaustive mode is exact
/// (std_error 0) and needs q <= 8; sampled mode draws Fisher-Yates shuffles.
McEstimate cap_fraction(const CenteredConfiguration& y, const CapSpec& cap, CapMode mode,
                        std::uint64_t n = kDefaultPermutationSamples, std::uint64_t seed = 0);

/// max over cap centers of sup_t |empirical cap fraction - cap_area(q, t)|.
/// Centers are the argmin rays plus `directions` random ones; each is scanned
/// exactly over the jump points of the orbit. q <= 8.
McEstimate nscd_lower_bound(const CenteredConfiguration& y, std::uint64_t directions, std::uint64_t seed);

/// sup_s |P[orbit coordinate > s] - P[sphere coordinate > s]| by an exact
/// scan over the q atoms.
double marginal_distance(const CenteredConfiguration& y);
double marginal_distance(Family family, std::size_t q);

struct EmptyCapCertificate {
  CapSpec cap;                 // center ||y|| z_k for the first argmin ray
  std::size_t ray = 0;
  double max_inner = 0.0;      // max over permutations of (Py)'w
  double bound = 0.0;          // ||y||^2 t*
  std::vector<std::size_t> rays;
  Vector ray_thresholds;       // y'z_k / ||y|| for every argmin ray
  bool verified = false;       // |max_inner - bound| <= 1e-12 ||y||^2
};

EmptyCapCertificate empty_cap_certificate(const CenteredConfiguration& y);

}  // namespace permsphere
