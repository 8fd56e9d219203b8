#pragma once

// Volumes of permutohedra (convex hulls of permutation orbits) relative to
// the circumscribed ball in the zero-sum hyperplane.

#include <cstddef>
#include <cstdint>
#include <span>

#include "permsphere/configs.hpp"
#include "permsphere/linalg.hpp"
#include "permsphere/random.hpp"

namespace permsphere {

/// v lies in the hull of the orbit of y iff the sums of the k largest entries
/// of v never exceed those of y (slack 1e-10). v must be zero-sum within
/// 1e-9 ||v|| or a domain error is thrown.
bool hull_contains(const CenteredConfiguration& y, std::span<const double> v);

/// q^{q-3/2}, the (q-1)-volume of the hull of (1, ..., q).
double regular_volume(std::size_t q);
double log_regular_volume(std::size_t q);

/// Volume of the (q-1)-ball of radius r: pi^{(q-1)/2} r^{q-1} / Gamma((q+1)/2).
double ball_volume(std::size_t q, double r);
double log_ball_volume(std::size_t q, double r);

struct RegularRatio {
  double exact = 0.0;      // regular_volume / ball volume at the regular norm
  double asymptote = 0.0;  // 1.0750 * 0.7026^{(q-1)/2}
  double ratio = 0.0;      // exact / asymptote
};

RegularRatio regular_ratio(std::size_t q);

struct CubeRatio {
  double exact = 0.0;      // ((q^2-1)/3)^{(q-1)/2} q^{3/2-q}
  double asymptote = 0.0;  // sqrt(q) (1/3)^{(q-1)/2}
  double ratio = 0.0;
};

/// Inscribed cube volume over the regular hull volume.
CubeRatio cube_ratio(std::size_t q);

/// Fraction of uniform points of the ball of radius sqrt(q(q^2-1)/12) that
/// fall in the hull of the family's orbit. Requires 3 <= q <= 30.
McEstimate mc_volume_ratio(Family family, std::size_t q, std::uint64_t samples, std::uint64_t seed);

struct VolumeReport {
  std::size_t q = 0;
  Family family = Family::regular;
  double ball_volume = 0.0;
  bool closed_form_used = false;
  double hull_volume = 0.0;  // closed form, or ratio * ball volume from MC
  double ratio = 0.0;        // closed form when available, else the MC value
  McEstimate mc;             // n == 0 when no sampling was requested
};

/// Closed form for the regular family; Monte Carlo when samples > 0. A
/// non-regular family with samples == 0 throws invalid_argument.
VolumeReport volume_report(Family family, std::size_t q, std::uint64_t samples, std::uint64_t seed);

}  // namespace permsphere
