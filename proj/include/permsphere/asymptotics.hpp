#pragma once

// Exact finite-q coordinate laws of the orbit distributions and their limits.

#include <cstddef>
#include <functional>
#include <span>

#include "permsphere/configs.hpp"
#include "permsphere/linalg.hpp"

namespace permsphere {

/// Uniform law on a finite multiset of atoms (probability 1/size each).
class DiscreteLaw {
 public:
  /// Sorts the atoms; throws invalid_argument when empty or non-finite.
  explicit DiscreteLaw(Vector atoms);

  std::span<const double> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double mean() const;
  double variance() const;
  /// P[X <= x].
  double cdf(double x) const;
  /// Midpoint median for an even number of atoms.
  double median() const;
  /// E[exp(tX)].
  double mgf(double t) const;

 private:
  Vector atoms_;
};

/// sup_x |F_law(x) - cdf(x)|, scanning both one-sided limits at every atom.
double ks_distance(const DiscreteLaw& law, const std::function<double(double)>& cdf);

/// Coordinate law of a uniformly permuted configuration: its own entries.
DiscreteLaw orbit_marginal(const CenteredConfiguration& y);
DiscreteLaw orbit_marginal(Family family, std::size_t q);

/// Law of sqrt(12/(q^2-1)) times the orbit coordinate.
DiscreteLaw scaled_marginal(Family family, std::size_t q);

/// KS distance of the scaled coordinate to Uniform(-sqrt3, sqrt3) (regular)
/// or N(0,1) (normal); for maximal the median of |scaled coordinate|.
/// Other families throw invalid_argument.
double scaled_marginal_ks(Family family, std::size_t q);

struct WStatistics {
  DiscreteLaw w_bar;  // (12/(q^2-1)) ybar_k^2
  DiscreteLaw w_hat;  // 3 c_k / ((q+1) ||a_hat||^2)
};

WStatistics w_statistics(std::size_t q);

/// CDF of F(1, 2) as I_{x/(x+2)}(1/2, 1).
double f12_cdf(double x);
/// CDF of 3 Beta(1/2, 1) as I_{w/3}(1/2, 1).
double three_beta_half_one_cdf(double w);

/// Z_q = 8V^2/(1-4V^2) with V uniform on {(k-(q+1)/2)/q : k = 1..q}.
DiscreteLaw z_law(std::size_t q);

struct DominanceResult {
  bool holds = true;
  std::size_t violations = 0;       // sorted atom positions where the order fails
  std::size_t first_violation = 0;  // 1-based, 0 if none
  double worst_gap = 0.0;           // largest amount by which the order fails
};

/// a <=st b for uniform laws of equal size: sorted atoms compare elementwise.
DominanceResult stochastically_below(const DiscreteLaw& a, const DiscreteLaw& b);

struct StochasticOrderReport {
  std::size_t q = 0;
  DominanceResult lower_printed;  // Z/(log(2q-1)+2) <=st W_hat
  DominanceResult lower_proof;    // Z/(log(2q+1)-2) <=st W_hat
  DominanceResult upper;          // W_hat <=st (2Z+1)/(log(2q+1)-2)
};

StochasticOrderReport stochastic_order_check(std::size_t q);

/// Law of one coordinate of a uniform point on the sphere of radius r in the
/// zero-sum hyperplane of R^q.
class SphereMarginalLaw {
 public:
  SphereMarginalLaw(std::size_t q, double radius);
  /// Radius sqrt(q(q^2-1)/12).
  explicit SphereMarginalLaw(std::size_t q);

  /// P[U_i > s]; exactly 0 or 1 beyond r sqrt((q-1)/q).
  double survival(double s) const;
  double cdf(double s) const { return 1.0 - survival(s); }
  /// CDF of sqrt(12/(q^2-1)) U_i, tending to Phi.
  double scaled_cdf(double x) const;

  std::size_t dim() const noexcept { return q_; }
  double radius() const noexcept { return radius_; }

 private:
  std::size_t q_;
  double radius_;
};

/// (e^{tq/2} - e^{-tq/2}) / (q (e^{t/2} - e^{-t/2})), the mgf of the regular
/// coordinate.
double regular_mgf_closed_form(std::size_t q, double t);

struct RangeOrder {
  std::size_t q = 0;
  double regular = 0.0;
  double normal = 0.0;
  double maximal = 0.0;
  double sphere = 0.0;  // the common radius
  bool ordered = false;
};

/// Largest entries of the three configurations against the sphere radius.
RangeOrder range_order(std::size_t q);

}  // namespace permsphere
