#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace permsphere {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);
/// ln B(a, b), evaluated without cancellation when max(a, b) is large.
double log_beta(double a, double b);

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal upper tail 1 - Phi(x), accurate in the far tail.
double normal_sf(double x);
/// Inverse of the standard normal CDF; p must lie in (0, 1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b) by continued fraction with the
/// usual x > (a+1)/(a+b+2) symmetry switch. Throws numeric on non-convergence.
double incomplete_beta(double a, double b, double x);

/// Normalized surface area of the cap {v : v'w > t} on the unit (q-2)-sphere
/// of the zero-sum hyperplane in R^q. Requires q >= 3 and -1 <= t < 1.
struct CapAreaQuery {
  std::size_t q;
  double t;
};

double cap_area(const CapAreaQuery& query);
inline double cap_area(std::size_t q, double t) { return cap_area(CapAreaQuery{q, t}); }

/// (1-t^2)^(q/2-1) / (t sqrt(2 pi (q-2))), an upper bound on cap_area for 0 < t < 1.
double cap_area_wendel_bound(std::size_t q, double t);
/// 1/2 - sqrt((q-2)/(q-4)) (Phi(t sqrt(q-4)) - 1/2), a lower bound on cap_area for q >= 5.
double cap_area_gaussian_bound(std::size_t q, double t);

struct CapScalingRow {
  std::size_t q;
  double t;         // lambda / sqrt(q), clamped to 1 for lambda = infinity
  double cap_area;  // beta^{q-2}(t)
};

/// cap_area at t = lambda/sqrt(q) for each q; the limit is 1 - Phi(lambda).
std::vector<CapScalingRow> cap_scaling_diagnostic(double lambda, std::span<const std::size_t> qs);

}  // namespace permsphere
