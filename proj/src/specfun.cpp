#include "permsphere/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "permsphere/error.hpp"

namespace permsphere {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Stirling remainder S(z) with lnGamma(z) = (z-1/2)ln z - z + ln(2pi)/2 + S(z).
double stirling_tail(double z) {
  const double z2 = z * z;
  const double inv = 1.0 / z;
  const double inv2 = 1.0 / z2;
  return inv * (1.0 / 12.0 -
                inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

// lnGamma(x + d) - lnGamma(x) for x >= 10, d > 0.
double log_gamma_difference(double x, double d) {
  return (x - 0.5) * std::log1p(d / x) + d * std::log(x + d) - d + stirling_tail(x + d) - stirling_tail(x);
}

double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const int max_iter = 1000 + static_cast<int>(20.0 * std::sqrt(a + b));
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double md = static_cast<double>(m);
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::numeric, "incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                                      ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

// Acklam's rational approximation for p in (0, 0.5].
double quantile_initial(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::domain, "log_gamma requires x > 0");
  return std::lgamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::domain, "log_beta requires a, b > 0");
  const double big = std::max(a, b);
  const double small = std::min(a, b);
  if (big >= 10.0) return log_gamma(small) - log_gamma_difference(big, small);
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::domain, "normal_quantile requires 0 < p < 1");
  if (p > 0.5) return -normal_quantile(1.0 - p);
  if (p == 0.5) return 0.0;
  double x = quantile_initial(p);
  // One Halley step on Phi(x) - p.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::domain, "incomplete_beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::domain, "incomplete_beta requires 0 <= x <= 1");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double cap_area(const CapAreaQuery& query) {
  const auto [q, t] = query;
  if (q < 3) throw Error(ErrorCode::domain, "cap_area requires q >= 3, got q=" + std::to_string(q));
  if (!(t >= -1.0 && t < 1.0)) throw Error(ErrorCode::domain, "cap_area requires -1 <= t < 1");
  if (t == -1.0) return 1.0;
  if (t == 0.0) return 0.5;
  if (t < 0.0) return 1.0 - cap_area(CapAreaQuery{q, -t});
  const double x = (1.0 - t) * (1.0 + t);
  return 0.5 * incomplete_beta(0.5 * (static_cast<double>(q) - 2.0), 0.5, x);
}

double cap_area_wendel_bound(std::size_t q, double t) {
  if (q < 3) throw Error(ErrorCode::domain, "Wendel bound requires q >= 3");
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::domain, "Wendel bound requires 0 < t < 1");
  const double qd = static_cast<double>(q);
  const double power = (0.5 * qd - 1.0) * std::log1p(-t * t);
  return std::exp(power) / (t * std::sqrt(2.0 * std::numbers::pi * (qd - 2.0)));
}

double cap_area_gaussian_bound(std::size_t q, double t) {
  if (q < 5) throw Error(ErrorCode::domain, "Gaussian bound requires q >= 5");
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::domain, "Gaussian bound requires 0 <= t < 1");
  const double qd = static_cast<double>(q);
  return 0.5 - std::sqrt((qd - 2.0) / (qd - 4.0)) * (normal_cdf(t * std::sqrt(qd - 4.0)) - 0.5);
}

std::vector<CapScalingRow> cap_scaling_diagnostic(double lambda, std::span<const std::size_t> qs) {
  if (std::isnan(lambda) || lambda < 0.0) throw Error(ErrorCode::domain, "lambda must be a nonnegative real or infinity");
  std::vector<CapScalingRow> rows;
  rows.reserve(qs.size());
  for (std::size_t q : qs) {
    if (q < 5) throw Error(ErrorCode::domain, "cap_scaling_diagnostic requires q >= 5");
    const double t = lambda / std::sqrt(static_cast<double>(q));
    if (!(t < 1.0)) {
      rows.push_back({q, 1.0, 0.0});
    } else {
      rows.push_back({q, t, cap_area(q, t)});
    }
  }
  return rows;
}

}  // namespace permsphere
