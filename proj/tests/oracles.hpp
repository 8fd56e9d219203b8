#pragma once

// Independent reference computations. Nothing here calls into the library;
// each oracle uses a different route to the quantity it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// Adaptive Simpson on [a, b].
inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           long double fa, long double fm, long double fb, long double whole, long double eps,
                           int depth) {
  const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const long double flm = f(lm), frm = f(rm);
  const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) return left + right + delta / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

inline long double integrate(const std::function<long double(long double)>& f, long double a, long double b,
                             long double eps = 1e-15L) {
  if (a == b) return 0;
  // Split into panels so narrow peaks are not missed by the first estimate.
  constexpr int panels = 64;
  long double total = 0;
  for (int i = 0; i < panels; ++i) {
    const long double lo = a + (b - a) * i / panels, hi = a + (b - a) * (i + 1) / panels;
    const long double m = (lo + hi) / 2;
    const long double flo = f(lo), fm = f(m), fhi = f(hi);
    total += simpson(f, lo, hi, flo, fm, fhi, (hi - lo) / 6 * (flo + 4 * fm + fhi), eps / panels, 50);
  }
  return total;
}

// Cap area on the (q-2)-sphere through the polar angle: the density of the
// angle to a fixed axis is proportional to sin^{q-3}.
inline double cap_area_quadrature(std::size_t q, double t) {
  const long double p = static_cast<long double>(q) - 3;
  auto f = [p](long double th) { return std::pow(std::sin(th), p); };
  const long double num = integrate(f, 0, std::acos(static_cast<long double>(t)));
  const long double den = integrate(f, 0, std::numbers::pi_v<long double>);
  return static_cast<double>(num / den);
}

inline double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_quantile_bisect(double p) {
  if (p > 0.5) return -normal_quantile_bisect(1.0 - p);
  double lo = -40, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (phi(m) < p ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

// ln Gamma at n (integer) or n + 1/2 from factorials.
inline double log_gamma_integer(unsigned n) {
  long double s = 0;
  for (unsigned k = 2; k < n; ++k) s += std::log(static_cast<long double>(k));
  return static_cast<double>(s);
}

inline double log_gamma_half(unsigned n) {
  // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
  long double s = 0.5L * std::log(std::numbers::pi_v<long double>);
  for (unsigned k = 1; k <= n; ++k) s += std::log((2.0L * k - 1) / 2);
  return static_cast<double>(s);
}

// z_k built entry by entry: -(q-k) on the first k coordinates, k on the rest.
inline Vec explicit_ray(std::size_t q, std::size_t k) {
  Vec z(q);
  for (std::size_t i = 0; i < q; ++i) z[i] = i < k ? -static_cast<double>(q - k) : static_cast<double>(k);
  long double n = 0;
  for (double v : z) n += static_cast<long double>(v) * v;
  for (double& v : z) v = static_cast<double>(v / std::sqrt(n));
  return z;
}

// min_k y'z_k / ||y|| over explicitly materialized rays, O(q^2).
inline double brute_threshold(const Vec& y) {
  const std::size_t q = y.size();
  long double yy = 0;
  for (double v : y) yy += static_cast<long double>(v) * v;
  const long double ny = std::sqrt(yy);
  long double best = 1e300L;
  for (std::size_t k = 1; k < q; ++k) {
    // Same entries as explicit_ray without storing it.
    const long double nk = std::sqrt(static_cast<long double>(k) * (q - k) * q);
    long double d = 0;
    for (std::size_t i = 0; i < q; ++i) d += static_cast<long double>(y[i]) * (i < k ? -static_cast<long double>(q - k) : k);
    best = std::min(best, d / nk / ny);
  }
  return static_cast<double>(best);
}

// Local random search for min over sorted w of y'w / (||y|| ||w||), the
// largest empty cap threshold, without using the ray characterization.
inline double direction_search(const Vec& y, std::uint64_t seed, int starts = 200, int steps = 4000) {
  const std::size_t q = y.size();
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  auto value = [&](Vec w) {
    std::sort(w.begin(), w.end());
    double m = 0;
    for (double v : w) m += v;
    m /= static_cast<double>(q);
    double d = 0, ww = 0, yy = 0;
    for (std::size_t i = 0; i < q; ++i) {
      d += y[i] * (w[i] - m);
      ww += (w[i] - m) * (w[i] - m);
      yy += y[i] * y[i];
    }
    return ww == 0 ? 1.0 : d / std::sqrt(ww * yy);
  };
  double best = 1.0;
  for (int s = 0; s < starts; ++s) {
    Vec w(q);
    for (double& v : w) v = nd(gen);
    double cur = value(w);
    double sigma = 0.5;
    for (int i = 0; i < steps; ++i) {
      Vec c = w;
      for (double& v : c) v += sigma * nd(gen);
      const double cv = value(c);
      if (cv < cur) {
        cur = cv;
        w = std::move(c);
      } else if (i % 100 == 99) {
        sigma *= 0.7;
      }
    }
    best = std::min(best, cur);
  }
  return best;
}

// Measure of {theta : cos theta <= a, sin theta <= b} over 2 pi, by
// intersecting the two arcs exactly.
inline double circle_joint(double a, double b) {
  constexpr double pi = std::numbers::pi;
  // cos theta <= a  <=> theta in [acos a, 2pi - acos a]
  const double l1 = std::acos(std::clamp(a, -1.0, 1.0)), h1 = 2 * pi - l1;
  // sin theta <= b  <=> theta in [pi - asin b, 2pi + asin b] (mod 2pi)
  const double s = std::asin(std::clamp(b, -1.0, 1.0));
  const double l2 = pi - s, h2 = 2 * pi + s;
  auto overlap = [](double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); };
  double len = overlap(l1, h1, l2, h2) + overlap(l1, h1, l2 - 2 * pi, h2 - 2 * pi);
  return len / (2 * pi);
}

inline double circle_marginal(double a) { return 1.0 - std::acos(std::clamp(a, -1.0, 1.0)) / std::numbers::pi; }

// Polygon area by the shoelace formula, vertices sorted by angle first.
inline double convex_polygon_area(std::vector<std::pair<double, double>> pts) {
  double cx = 0, cy = 0;
  for (auto& p : pts) cx += p.first, cy += p.second;
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](auto& a, auto& b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  double s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& n = pts[(i + 1) % pts.size()];
    s += p.first * n.second - n.first * p.second;
  }
  return std::fabs(s) / 2;
}

// Cap discrepancy of points on a circle given by their angles: open arcs
// centered on a grid of directions, every half-width at which the count jumps
// (both one-sided limits). sup |count/m - half_width/pi|.
inline double circle_cap_discrepancy(const Vec& angles, int centers = 20000) {
  constexpr double pi = std::numbers::pi;
  const double m = static_cast<double>(angles.size());
  double best = 0;
  for (int c = 0; c < centers; ++c) {
    const double phi = 2 * pi * c / centers;
    Vec d;
    for (double a : angles) d.push_back(std::fabs(std::remainder(a - phi, 2 * pi)));
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < d.size(); ++i) {
      // half-width h -> d_i from below holds i points, from above i+1.
      best = std::max(best, std::fabs(static_cast<double>(i) / m - d[i] / pi));
      best = std::max(best, std::fabs(static_cast<double>(i + 1) / m - d[i] / pi));
    }
  }
  return best;
}

// All permutations of y (small q).
inline std::vector<Vec> permutations(Vec y) {
  std::sort(y.begin(), y.end());
  std::vector<Vec> out;
  do out.push_back(y);
  while (std::next_permutation(y.begin(), y.end()));
  return out;
}

}  // namespace oracle
