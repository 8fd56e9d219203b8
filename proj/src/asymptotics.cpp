#include "permsphere/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "permsphere/error.hpp"
#include "permsphere/specfun.hpp"

namespace permsphere {

DiscreteLaw::DiscreteLaw(Vector atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::invalid_argument, "a discrete law needs at least one atom");
  for (double a : atoms_) {
    if (!std::isfinite(a)) throw Error(ErrorCode::invalid_argument, "atoms must be finite");
  }
  std::sort(atoms_.begin(), atoms_.end());
}

double DiscreteLaw::mean() const { return compensated_sum(atoms_) / static_cast<double>(atoms_.size()); }

double DiscreteLaw::variance() const {
  const double m = mean();
  Vector sq(atoms_.size());
  std::transform(atoms_.begin(), atoms_.end(), sq.begin(), [m](double a) { return (a - m) * (a - m); });
  return compensated_sum(sq) / static_cast<double>(atoms_.size());
}

double DiscreteLaw::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  return static_cast<double>(it - atoms_.begin()) / static_cast<double>(atoms_.size());
}

double DiscreteLaw::median() const {
  const std::size_t n = atoms_.size();
  if (n % 2 == 1) return atoms_[n / 2];
  return 0.5 * (atoms_[n / 2 - 1] + atoms_[n / 2]);
}

double DiscreteLaw::mgf(double t) const {
  Vector e(atoms_.size());
  std::transform(atoms_.begin(), atoms_.end(), e.begin(), [t](double a) { return std::exp(t * a); });
  return compensated_sum(e) / static_cast<double>(atoms_.size());
}

double ks_distance(const DiscreteLaw& law, const std::function<double(double)>& cdf) {
  const auto a = law.atoms();
  const double n = static_cast<double>(a.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < a.size()) {
    std::size_t j = i;
    while (j < a.size() && a[j] == a[i]) ++j;
    const double f = cdf(a[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    worst = std::max({worst, std::abs(below - f), std::abs(at - f)});
    i = j;
  }
  return worst;
}

DiscreteLaw orbit_marginal(const CenteredConfiguration& y) {
  return DiscreteLaw(Vector(y.entries().begin(), y.entries().end()));
}

DiscreteLaw orbit_marginal(Family family, std::size_t q) { return orbit_marginal(family_configuration(family, q)); }

DiscreteLaw scaled_marginal(Family family, std::size_t q) {
  const CenteredConfiguration y = family_configuration(family, q);
  const double qd = static_cast<double>(q);
  const double scale = std::sqrt(12.0 / (qd * qd - 1.0));
  Vector atoms(y.entries().begin(), y.entries().end());
  for (double& a : atoms) a *= scale;
  return DiscreteLaw(std::move(atoms));
}

double scaled_marginal_ks(Family family, std::size_t q) {
  switch (family) {
    case Family::regular: {
      const double r3 = std::sqrt(3.0);
      return ks_distance(scaled_marginal(family, q),
                         [r3](double x) { return std::clamp((x + r3) / (2.0 * r3), 0.0, 1.0); });
    }
    case Family::normal:
      return ks_distance(scaled_marginal(family, q), normal_cdf);
    case Family::maximal: {
      const DiscreteLaw law = scaled_marginal(family, q);
      Vector abs_atoms(law.atoms().begin(), law.atoms().end());
      for (double& a : abs_atoms) a = std::abs(a);
      return DiscreteLaw(std::move(abs_atoms)).median();
    }
    default:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "scaled_marginal_ks supports regular, maximal and normal");
}

WStatistics w_statistics(std::size_t q) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "w_statistics requires q >= 3");
  const double qd = static_cast<double>(q);
  const CenteredConfiguration y = regular(q);
  Vector w_bar(q);
  for (std::size_t k = 0; k < q; ++k) w_bar[k] = 12.0 / (qd * qd - 1.0) * y[k] * y[k];
  const MaximalWeights mw = maximal_weights(q);
  const double norm_sq = mw.norm_a * mw.norm_a;
  Vector w_hat(q);
  for (std::size_t k = 1; k <= q; ++k) w_hat[k - 1] = 3.0 * ck(q, k) / ((qd + 1.0) * norm_sq);
  return {DiscreteLaw(std::move(w_bar)), DiscreteLaw(std::move(w_hat))};
}

double f12_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return incomplete_beta(0.5, 1.0, x / (x + 2.0));
}

double three_beta_half_one_cdf(double w) {
  if (!(w > 0.0)) return 0.0;
  if (w >= 3.0) return 1.0;
  return incomplete_beta(0.5, 1.0, w / 3.0);
}

DiscreteLaw z_law(std::size_t q) {
  if (q < 2) throw Error(ErrorCode::invalid_dimension, "z_law requires q >= 2");
  const double qd = static_cast<double>(q);
  Vector z(q);
  for (std::size_t k = 1; k <= q; ++k) {
    const double v = (static_cast<double>(k) - 0.5 * (qd + 1.0)) / qd;
    z[k - 1] = 8.0 * v * v / (1.0 - 4.0 * v * v);
  }
  return DiscreteLaw(std::move(z));
}

DominanceResult stochastically_below(const DiscreteLaw& a, const DiscreteLaw& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "laws must have the same number of atoms");
  DominanceResult r;
  const auto x = a.atoms();
  const auto y = b.atoms();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gap = x[i] - y[i];
    if (gap > 0.0) {
      if (r.violations++ == 0) r.first_violation = i + 1;
      r.worst_gap = std::max(r.worst_gap, gap);
    }
  }
  r.holds = r.violations == 0;
  return r;
}

StochasticOrderReport stochastic_order_check(std::size_t q) {
  if (q < 5) throw Error(ErrorCode::invalid_dimension, "stochastic_order_check requires q >= 5");
  const double qd = static_cast<double>(q);
  const DiscreteLaw z = z_law(q);
  const DiscreteLaw w_hat = w_statistics(q).w_hat;
  auto transformed = [&z](double slope, double shift, double denom) {
    Vector atoms(z.atoms().begin(), z.atoms().end());
    for (double& a : atoms) a = (slope * a + shift) / denom;
    return DiscreteLaw(std::move(atoms));
  };
  StochasticOrderReport r;
  r.q = q;
  r.lower_printed = stochastically_below(transformed(1.0, 0.0, std::log(2.0 * qd - 1.0) + 2.0), w_hat);
  r.lower_proof = stochastically_below(transformed(1.0, 0.0, std::log(2.0 * qd + 1.0) - 2.0), w_hat);
  r.upper = stochastically_below(w_hat, transformed(2.0, 1.0, std::log(2.0 * qd + 1.0) - 2.0));
  return r;
}

SphereMarginalLaw::SphereMarginalLaw(std::size_t q, double radius) : q_(q), radius_(radius) {
  if (q < 3) throw Error(ErrorCode::invalid_dimension, "sphere marginal law requires q >= 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
}

SphereMarginalLaw::SphereMarginalLaw(std::size_t q) : SphereMarginalLaw(q, regular_norm(q)) {}

double SphereMarginalLaw::survival(double s) const {
  const double qd = static_cast<double>(q_);
  const double t = s * std::sqrt(qd / (qd - 1.0)) / radius_;
  if (t >= 1.0) return 0.0;
  if (t <= -1.0) return 1.0;
  return cap_area(q_, t);
}

double SphereMarginalLaw::scaled_cdf(double x) const {
  const double qd = static_cast<double>(q_);
  return cdf(x * std::sqrt((qd * qd - 1.0) / 12.0));
}

double regular_mgf_closed_form(std::size_t q, double t) {
  if (q < 1) throw Error(ErrorCode::invalid_dimension, "q must be positive");
  if (t == 0.0) return 1.0;
  const double qd = static_cast<double>(q);
  return std::sinh(0.5 * t * qd) / (qd * std::sinh(0.5 * t));
}

RangeOrder range_order(std::size_t q) {
  if (q < 4) throw Error(ErrorCode::invalid_dimension, "range_order requires q >= 4");
  RangeOrder r;
  r.q = q;
  r.regular = regular(q).entries().back();
  r.normal = normal(q).y.entries().back();
  r.maximal = maximal(q).y.entries().back();
  r.sphere = regular_norm(q);
  r.ordered = r.regular < r.normal && r.normal < r.maximal && r.maximal < r.sphere;
  return r;
}

}  // namespace permsphere
