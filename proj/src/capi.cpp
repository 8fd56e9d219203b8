#include "permsphere/permsphere.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "permsphere/asymptotics.hpp"
#include "permsphere/configs.hpp"
#include "permsphere/discrepancy.hpp"
#include "permsphere/error.hpp"
#include "permsphere/montecarlo.hpp"
#include "permsphere/permutohedron.hpp"
#include "permsphere/random.hpp"
#include "permsphere/specfun.hpp"

namespace ps = permsphere;

struct ps_config {
  ps::Family family;
  ps::CenteredConfiguration y;
  ps::Vector weights;
  double weight_norm = 0.0;
};

struct ps_law {
  ps::DiscreteLaw law;
};

namespace {

thread_local std::string g_last_error;

struct BufferTooSmall {
  std::string what;
};

ps_status map_code(ps::ErrorCode code) {
  switch (code) {
    case ps::ErrorCode::invalid_argument: return PS_ERR_INVALID_ARGUMENT;
    case ps::ErrorCode::invalid_dimension: return PS_ERR_INVALID_DIMENSION;
    case ps::ErrorCode::index_out_of_range: return PS_ERR_INDEX;
    case ps::ErrorCode::zero_projection: return PS_ERR_ZERO_PROJECTION;
    case ps::ErrorCode::too_large: return PS_ERR_TOO_LARGE;
    case ps::ErrorCode::domain: return PS_ERR_DOMAIN;
    case ps::ErrorCode::numeric: return PS_ERR_NUMERIC;
  }
  return PS_ERR_INTERNAL;
}

template <class F>
ps_status guard(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return PS_OK;
  } catch (const BufferTooSmall& e) {
    g_last_error = e.what;
    return PS_ERR_BUFFER_TOO_SMALL;
  } catch (const ps::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PS_ERR_INTERNAL;
  }
}

template <class T>
T& require(T* p, const char* name) {
  if (p == nullptr) throw ps::Error(ps::ErrorCode::invalid_argument, std::string(name) + " must not be null");
  return *p;
}

void copy_out(std::span<const double> values, double* out, std::size_t len) {
  require(out, "output buffer");
  if (len < values.size()) {
    throw BufferTooSmall{"output buffer holds " + std::to_string(len) + " values, " + std::to_string(values.size()) +
                         " needed"};
  }
  std::copy(values.begin(), values.end(), out);
}

ps::Family to_family(ps_family f) {
  switch (f) {
    case PS_FAMILY_REGULAR: return ps::Family::regular;
    case PS_FAMILY_MAXIMAL: return ps::Family::maximal;
    case PS_FAMILY_NORMAL: return ps::Family::normal;
    case PS_FAMILY_SIMPLEX: return ps::Family::simplex;
    case PS_FAMILY_CUSTOM: return ps::Family::custom;
  }
  throw ps::Error(ps::ErrorCode::invalid_argument, "unknown family");
}

ps_family from_family(ps::Family f) {
  switch (f) {
    case ps::Family::regular: return PS_FAMILY_REGULAR;
    case ps::Family::maximal: return PS_FAMILY_MAXIMAL;
    case ps::Family::normal: return PS_FAMILY_NORMAL;
    case ps::Family::simplex: return PS_FAMILY_SIMPLEX;
    case ps::Family::custom: return PS_FAMILY_CUSTOM;
  }
  return PS_FAMILY_CUSTOM;
}

ps_estimate to_c(const ps::McEstimate& e) { return {e.value, e.std_error, e.n, e.seed}; }

ps_dominance to_c(const ps::DominanceResult& d) {
  return {d.holds ? 1 : 0, d.violations, d.first_violation, d.worst_gap};
}

void set_if(double* p, double v) {
  if (p != nullptr) *p = v;
}

template <class Make>
ps_status make_law(ps_law** out, Make&& make) {
  return guard([&] {
    require(out, "out");
    *out = new ps_law{make()};
  });
}

}  // namespace

extern "C" {

const char* ps_version(void) { return "0.1.0"; }

const char* ps_last_error(void) { return g_last_error.c_str(); }

const char* ps_status_string(ps_status status) {
  switch (status) {
    case PS_OK: return "ok";
    case PS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PS_ERR_INVALID_DIMENSION: return "invalid dimension";
    case PS_ERR_INDEX: return "index out of range";
    case PS_ERR_ZERO_PROJECTION: return "zero projection";
    case PS_ERR_TOO_LARGE: return "too large";
    case PS_ERR_DOMAIN: return "domain error";
    case PS_ERR_NUMERIC: return "numeric failure";
    case PS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case PS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

unsigned ps_worker_count(void) { return ps::worker_count(); }

ps_status ps_family_parse(const char* name, ps_family* out) {
  return guard([&] {
    require(name, "name");
    const auto f = ps::parse_family(name);
    if (!f) throw ps::Error(ps::ErrorCode::invalid_argument, std::string("unknown family '") + name + "'");
    require(out, "out") = from_family(*f);
  });
}

const char* ps_family_name(ps_family family) {
  try {
    return ps::to_string(to_family(family)).data();
  } catch (...) {
    return "unknown";
  }
}

// ---- configurations -------------------------------------------------------

ps_status ps_config_new_family(ps_family family, size_t q, ps_config** out) {
  return guard([&] {
    require(out, "out");
    const ps::Family f = to_family(family);
    switch (f) {
      case ps::Family::maximal: {
        auto m = ps::maximal(q);
        *out = new ps_config{f, std::move(m.y), std::move(m.weights.a_hat), m.weights.norm_a};
        break;
      }
      case ps::Family::normal: {
        auto n = ps::normal(q);
        *out = new ps_config{f, std::move(n.y), std::move(n.weights.a_breve), n.weights.norm_a};
        break;
      }
      default:
        *out = new ps_config{f, ps::family_configuration(f, q), {}, 0.0};
    }
  });
}

ps_status ps_config_new_custom(const double* x, size_t q, ps_config** out, int* adjusted) {
  return guard([&] {
    require(x, "x");
    require(out, "out");
    ps::Vector v(x, x + q);
    int flags = 0;
    if (!std::is_sorted(v.begin(), v.end())) flags |= PS_ADJUSTED_SORTED;
    double scale = 0.0;
    for (double e : v) scale = std::max(scale, std::abs(e));
    if (std::abs(ps::compensated_sum(v)) > 1e-12 * static_cast<double>(q) * scale) flags |= PS_ADJUSTED_CENTERED;
    auto y = ps::center_project(ps::Configuration::from_unsorted(std::move(v)));
    *out = new ps_config{ps::Family::custom, std::move(y), {}, 0.0};
    if (adjusted != nullptr) *adjusted = flags;
  });
}

void ps_config_free(ps_config* config) { delete config; }

size_t ps_config_dim(const ps_config* config) { return config ? config->y.dim() : 0; }

ps_family ps_config_family(const ps_config* config) {
  return config ? from_family(config->family) : PS_FAMILY_CUSTOM;
}

double ps_config_norm(const ps_config* config) {
  return config ? config->y.norm() : std::numeric_limits<double>::quiet_NaN();
}

ps_status ps_config_entries(const ps_config* config, double* out, size_t len) {
  return guard([&] { copy_out(require(config, "config").y.entries(), out, len); });
}

ps_status ps_config_weights(const ps_config* config, double* out, size_t len, double* norm) {
  return guard([&] {
    const ps_config& c = require(config, "config");
    if (c.weights.empty()) throw ps::Error(ps::ErrorCode::invalid_argument, "only maximal and normal configurations carry weights");
    copy_out(c.weights, out, len);
    set_if(norm, c.weight_norm);
  });
}

double ps_regular_norm(size_t q) { return ps::regular_norm(q); }

ps_status ps_maximal_b(size_t q, double* out, size_t len) {
  return guard([&] { copy_out(ps::maximal_weights(q).b, out, len); });
}

ps_status ps_ck(size_t q, size_t k, double* out) {
  return guard([&] { require(out, "out") = ps::ck(q, k); });
}

ps_status ps_ck_expanded(size_t q, size_t k, double* out) {
  return guard([&] { require(out, "out") = ps::ck_expanded(q, k); });
}

ps_status ps_maximal_norm_sq(size_t q, double* from_b, double* from_ck) {
  return guard([&] {
    const double n = ps::maximal_weights(q).norm_a;
    require(from_b, "from_b") = n * n;
    require(from_ck, "from_ck") = ps::maximal_norm_sq_from_ck(q);
  });
}

ps_status ps_maximal_norm_bounds(size_t q, double* lower, double* exact, double* upper) {
  return guard([&] {
    const auto b = ps::maximal_norm_bounds(q);
    require(lower, "lower") = b.lower;
    require(exact, "exact") = b.exact;
    require(upper, "upper") = b.upper;
  });
}

ps_status ps_maximal_threshold(size_t q, double* out) {
  return guard([&] { require(out, "out") = ps::maximal_threshold(q); });
}

ps_status ps_ray_objective(const double* z, size_t q, double* out) {
  return guard([&] {
    require(z, "z");
    if (q < 2) throw ps::Error(ps::ErrorCode::invalid_dimension, "q must be at least 2");
    require(out, "out") = ps::ray_objective(std::span<const double>(z, q));
  });
}

ps_status ps_verify_maximal_optimality(size_t q, uint64_t trials, uint64_t seed, ps_optimality_report* out) {
  return guard([&] {
    require(out, "out");
    const auto r = ps::verify_maximal_optimality(q, trials, seed);
    *out = {r.q, r.trials, r.seed, r.lambda_hat, r.max_objective, r.gap, r.violations, r.near_optimizers,
            r.majorization_failures};
  });
}

ps_status ps_quantile_tail(size_t q, double* exact, double* approx, double* ratio) {
  return guard([&] {
    const auto r = ps::quantile_tail_diagnostic(q);
    require(exact, "exact") = r.exact;
    require(approx, "approx") = r.approx;
    require(ratio, "ratio") = r.ratio;
  });
}

// ---- geometry ---------------------------------------------------------------

ps_status ps_helmert_column(size_t q, size_t j, double* out, size_t len) {
  return guard([&] { copy_out(ps::helmert_column(q, j), out, len); });
}

ps_status ps_extreme_ray(size_t q, size_t k, double* out, size_t len) {
  return guard([&] { copy_out(ps::extreme_ray(q, k).entries, out, len); });
}

ps_status ps_extreme_ray_inner(size_t q, size_t k, size_t l, double* out) {
  return guard([&] { require(out, "out") = ps::extreme_ray_inner(q, k, l); });
}

ps_status ps_simplex_vertex(size_t q, size_t i, double* out, size_t len) {
  return guard([&] { copy_out(ps::simplex_vertex(q, i).entries, out, len); });
}

// ---- special functions ------------------------------------------------------

ps_status ps_log_gamma(double x, double* out) {
  return guard([&] { require(out, "out") = ps::log_gamma(x); });
}

double ps_normal_cdf(double x) { return ps::normal_cdf(x); }

ps_status ps_normal_quantile(double p, double* out) {
  return guard([&] { require(out, "out") = ps::normal_quantile(p); });
}

ps_status ps_incomplete_beta(double a, double b, double x, double* out) {
  return guard([&] { require(out, "out") = ps::incomplete_beta(a, b, x); });
}

ps_status ps_cap_area(size_t q, double t, double* out) {
  return guard([&] { require(out, "out") = ps::cap_area(q, t); });
}

ps_status ps_cap_area_wendel_bound(size_t q, double t, double* out) {
  return guard([&] { require(out, "out") = ps::cap_area_wendel_bound(q, t); });
}

ps_status ps_cap_area_gaussian_bound(size_t q, double t, double* out) {
  return guard([&] { require(out, "out") = ps::cap_area_gaussian_bound(q, t); });
}

ps_status ps_cap_scaling(double lambda, const size_t* qs, size_t count, double* t_out, double* beta_out) {
  return guard([&] {
    require(qs, "qs");
    require(t_out, "t_out");
    require(beta_out, "beta_out");
    const auto rows = ps::cap_scaling_diagnostic(lambda, std::span<const std::size_t>(qs, count));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      t_out[i] = rows[i].t;
      beta_out[i] = rows[i].cap_area;
    }
  });
}

// ---- discrepancy ------------------------------------------------------------

ps_status ps_discrepancy(const ps_config* config, ps_discrepancy_report* out, size_t* argmin, size_t argmin_len) {
  return guard([&] {
    const ps_config& c = require(config, "config");
    require(out, "out");
    const auto r = ps::lecd_report(c.y, c.family);
    if (argmin != nullptr) {
      if (argmin_len < r.argmin.size()) throw BufferTooSmall{"argmin buffer too small"};
      std::copy(r.argmin.begin(), r.argmin.end(), argmin);
    }
    *out = {r.q, from_family(r.family), r.t_star, r.lecd, r.lecad, r.wendel_upper, r.gaussian_lower, r.argmin.size()};
  });
}

ps_status ps_orbit_threshold_oracle(const ps_config* config, uint64_t directions, uint64_t seed, double* out) {
  return guard([&] { require(out, "out") = ps::orbit_threshold_oracle(require(config, "config").y, directions, seed); });
}

ps_status ps_cap_fraction(const ps_config* config, const double* center, size_t q, double t, ps_cap_mode mode,
                          uint64_t n, uint64_t seed, ps_estimate* out) {
  return guard([&] {
    const ps_config& c = require(config, "config");
    require(center, "center");
    require(out, "out");
    if (mode != PS_CAP_EXHAUSTIVE && mode != PS_CAP_SAMPLED) throw ps::Error(ps::ErrorCode::invalid_argument, "unknown cap mode");
    if (q != c.y.dim()) throw ps::Error(ps::ErrorCode::invalid_dimension, "center length must match the configuration");
    const ps::CapSpec cap{ps::Vector(center, center + q), t};
    *out = to_c(ps::cap_fraction(c.y, cap, mode == PS_CAP_EXHAUSTIVE ? ps::CapMode::exhaustive : ps::CapMode::sampled,
                                 n, seed));
  });
}

ps_status ps_nscd_lower_bound(const ps_config* config, uint64_t directions, uint64_t seed, ps_estimate* out) {
  return guard([&] { require(out, "out") = to_c(ps::nscd_lower_bound(require(config, "config").y, directions, seed)); });
}

ps_status ps_marginal_distance(const ps_config* config, double* out) {
  return guard([&] { require(out, "out") = ps::marginal_distance(require(config, "config").y); });
}

ps_status ps_empty_cap_certificate(const ps_config* config, ps_certificate* out, double* center, size_t center_len,
                                   double* ray_thresholds, size_t thresholds_len) {
  return guard([&] {
    require(out, "out");
    const auto c = ps::empty_cap_certificate(require(config, "config").y);
    if (center != nullptr) copy_out(c.cap.center, center, center_len);
    if (ray_thresholds != nullptr) copy_out(c.ray_thresholds, ray_thresholds, thresholds_len);
    *out = {c.ray, c.cap.t, c.max_inner, c.bound, c.rays.size(), c.verified ? 1 : 0};
  });
}

// ---- laws -------------------------------------------------------------------

ps_status ps_law_from_atoms(const double* atoms, size_t count, ps_law** out) {
  return make_law(out, [&] {
    require(atoms, "atoms");
    return ps::DiscreteLaw(ps::Vector(atoms, atoms + count));
  });
}

ps_status ps_law_orbit_marginal(const ps_config* config, ps_law** out) {
  return make_law(out, [&] { return ps::orbit_marginal(require(config, "config").y); });
}

ps_status ps_law_scaled_marginal(ps_family family, size_t q, ps_law** out) {
  return make_law(out, [&] { return ps::scaled_marginal(to_family(family), q); });
}

ps_status ps_law_w_bar(size_t q, ps_law** out) {
  return make_law(out, [&] { return ps::w_statistics(q).w_bar; });
}

ps_status ps_law_w_hat(size_t q, ps_law** out) {
  return make_law(out, [&] { return ps::w_statistics(q).w_hat; });
}

ps_status ps_law_z(size_t q, ps_law** out) {
  return make_law(out, [&] { return ps::z_law(q); });
}

void ps_law_free(ps_law* law) { delete law; }

size_t ps_law_size(const ps_law* law) { return law ? law->law.size() : 0; }

ps_status ps_law_atoms(const ps_law* law, double* out, size_t len) {
  return guard([&] { copy_out(require(law, "law").law.atoms(), out, len); });
}

double ps_law_mean(const ps_law* law) { return law ? law->law.mean() : std::numeric_limits<double>::quiet_NaN(); }

double ps_law_variance(const ps_law* law) {
  return law ? law->law.variance() : std::numeric_limits<double>::quiet_NaN();
}

double ps_law_median(const ps_law* law) { return law ? law->law.median() : std::numeric_limits<double>::quiet_NaN(); }

double ps_law_cdf(const ps_law* law, double x) { return law ? law->law.cdf(x) : std::numeric_limits<double>::quiet_NaN(); }

double ps_law_mgf(const ps_law* law, double t) { return law ? law->law.mgf(t) : std::numeric_limits<double>::quiet_NaN(); }

ps_status ps_law_ks(const ps_law* law, ps_reference reference, double* out) {
  return guard([&] {
    const ps::DiscreteLaw& l = require(law, "law").law;
    double& result = require(out, "out");
    switch (reference) {
      case PS_REF_UNIFORM_SQRT3: {
        const double r3 = std::sqrt(3.0);
        result = ps::ks_distance(l, [r3](double x) { return std::clamp((x + r3) / (2.0 * r3), 0.0, 1.0); });
        return;
      }
      case PS_REF_NORMAL: result = ps::ks_distance(l, ps::normal_cdf); return;
      case PS_REF_F12: result = ps::ks_distance(l, ps::f12_cdf); return;
      case PS_REF_THREE_BETA: result = ps::ks_distance(l, ps::three_beta_half_one_cdf); return;
    }
    throw ps::Error(ps::ErrorCode::invalid_argument, "unknown reference law");
  });
}

ps_status ps_law_ks_sphere(const ps_law* law, size_t q, double* out) {
  return guard([&] {
    const ps::SphereMarginalLaw sphere(q);
    require(out, "out") = ps::ks_distance(require(law, "law").law, [&sphere](double x) { return sphere.scaled_cdf(x); });
  });
}

ps_status ps_scaled_marginal_ks(ps_family family, size_t q, double* out) {
  return guard([&] { require(out, "out") = ps::scaled_marginal_ks(to_family(family), q); });
}

ps_status ps_stochastic_order(size_t q, ps_dominance* lower_printed, ps_dominance* lower_proof, ps_dominance* upper) {
  return guard([&] {
    const auto r = ps::stochastic_order_check(q);
    require(lower_printed, "lower_printed") = to_c(r.lower_printed);
    require(lower_proof, "lower_proof") = to_c(r.lower_proof);
    require(upper, "upper") = to_c(r.upper);
  });
}

ps_status ps_sphere_marginal_survival(size_t q, double radius, double s, double* out) {
  return guard([&] { require(out, "out") = ps::SphereMarginalLaw(q, radius).survival(s); });
}

ps_status ps_sphere_marginal_scaled_cdf(size_t q, double x, double* out) {
  return guard([&] { require(out, "out") = ps::SphereMarginalLaw(q).scaled_cdf(x); });
}

ps_status ps_regular_mgf(size_t q, double t, double* out) {
  return guard([&] { require(out, "out") = ps::regular_mgf_closed_form(q, t); });
}

ps_status ps_range_order_check(size_t q, ps_range_order* out) {
  return guard([&] {
    const auto r = ps::range_order(q);
    require(out, "out") = {r.q, r.regular, r.normal, r.maximal, r.sphere, r.ordered ? 1 : 0};
  });
}

// ---- permutohedron ------------------------------------------------------------

ps_status ps_hull_contains(const ps_config* config, const double* v, size_t q, int* out) {
  return guard([&] {
    require(v, "v");
    require(out, "out") = ps::hull_contains(require(config, "config").y, std::span<const double>(v, q)) ? 1 : 0;
  });
}

ps_status ps_regular_volume(size_t q, double* out, double* log_out) {
  return guard([&] {
    require(out, "out") = ps::regular_volume(q);
    set_if(log_out, ps::log_regular_volume(q));
  });
}

ps_status ps_ball_volume(size_t q, double r, double* out, double* log_out) {
  return guard([&] {
    require(out, "out") = ps::ball_volume(q, r);
    set_if(log_out, ps::log_ball_volume(q, r));
  });
}

ps_status ps_regular_ratio(size_t q, double* exact, double* asymptote, double* ratio) {
  return guard([&] {
    const auto r = ps::regular_ratio(q);
    require(exact, "exact") = r.exact;
    set_if(asymptote, r.asymptote);
    set_if(ratio, r.ratio);
  });
}

ps_status ps_cube_ratio(size_t q, double* exact, double* asymptote, double* ratio) {
  return guard([&] {
    const auto r = ps::cube_ratio(q);
    require(exact, "exact") = r.exact;
    set_if(asymptote, r.asymptote);
    set_if(ratio, r.ratio);
  });
}

ps_status ps_mc_volume_ratio(ps_family family, size_t q, uint64_t samples, uint64_t seed, ps_estimate* out) {
  return guard([&] { require(out, "out") = to_c(ps::mc_volume_ratio(to_family(family), q, samples, seed)); });
}

ps_status ps_volume_report_compute(ps_family family, size_t q, uint64_t samples, uint64_t seed, ps_volume_report* out) {
  return guard([&] {
    const auto r = ps::volume_report(to_family(family), q, samples, seed);
    require(out, "out") = {r.q, from_family(r.family), r.ball_volume, r.closed_form_used ? 1 : 0, r.hull_volume, r.ratio,
                           to_c(r.mc)};
  });
}

// ---- Monte Carlo ----------------------------------------------------------------

ps_status ps_sphere_sample(size_t q, double r, uint64_t n, uint64_t seed, double* out, size_t len) {
  return guard([&] {
    if (len < n * q) throw BufferTooSmall{"sample buffer too small"};
    copy_out(ps::sphere_sample(q, r, n, seed).data(), out, len);
  });
}

ps_status ps_ball_sample(size_t q, double r, uint64_t n, uint64_t seed, double* out, size_t len) {
  return guard([&] {
    if (len < n * q) throw BufferTooSmall{"sample buffer too small"};
    copy_out(ps::ball_sample(q, r, n, seed).data(), out, len);
  });
}

ps_status ps_ape_coverage(ps_family family, size_t q, uint64_t n, uint64_t seed, ps_coverage_report* out) {
  return guard([&] {
    require(out, "out");
    const auto r = ps::ape_coverage(ps::coverage_spec(to_family(family), q), n, seed);
    *out = {from_family(r.spec.family), r.spec.q, r.spec.t_cap, r.spec.coordinate_threshold, r.spec.two_sided ? 1 : 0,
            r.spec.caps, to_c(r.coverage), r.complement, r.max_orbit_inner, r.cap_level, r.empty_verified ? 1 : 0};
  });
}

ps_status ps_hypothesis_test(size_t q, uint64_t n, uint64_t seed, ps_hypothesis_report* out) {
  return guard([&] {
    const auto r = ps::hypothesis_test(q, n, seed);
    require(out, "out") = {r.q, r.critical_value, to_c(r.size), r.power};
  });
}

ps_status ps_draw_thresholds(size_t n_dim, size_t draws, uint64_t seed, double* out, size_t len) {
  return guard([&] {
    if (len < n_dim * draws) throw BufferTooSmall{"threshold buffer too small"};
    require(out, "out");
    const auto sets = ps::draw_thresholds(n_dim, draws, seed);
    for (std::size_t s = 0; s < sets.size(); ++s) std::copy(sets[s].begin(), sets[s].end(), out + s * n_dim);
  });
}

ps_status ps_subindependence(size_t n_dim, const double* thresholds, size_t sets, uint64_t trials, uint64_t seed,
                             int splits, ps_subindep_row* rows, ps_split_row* split_rows, int* all_pass) {
  return guard([&] {
    require(thresholds, "thresholds");
    require(rows, "rows");
    if (splits) require(split_rows, "split_rows");
    std::vector<ps::Vector> ts;
    for (std::size_t s = 0; s < sets; ++s) ts.emplace_back(thresholds + s * n_dim, thresholds + (s + 1) * n_dim);
    const auto rep = ps::subindependence_check(n_dim, ts, trials, seed, splits != 0);
    for (std::size_t s = 0; s < rep.rows.size(); ++s) {
      const auto& row = rep.rows[s];
      rows[s] = {to_c(row.joint), row.mc_product, row.mc_product_se, row.exact_product, row.pass ? 1 : 0};
      for (std::size_t i = 0; i < row.splits.size(); ++i) {
        const auto& sr = row.splits[i];
        split_rows[s * (n_dim - 1) + i] = {sr.r, sr.joint.value, sr.product, sr.product_se, sr.pass ? 1 : 0};
      }
    }
    if (all_pass != nullptr) *all_pass = rep.all_pass ? 1 : 0;
  });
}

ps_status ps_slepian(size_t q, double threshold, uint64_t trials, uint64_t seed, ps_slepian_report* out) {
  return guard([&] {
    const auto r = ps::slepian_halfspace_check(q, threshold, trials, seed);
    require(out, "out") = {r.q,
                           r.threshold,
                           to_c(r.halfspaces_f),
                           to_c(r.halfspaces_gamma),
                           r.analytic_product,
                           r.slepian_pass ? 1 : 0,
                           r.product_pass ? 1 : 0};
  });
}

}  // extern "C"
