// permsphere-cli: command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output_record.hpp"
#include "permsphere/permsphere.h"

namespace {

using permsphere::cli::Format;
using permsphere::cli::OutputRecord;
using permsphere::cli::Value;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumeric = 4;

struct Failure {
  int code;
  std::string message;
};

void check(ps_status s) {
  if (s == PS_OK) return;
  const int code = (s == PS_ERR_NUMERIC || s == PS_ERR_INTERNAL) ? kExitNumeric : kExitUsage;
  throw Failure{code, std::string(ps_status_string(s)) + ": " + ps_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

using ConfigPtr = std::unique_ptr<ps_config, decltype(&ps_config_free)>;
using LawPtr = std::unique_ptr<ps_law, decltype(&ps_law_free)>;

Value count(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// ---- input ------------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw Failure{kExitParse, "line " + std::to_string(line) + ": cannot parse '" + t + "' as a real number"};
  }
  return v;
}

// One real per line, or a single comma-separated line. Blank lines and lines
// starting with '#' are skipped.
std::vector<double> read_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitParse, "cannot open input file '" + path + "'"};
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') lines.emplace_back(n, t);
  }
  std::vector<double> x;
  if (lines.size() == 1 && lines[0].second.find(',') != std::string::npos) {
    std::stringstream ss(lines[0].second);
    std::string field;
    while (std::getline(ss, field, ',')) x.push_back(parse_real(field, lines[0].first));
  } else {
    for (const auto& [n, t] : lines) x.push_back(parse_real(t, n));
  }
  if (x.size() < 2) throw Failure{kExitParse, "input must contain at least two values"};
  return x;
}

ps_family parse_family(const std::string& name, std::initializer_list<ps_family> allowed) {
  ps_family f;
  if (ps_family_parse(name.c_str(), &f) != PS_OK) usage("unknown family '" + name + "'");
  for (ps_family a : allowed) {
    if (a == f) return f;
  }
  std::string list;
  for (ps_family a : allowed) list += std::string(list.empty() ? "" : ", ") + ps_family_name(a);
  usage("family '" + name + "' is not supported here (expected one of: " + list + ")");
}

ConfigPtr family_config(ps_family f, std::size_t q) {
  ps_config* c = nullptr;
  check(ps_config_new_family(f, q, &c));
  return ConfigPtr(c, ps_config_free);
}

ConfigPtr input_config(const std::string& path) {
  const auto x = read_configuration(path);
  ps_config* c = nullptr;
  int adjusted = 0;
  const ps_status s = ps_config_new_custom(x.data(), x.size(), &c, &adjusted);
  if (s == PS_ERR_ZERO_PROJECTION) throw Failure{kExitParse, "input is constant; its centered projection is zero"};
  check(s);
  if (adjusted & PS_ADJUSTED_SORTED) std::cerr << "warning: input was not sorted; sorted ascending\n";
  if (adjusted & PS_ADJUSTED_CENTERED) std::cerr << "warning: input was not centered; subtracted its mean\n";
  return ConfigPtr(c, ps_config_free);
}

std::vector<double> entries(const ps_config* c) {
  std::vector<double> y(ps_config_dim(c));
  check(ps_config_entries(c, y.data(), y.size()));
  return y;
}

// ---- shared option state -------------------------------------------------------

struct Options {
  std::string family;
  std::size_t q = 0;
  std::vector<std::size_t> q_list;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 0;
  std::uint64_t directions = 0;
  std::string input;
  std::size_t n_dim = 0;
  std::vector<double> thresholds;
  std::size_t draws = 0;
  std::optional<double> threshold;
  double lambda = 0.0;
  double t = 0.0;
  std::optional<double> t_opt;
  std::size_t ray = 0;
  std::string mode = "exhaustive";
  bool splits = false;
};

std::uint64_t need_seed(const Options& o) {
  if (!o.seed) usage("this command is stochastic and requires --seed");
  return *o.seed;
}

struct Source {
  ConfigPtr config;
  std::string label;
};

Source source(const Options& o, std::initializer_list<ps_family> allowed) {
  if (!o.input.empty()) return {input_config(o.input), "custom"};
  if (o.family.empty()) usage("pass --family or --input");
  if (o.q == 0) usage("--q is required with --family");
  const ps_family f = parse_family(o.family, allowed);
  return {family_config(f, o.q), ps_family_name(f)};
}

void config_params(OutputRecord& r, const Source& s, const Options& o) {
  r.param("family", s.label);
  r.param("q", count(ps_config_dim(s.config.get())));
  if (!o.input.empty()) r.param("input", o.input);
}

// ---- commands ---------------------------------------------------------------

OutputRecord cmd_config(const Options& o) {
  const ps_family f = parse_family(o.family, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL});
  auto c = family_config(f, o.q);
  OutputRecord r;
  r.command = "config";
  r.param("family", ps_family_name(f));
  r.param("q", count(o.q));
  r.result("norm", ps_config_norm(c.get()));
  r.result("regular_norm", ps_regular_norm(o.q));
  const auto y = entries(c.get());
  if (f == PS_FAMILY_REGULAR) {
    auto& t = r.table("configuration", {"k", "y"});
    for (std::size_t k = 0; k < y.size(); ++k) t.add_row({count(k + 1), y[k]});
    return r;
  }
  std::vector<double> w(o.q);
  double wn = 0.0;
  check(ps_config_weights(c.get(), w.data(), w.size(), &wn));
  r.result("weight_norm", wn);
  if (f == PS_FAMILY_MAXIMAL) {
    std::vector<double> b(o.q);
    check(ps_maximal_b(o.q, b.data(), b.size()));
    auto& t = r.table("configuration", {"k", "y", "b", "a_hat"});
    for (std::size_t k = 0; k < y.size(); ++k) t.add_row({count(k + 1), y[k], b[k], w[k]});
  } else {
    auto& t = r.table("configuration", {"k", "y", "a_breve"});
    for (std::size_t k = 0; k < y.size(); ++k) t.add_row({count(k + 1), y[k], w[k]});
  }
  return r;
}

OutputRecord cmd_discrepancy(const Options& o) {
  const Source s = source(o, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL, PS_FAMILY_SIMPLEX});
  const std::size_t q = ps_config_dim(s.config.get());
  OutputRecord r;
  r.command = "discrepancy";
  config_params(r, s, o);
  ps_discrepancy_report rep;
  std::vector<std::size_t> argmin(q);
  check(ps_discrepancy(s.config.get(), &rep, argmin.data(), argmin.size()));
  argmin.resize(rep.argmin_count);
  std::string rays;
  for (std::size_t k : argmin) rays += (rays.empty() ? "" : ",") + std::to_string(k);
  double md = 0.0;
  check(ps_marginal_distance(s.config.get(), &md));
  ps_certificate cert;
  check(ps_empty_cap_certificate(s.config.get(), &cert, nullptr, 0, nullptr, 0));
  r.result("t_star", rep.t_star);
  r.result("t_star_sqrt_q", rep.t_star * std::sqrt(static_cast<double>(q)));
  r.result("lecd", rep.lecd);
  r.result("lecad", rep.lecad);
  r.result("wendel_upper", rep.wendel_upper);
  r.result("gaussian_lower", rep.gaussian_lower);
  r.result("argmin_rays", rays);
  r.result("argmin_count", count(rep.argmin_count));
  r.result("marginal_distance", md);
  r.result("certificate_verified", cert.verified != 0);
  if (o.directions > 0) {
    const std::uint64_t seed = need_seed(o);
    double oracle = 0.0;
    check(ps_orbit_threshold_oracle(s.config.get(), o.directions, seed, &oracle));
    r.param("directions", count(o.directions));
    r.param("seed", count(seed));
    r.result("oracle_t", oracle);
    r.result("oracle_gap", oracle - rep.t_star);
  }
  return r;
}

const ps_family kThreeFamilies[] = {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL};

std::string trend(const std::vector<double>& v) {
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    inc = inc && v[i] > v[i - 1];
    dec = dec && v[i] < v[i - 1];
  }
  if (v.size() < 2) return "single";
  return inc ? "increasing" : dec ? "decreasing" : "mixed";
}

OutputRecord cmd_summary(const Options& o) {
  const std::vector<std::size_t> qs = o.q_list.empty() ? std::vector<std::size_t>{100, 1000, 10000} : o.q_list;
  OutputRecord r;
  r.command = "summary";
  std::string list;
  for (std::size_t q : qs) list += (list.empty() ? "" : ",") + std::to_string(q);
  r.param("q_list", list);
  auto& t = r.table("limits", {"family", "q", "t_star", "lecd", "lecad", "marginal_distance"});
  for (ps_family f : kThreeFamilies) {
    std::vector<double> lecd, lecad;
    for (std::size_t q : qs) {
      auto c = family_config(f, q);
      ps_discrepancy_report rep;
      check(ps_discrepancy(c.get(), &rep, nullptr, 0));
      double md = 0.0;
      check(ps_marginal_distance(c.get(), &md));
      t.add_row({std::string(ps_family_name(f)), count(q), rep.t_star, rep.lecd, rep.lecad, md});
      lecd.push_back(rep.lecd);
      lecad.push_back(rep.lecad);
    }
    r.result(std::string("lecd_trend_") + ps_family_name(f), trend(lecd));
    r.result(std::string("lecad_trend_") + ps_family_name(f), trend(lecad));
  }
  return r;
}

OutputRecord cmd_components(const Options& o) {
  const std::vector<std::size_t> qs = o.q_list.empty() ? std::vector<std::size_t>{3, 4, 5, 6} : o.q_list;
  OutputRecord r;
  r.command = "components";
  auto& t = r.table("nonnegative_components", {"q", "family", "j", "value"});
  for (std::size_t q : qs) {
    for (ps_family f : kThreeFamilies) {
      auto c = family_config(f, q);
      const auto y = entries(c.get());
      std::size_t j = 0;
      for (std::size_t k = q / 2; k < q; ++k) {
        if (y[k] < -1e-12) continue;
        t.add_row({count(q), std::string(ps_family_name(f)), count(++j), std::abs(y[k]) < 1e-12 ? 0.0 : y[k]});
      }
    }
  }
  return r;
}

OutputRecord cmd_volume(const Options& o) {
  const ps_family f = parse_family(o.family, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL});
  if (f != PS_FAMILY_REGULAR && o.n == 0) usage("family '" + o.family + "' has no closed-form volume; pass --n");
  const std::uint64_t seed = o.n > 0 ? need_seed(o) : 0;
  ps_volume_report rep;
  check(ps_volume_report_compute(f, o.q, o.n, seed, &rep));
  OutputRecord r;
  r.command = "volume";
  r.param("family", ps_family_name(f));
  r.param("q", count(o.q));
  r.param("n", count(o.n));
  if (o.n > 0) r.param("seed", count(seed));
  r.result("ball_volume", rep.ball_volume);
  r.result("hull_volume", rep.hull_volume);
  r.result("ratio", rep.ratio);
  r.result("closed_form_used", rep.closed_form_used != 0);
  if (f == PS_FAMILY_REGULAR) {
    double exact = 0.0, asym = 0.0, ratio = 0.0;
    check(ps_regular_ratio(o.q, &exact, &asym, &ratio));
    r.result("asymptote", asym);
    r.result("exact_over_asymptote", ratio);
    double ce = 0.0, ca = 0.0, cr = 0.0;
    check(ps_cube_ratio(o.q, &ce, &ca, &cr));
    r.result("cube_ratio", ce);
    r.result("cube_asymptote", ca);
    r.result("cube_over_asymptote", cr);
  }
  if (o.n > 0) {
    r.result("mc_ratio", rep.mc.value);
    r.result("mc_std_error", rep.mc.std_error);
    if (rep.closed_form_used) {
      r.result("mc_within_3se", std::abs(rep.mc.value - rep.ratio) <= 3.0 * rep.mc.std_error);
    }
  }
  return r;
}

void estimate(OutputRecord& r, const std::string& prefix, const ps_estimate& e) {
  r.result(prefix, e.value);
  r.result(prefix + "_std_error", e.std_error);
}

OutputRecord cmd_mc_ape(const Options& o) {
  const ps_family f = parse_family(o.family, {PS_FAMILY_REGULAR, PS_FAMILY_NORMAL});
  const std::uint64_t seed = need_seed(o);
  ps_coverage_report rep;
  check(ps_ape_coverage(f, o.q, o.n, seed, &rep));
  OutputRecord r;
  r.command = "mc ape";
  r.param("family", ps_family_name(f));
  r.param("q", count(o.q));
  r.param("n", count(o.n));
  r.param("seed", count(seed));
  r.result("t_cap", rep.t_cap);
  r.result("coordinate_threshold", rep.coordinate_threshold);
  r.result("caps", count(rep.caps));
  r.result("two_sided", rep.two_sided != 0);
  estimate(r, "coverage", rep.coverage);
  r.result("complement", rep.complement);
  r.result("empty_verified", rep.empty_verified != 0);
  if (f == PS_FAMILY_REGULAR) {
    const double bound = std::pow(0.96, static_cast<double>(o.q) - 1.0);
    r.result("geometric_bound", bound);
    r.result("pass", rep.complement <= bound && rep.empty_verified != 0);
  } else {
    r.result("pass", rep.empty_verified != 0);
  }
  return r;
}

OutputRecord cmd_mc_hypotest(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  ps_hypothesis_report rep;
  check(ps_hypothesis_test(o.q, o.n, seed, &rep));
  OutputRecord r;
  r.command = "mc hypotest";
  r.param("q", count(o.q));
  r.param("n", count(o.n));
  r.param("seed", count(seed));
  r.result("critical_value", rep.critical_value);
  estimate(r, "size", rep.size);
  r.result("power", rep.power);
  const double bound = std::pow(0.96, static_cast<double>(o.q) - 1.0);
  r.result("geometric_bound", bound);
  r.result("pass", rep.size.value <= bound && rep.power == 1.0);
  return r;
}

OutputRecord cmd_mc_subindep(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  if (o.n_dim < 2) usage("--n-dim must be at least 2");
  const std::size_t d = o.n_dim;
  std::vector<double> ts;
  std::size_t sets = 0;
  if (!o.thresholds.empty()) {
    if (o.thresholds.size() % d != 0) usage("--thresholds must hold a multiple of n_dim values");
    ts = o.thresholds;
    sets = ts.size() / d;
  } else {
    sets = o.draws == 0 ? 1 : o.draws;
    ts.resize(sets * d);
    check(ps_draw_thresholds(d, sets, seed, ts.data(), ts.size()));
  }
  std::vector<ps_subindep_row> rows(sets);
  std::vector<ps_split_row> split_rows(o.splits ? sets * (d - 1) : 0);
  int all_pass = 0;
  check(ps_subindependence(d, ts.data(), sets, o.trials, seed, o.splits ? 1 : 0, rows.data(),
                           o.splits ? split_rows.data() : nullptr, &all_pass));
  OutputRecord r;
  r.command = "mc subindep";
  r.param("n_dim", count(d));
  r.param("trials", count(o.trials));
  r.param("seed", count(seed));
  r.param("sets", count(sets));
  r.param("splits", o.splits);
  r.result("all_pass", all_pass != 0);
  auto& t = r.table("rows", {"set", "thresholds", "joint", "joint_std_error", "mc_product", "mc_product_std_error",
                             "exact_product", "pass"});
  for (std::size_t s = 0; s < sets; ++s) {
    std::ostringstream th;
    for (std::size_t i = 0; i < d; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", ts[s * d + i]);
      th << (i ? ";" : "") << buf;
    }
    const auto& row = rows[s];
    t.add_row({count(s + 1), th.str(), row.joint.value, row.joint.std_error, row.mc_product, row.mc_product_se,
               row.exact_product, row.pass != 0});
  }
  if (o.splits) {
    auto& st = r.table("splits", {"set", "r", "joint", "product", "product_std_error", "pass"});
    for (std::size_t s = 0; s < sets; ++s) {
      for (std::size_t i = 0; i + 1 < d; ++i) {
        const auto& sr = split_rows[s * (d - 1) + i];
        st.add_row({count(s + 1), count(sr.r), sr.joint, sr.product, sr.product_se, sr.pass != 0});
      }
    }
  }
  return r;
}

OutputRecord cmd_mc_slepian(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  const double qd = static_cast<double>(o.q);
  const double threshold = o.threshold ? *o.threshold : ps_regular_norm(o.q) * std::sqrt(3.0 / (qd + 1.0));
  ps_slepian_report rep;
  check(ps_slepian(o.q, threshold, o.trials, seed, &rep));
  OutputRecord r;
  r.command = "mc slepian";
  r.param("q", count(o.q));
  r.param("threshold", threshold);
  r.param("trials", count(o.trials));
  r.param("seed", count(seed));
  estimate(r, "halfspaces_f", rep.halfspaces_f);
  estimate(r, "halfspaces_gamma", rep.halfspaces_gamma);
  r.result("analytic_product", rep.analytic_product);
  r.result("slepian_pass", rep.slepian_pass != 0);
  r.result("product_pass", rep.product_pass != 0);
  return r;
}

OutputRecord cmd_mc_nscd(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  const Source s = source(o, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL, PS_FAMILY_SIMPLEX});
  const std::uint64_t dirs = o.directions == 0 ? 10000 : o.directions;
  ps_estimate e;
  check(ps_nscd_lower_bound(s.config.get(), dirs, seed, &e));
  ps_discrepancy_report rep;
  check(ps_discrepancy(s.config.get(), &rep, nullptr, 0));
  OutputRecord r;
  r.command = "mc nscd";
  config_params(r, s, o);
  r.param("directions", count(dirs));
  r.param("seed", count(seed));
  r.result("nscd_lower_bound", e.value);
  r.result("lecd", rep.lecd);
  return r;
}

OutputRecord cmd_mc_capfrac(const Options& o) {
  const Source s = source(o, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL, PS_FAMILY_SIMPLEX});
  const std::size_t q = ps_config_dim(s.config.get());
  ps_cap_mode mode;
  if (o.mode == "exhaustive") {
    mode = PS_CAP_EXHAUSTIVE;
  } else if (o.mode == "sampled") {
    mode = PS_CAP_SAMPLED;
  } else {
    usage("--mode must be exhaustive or sampled");
  }
  const std::uint64_t seed = mode == PS_CAP_SAMPLED ? need_seed(o) : o.seed.value_or(0);
  ps_discrepancy_report rep;
  std::vector<std::size_t> argmin(q);
  check(ps_discrepancy(s.config.get(), &rep, argmin.data(), argmin.size()));
  const std::size_t ray = o.ray == 0 ? argmin[0] : o.ray;
  std::vector<double> center(q);
  check(ps_extreme_ray(q, ray, center.data(), center.size()));
  for (double& v : center) v *= ps_config_norm(s.config.get());
  const double t = o.t_opt ? *o.t_opt : rep.t_star;
  ps_estimate e;
  check(ps_cap_fraction(s.config.get(), center.data(), q, t, mode, o.n == 0 ? 100000 : o.n, seed, &e));
  OutputRecord r;
  r.command = "mc capfrac";
  config_params(r, s, o);
  r.param("ray", count(ray));
  r.param("t", t);
  r.param("mode", o.mode);
  if (mode == PS_CAP_SAMPLED) r.param("seed", count(seed));
  estimate(r, "fraction", e);
  r.result("n", count(e.n));
  return r;
}

OutputRecord cmd_caparea(const Options& o) {
  OutputRecord r;
  r.command = "caparea";
  r.param("q", count(o.q));
  r.param("t", o.t);
  double v = 0.0;
  check(ps_cap_area(o.q, o.t, &v));
  r.result("cap_area", v);
  double w = std::nan("");
  if (o.t > 0.0 && o.t < 1.0) check(ps_cap_area_wendel_bound(o.q, o.t, &w));
  r.result("wendel_upper", w);
  double g = std::nan("");
  if (o.q >= 5 && o.t >= 0.0 && o.t < 1.0) check(ps_cap_area_gaussian_bound(o.q, o.t, &g));
  r.result("gaussian_lower", g);
  return r;
}

OutputRecord cmd_cap_scaling(const Options& o) {
  const std::vector<std::size_t> qs = o.q_list.empty() ? std::vector<std::size_t>{10, 100, 1000, 10000} : o.q_list;
  std::vector<double> ts(qs.size()), betas(qs.size());
  check(ps_cap_scaling(o.lambda, qs.data(), qs.size(), ts.data(), betas.data()));
  OutputRecord r;
  r.command = "cap-scaling";
  r.param("lambda", o.lambda);
  r.result("limit", 1.0 - ps_normal_cdf(o.lambda));
  auto& t = r.table("rows", {"q", "t", "cap_area"});
  for (std::size_t i = 0; i < qs.size(); ++i) t.add_row({count(qs[i]), ts[i], betas[i]});
  return r;
}

OutputRecord cmd_marginal(const Options& o) {
  const ps_family f = parse_family(o.family, {PS_FAMILY_REGULAR, PS_FAMILY_MAXIMAL, PS_FAMILY_NORMAL});
  auto c = family_config(f, o.q);
  OutputRecord r;
  r.command = "marginal";
  r.param("family", ps_family_name(f));
  r.param("q", count(o.q));
  double v = 0.0;
  check(ps_scaled_marginal_ks(f, o.q, &v));
  r.result(f == PS_FAMILY_MAXIMAL ? "median_abs_scaled" : "scaled_ks", v);
  double md = 0.0;
  check(ps_marginal_distance(c.get(), &md));
  r.result("marginal_distance", md);
  ps_law* raw = nullptr;
  check(ps_law_orbit_marginal(c.get(), &raw));
  LawPtr law(raw, ps_law_free);
  r.result("mean", ps_law_mean(law.get()));
  r.result("variance", ps_law_variance(law.get()));
  r.result("variance_expected", ps_config_norm(c.get()) * ps_config_norm(c.get()) / static_cast<double>(o.q));
  return r;
}

LawPtr make(ps_status (*fn)(std::size_t, ps_law**), std::size_t q) {
  ps_law* raw = nullptr;
  check(fn(q, &raw));
  return LawPtr(raw, ps_law_free);
}

void dominance(OutputRecord& r, const std::string& prefix, const ps_dominance& d) {
  r.result(prefix + "_holds", d.holds != 0);
  r.result(prefix + "_violations", count(d.violations));
  r.result(prefix + "_first_violation", count(d.first_violation));
  r.result(prefix + "_worst_gap", d.worst_gap);
}

OutputRecord cmd_laws(const Options& o) {
  OutputRecord r;
  r.command = "laws";
  r.param("q", count(o.q));
  auto z = make(ps_law_z, o.q);
  auto w_bar = make(ps_law_w_bar, o.q);
  auto w_hat = make(ps_law_w_hat, o.q);
  double ks_z = 0.0, ks_w = 0.0;
  check(ps_law_ks(z.get(), PS_REF_F12, &ks_z));
  check(ps_law_ks(w_bar.get(), PS_REF_THREE_BETA, &ks_w));
  r.result("ks_z_f12", ks_z);
  r.result("ks_w_bar_three_beta", ks_w);
  r.result("w_hat_mean", ps_law_mean(w_hat.get()));
  r.result("w_hat_median", ps_law_median(w_hat.get()));
  if (o.q >= 5) {
    ps_dominance lp, lq, up;
    check(ps_stochastic_order(o.q, &lp, &lq, &up));
    dominance(r, "lower_printed", lp);
    dominance(r, "lower_proof", lq);
    dominance(r, "upper", up);
  }
  return r;
}

OutputRecord cmd_optimality(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  ps_optimality_report rep;
  check(ps_verify_maximal_optimality(o.q, o.trials, seed, &rep));
  OutputRecord r;
  r.command = "optimality";
  r.param("q", count(o.q));
  r.param("trials", count(o.trials));
  r.param("seed", count(seed));
  r.result("lambda_hat", rep.lambda_hat);
  r.result("max_objective", rep.max_objective);
  r.result("gap", rep.gap);
  r.result("violations", count(rep.violations));
  r.result("near_optimizers", count(rep.near_optimizers));
  r.result("majorization_failures", count(rep.majorization_failures));
  r.result("pass", rep.violations == 0 && rep.majorization_failures == 0);
  return r;
}

OutputRecord cmd_normal_report(const Options& o) {
  const std::vector<std::size_t> qs = o.q_list.empty() ? std::vector<std::size_t>{100, 1000, 10000} : o.q_list;
  OutputRecord r;
  r.command = "normal-report";
  auto& t = r.table("rows", {"q", "t", "t_sqrt_q", "lecd", "lecad", "quantile_exact", "quantile_approx", "quantile_ratio"});
  for (std::size_t q : qs) {
    auto c = family_config(PS_FAMILY_NORMAL, q);
    ps_discrepancy_report rep;
    check(ps_discrepancy(c.get(), &rep, nullptr, 0));
    double ex = std::nan(""), ap = std::nan(""), ra = std::nan("");
    if (q >= 10) check(ps_quantile_tail(q, &ex, &ap, &ra));
    t.add_row({count(q), rep.t_star, rep.t_star * std::sqrt(static_cast<double>(q)), rep.lecd, rep.lecad, ex, ap, ra});
  }
  return r;
}

OutputRecord cmd_bounds(const Options& o) {
  double lower = 0.0, exact = 0.0, upper = 0.0, from_b = 0.0, from_ck = 0.0, lambda_hat = 0.0;
  check(ps_maximal_norm_bounds(o.q, &lower, &exact, &upper));
  check(ps_maximal_norm_sq(o.q, &from_b, &from_ck));
  check(ps_maximal_threshold(o.q, &lambda_hat));
  OutputRecord r;
  r.command = "bounds";
  r.param("q", count(o.q));
  r.result("lower", lower);
  r.result("exact", exact);
  r.result("upper", upper);
  r.result("norm_sq_from_b", from_b);
  r.result("norm_sq_from_ck", from_ck);
  r.result("lambda_hat", lambda_hat);
  r.result("ordered", lower < exact && exact < upper);
  return r;
}

OutputRecord cmd_range(const Options& o) {
  const std::vector<std::size_t> qs = o.q_list.empty() ? std::vector<std::size_t>{1000, 10000, 100000} : o.q_list;
  OutputRecord r;
  r.command = "range";
  auto& t = r.table("rows", {"q", "regular", "normal", "maximal", "sphere", "ordered"});
  for (std::size_t q : qs) {
    ps_range_order ro;
    check(ps_range_order_check(q, &ro));
    t.add_row({count(q), ro.regular, ro.normal, ro.maximal, ro.sphere, ro.ordered != 0});
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical uniformity of permutation orbits"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));

  Options o;
  using Command = OutputRecord (*)(const Options&);
  Command selected = nullptr;
  auto bind = [&selected](CLI::App* sub, Command cmd) { sub->callback([&selected, cmd] { selected = cmd; }); };
  auto family = [&o](CLI::App* s, bool required) {
    auto* opt = s->add_option("--family", o.family, "regular, maximal, normal or simplex");
    if (required) opt->required();
  };
  auto q = [&o](CLI::App* s, bool required) {
    auto* opt = s->add_option("--q", o.q, "Dimension q");
    if (required) opt->required();
  };
  auto seed = [&o](CLI::App* s) { s->add_option("--seed", o.seed, "RNG seed"); };
  auto q_list = [&o](CLI::App* s) { s->add_option("--q-list", o.q_list, "Comma-separated dimensions")->delimiter(','); };
  auto input = [&o](CLI::App* s) { s->add_option("--input", o.input, "Custom configuration file"); };

  auto* config = app.add_subcommand("config", "Regular, maximal or normal configuration");
  family(config, true);
  q(config, true);
  bind(config, cmd_config);

  auto* disc = app.add_subcommand("discrepancy", "Largest empty cap quantities");
  family(disc, false);
  q(disc, false);
  input(disc);
  disc->add_option("--directions", o.directions, "Directions for the search oracle");
  seed(disc);
  bind(disc, cmd_discrepancy);

  auto* sum = app.add_subcommand("summary", "Finite-q LECD, LECAD and marginal distance");
  q_list(sum);
  bind(sum, cmd_summary);

  auto* comp = app.add_subcommand("components", "Nonnegative components of the three configurations");
  q_list(comp);
  bind(comp, cmd_components);

  auto* vol = app.add_subcommand("volume", "Permutohedron to ball volume ratio");
  family(vol, true);
  q(vol, true);
  vol->add_option("--n", o.n, "Monte Carlo samples");
  seed(vol);
  bind(vol, cmd_volume);

  auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
  mc->require_subcommand(1);
  mc->fallthrough();
  auto* ape = mc->add_subcommand("ape", "Coverage of the empty caps");
  family(ape, true);
  q(ape, true);
  ape->add_option("--n", o.n, "Samples")->required();
  seed(ape);
  bind(ape, cmd_mc_ape);
  auto* hyp = mc->add_subcommand("hypotest", "Size and power of the range test");
  q(hyp, true);
  hyp->add_option("--n", o.n, "Samples")->required();
  seed(hyp);
  bind(hyp, cmd_mc_hypotest);
  auto* sub = mc->add_subcommand("subindep", "Subindependence of sphere coordinates");
  sub->add_option("--n-dim", o.n_dim, "Ambient dimension")->required();
  sub->add_option("--trials", o.trials, "Samples")->required();
  sub->add_option("--thresholds", o.thresholds, "Thresholds, n_dim per set")->delimiter(',');
  sub->add_option("--draws", o.draws, "Random threshold sets");
  sub->add_flag("--splits", o.splits, "Also check every split into two blocks");
  seed(sub);
  bind(sub, cmd_mc_subindep);
  auto* sle = mc->add_subcommand("slepian", "Halfspace comparison");
  q(sle, true);
  sle->add_option("--threshold", o.threshold, "Halfspace level (default ||ybar|| sqrt(3/(q+1)))");
  sle->add_option("--trials", o.trials, "Samples")->required();
  seed(sle);
  bind(sle, cmd_mc_slepian);
  auto* nscd = mc->add_subcommand("nscd", "Lower bound on the normalized cap discrepancy");
  family(nscd, false);
  q(nscd, false);
  input(nscd);
  nscd->add_option("--directions", o.directions, "Random cap centers");
  seed(nscd);
  bind(nscd, cmd_mc_nscd);
  auto* cf = mc->add_subcommand("capfrac", "Fraction of the orbit inside a ray cap");
  family(cf, false);
  q(cf, false);
  input(cf);
  cf->add_option("--ray", o.ray, "Ray index k (default: first argmin ray)");
  cf->add_option("--t", o.t_opt, "Cap threshold (default t*)");
  cf->add_option("--mode", o.mode, "exhaustive or sampled");
  cf->add_option("--n", o.n, "Samples in sampled mode");
  seed(cf);
  bind(cf, cmd_mc_capfrac);

  auto* cap = app.add_subcommand("caparea", "Cap area and its bounds");
  q(cap, true);
  cap->add_option("--t", o.t, "Threshold")->required();
  bind(cap, cmd_caparea);

  auto* scal = app.add_subcommand("cap-scaling", "Cap area at lambda/sqrt(q)");
  scal->add_option("--lambda", o.lambda, "lambda >= 0")->required();
  q_list(scal);
  bind(scal, cmd_cap_scaling);

  auto* marg = app.add_subcommand("marginal", "Coordinate law of the orbit");
  family(marg, true);
  q(marg, true);
  bind(marg, cmd_marginal);

  auto* laws = app.add_subcommand("laws", "W and Z laws with the stochastic order check");
  q(laws, true);
  bind(laws, cmd_laws);

  auto* opt = app.add_subcommand("optimality", "Random search against the maximal configuration");
  q(opt, true);
  opt->add_option("--trials", o.trials, "Samples")->required();
  seed(opt);
  bind(opt, cmd_optimality);

  auto* nr = app.add_subcommand("normal-report", "Finite-q normal configuration quantities");
  q_list(nr);
  bind(nr, cmd_normal_report);

  auto* bnd = app.add_subcommand("bounds", "Norm bounds for the maximal weights");
  q(bnd, true);
  bind(bnd, cmd_bounds);

  auto* rng = app.add_subcommand("range", "Largest entries of the three configurations");
  q_list(rng);
  bind(rng, cmd_range);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const OutputRecord r = selected(o);
    const Format fmt = format == "csv" ? Format::csv : format == "human" ? Format::human : Format::json;
    std::cout << permsphere::cli::render(r, fmt);
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
