#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "permsphere/permsphere.h"

TEST_CASE("status strings and version") {
  CHECK(std::strlen(ps_version()) > 0);
  for (int s = PS_OK; s <= PS_ERR_INTERNAL; ++s) CHECK(std::strlen(ps_status_string(static_cast<ps_status>(s))) > 0);
  CHECK(ps_worker_count() >= 1);
}

TEST_CASE("family parsing") {
  ps_family f;
  CHECK(ps_family_parse("maximal", &f) == PS_OK);
  CHECK(f == PS_FAMILY_MAXIMAL);
  CHECK(std::string(ps_family_name(f)) == "maximal");
  CHECK(ps_family_parse("bogus", &f) == PS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ps_last_error()).find("bogus") != std::string::npos);
  CHECK(ps_family_parse(nullptr, &f) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("configuration handles") {
  ps_config* c = nullptr;
  REQUIRE(ps_config_new_family(PS_FAMILY_MAXIMAL, 4, &c) == PS_OK);
  CHECK(ps_config_dim(c) == 4);
  CHECK(ps_config_family(c) == PS_FAMILY_MAXIMAL);
  CHECK(ps_config_norm(c) == doctest::Approx(std::sqrt(5.0)));
  std::vector<double> y(4), small(3), w(4);
  CHECK(ps_config_entries(c, y.data(), y.size()) == PS_OK);
  CHECK(y[3] == doctest::Approx(1.5626).epsilon(1e-4));
  CHECK(ps_config_entries(c, small.data(), small.size()) == PS_ERR_BUFFER_TOO_SMALL);
  double wn = 0;
  CHECK(ps_config_weights(c, w.data(), w.size(), &wn) == PS_OK);
  CHECK(wn == doctest::Approx(0.95997).epsilon(1e-5));
  ps_config_free(c);

  ps_config* r = nullptr;
  REQUIRE(ps_config_new_family(PS_FAMILY_REGULAR, 4, &r) == PS_OK);
  CHECK(ps_config_weights(r, w.data(), w.size(), &wn) == PS_ERR_INVALID_ARGUMENT);
  ps_config_free(r);
  ps_config_free(nullptr);

  CHECK(ps_config_new_family(PS_FAMILY_REGULAR, 1, &c) == PS_ERR_INVALID_DIMENSION);
  CHECK(ps_config_new_family(PS_FAMILY_CUSTOM, 5, &c) == PS_ERR_INVALID_ARGUMENT);
  CHECK(ps_config_new_family(PS_FAMILY_REGULAR, 5, nullptr) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("custom configurations are sorted and centered with flags") {
  const double x[] = {3, 1, 2, 10};
  ps_config* c = nullptr;
  int adjusted = 0;
  REQUIRE(ps_config_new_custom(x, 4, &c, &adjusted) == PS_OK);
  CHECK(adjusted == (PS_ADJUSTED_SORTED | PS_ADJUSTED_CENTERED));
  std::vector<double> y(4);
  ps_config_entries(c, y.data(), 4);
  CHECK(y[0] == -3.0);
  CHECK(y[3] == 6.0);
  CHECK(ps_config_family(c) == PS_FAMILY_CUSTOM);
  ps_config_free(c);
  const double centered[] = {-1, 0, 1};
  REQUIRE(ps_config_new_custom(centered, 3, &c, &adjusted) == PS_OK);
  CHECK(adjusted == 0);
  ps_config_free(c);
  const double flat[] = {2, 2, 2};
  CHECK(ps_config_new_custom(flat, 3, &c, nullptr) == PS_ERR_ZERO_PROJECTION);
  const double bad[] = {0, NAN};
  CHECK(ps_config_new_custom(bad, 2, &c, nullptr) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("discrepancy through the C API") {
  ps_config* c = nullptr;
  REQUIRE(ps_config_new_family(PS_FAMILY_SIMPLEX, 10, &c) == PS_OK);
  ps_discrepancy_report rep;
  size_t argmin[10];
  REQUIRE(ps_discrepancy(c, &rep, argmin, 10) == PS_OK);
  CHECK(rep.t_star == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(rep.argmin_count >= 1);
  CHECK(ps_discrepancy(c, &rep, nullptr, 0) == PS_OK);
  size_t tiny[1];
  ps_config* m = nullptr;
  REQUIRE(ps_config_new_family(PS_FAMILY_MAXIMAL, 10, &m) == PS_OK);
  CHECK(ps_discrepancy(m, &rep, tiny, 1) == PS_ERR_BUFFER_TOO_SMALL);
  ps_certificate cert;
  std::vector<double> center(10), th(9);
  CHECK(ps_empty_cap_certificate(m, &cert, center.data(), center.size(), th.data(), th.size()) == PS_OK);
  CHECK(cert.verified == 1);
  CHECK(cert.ray_count == 9);
  double oracle_t = 0;
  CHECK(ps_orbit_threshold_oracle(c, 1000, 1, &oracle_t) == PS_OK);
  CHECK(oracle_t >= rep.t_star - 1e-12);
  ps_estimate e;
  CHECK(ps_cap_fraction(m, center.data(), 10, cert.t, PS_CAP_EXHAUSTIVE, 0, 0, &e) == PS_ERR_TOO_LARGE);
  CHECK(ps_cap_fraction(m, center.data(), 10, cert.t, PS_CAP_SAMPLED, 10000, 1, &e) == PS_OK);
  CHECK(e.value == 0.0);
  CHECK(ps_cap_fraction(m, center.data(), 9, cert.t, PS_CAP_SAMPLED, 10, 1, &e) == PS_ERR_INVALID_DIMENSION);
  double md = 0;
  CHECK(ps_marginal_distance(m, &md) == PS_OK);
  ps_config_free(c);
  ps_config_free(m);
}

TEST_CASE("special functions through the C API") {
  double v = 0;
  CHECK(ps_cap_area(4, 0.2, &v) == PS_OK);
  CHECK(v == doctest::Approx(0.4));
  CHECK(ps_cap_area(2, 0.2, &v) == PS_ERR_DOMAIN);
  CHECK(ps_cap_area(4, 1.5, &v) == PS_ERR_DOMAIN);
  CHECK(ps_normal_quantile(0.0, &v) == PS_ERR_DOMAIN);
  CHECK(ps_normal_cdf(0.0) == 0.5);
  CHECK(ps_incomplete_beta(1, 1, 0.25, &v) == PS_OK);
  CHECK(v == doctest::Approx(0.25));
  const size_t qs[] = {10, 100};
  double t[2], b[2];
  CHECK(ps_cap_scaling(1.0, qs, 2, t, b) == PS_OK);
  CHECK(t[1] == doctest::Approx(0.1));
}

TEST_CASE("laws through the C API") {
  const double atoms[] = {2, 0, 1};
  ps_law* law = nullptr;
  REQUIRE(ps_law_from_atoms(atoms, 3, &law) == PS_OK);
  CHECK(ps_law_size(law) == 3);
  CHECK(ps_law_mean(law) == 1.0);
  CHECK(ps_law_median(law) == 1.0);
  CHECK(ps_law_cdf(law, 1.0) == doctest::Approx(2.0 / 3));
  double sorted[3];
  CHECK(ps_law_atoms(law, sorted, 3) == PS_OK);
  CHECK(sorted[0] == 0.0);
  ps_law_free(law);
  CHECK(ps_law_from_atoms(atoms, 0, &law) == PS_ERR_INVALID_ARGUMENT);
  REQUIRE(ps_law_z(10000, &law) == PS_OK);
  double ks = 1;
  CHECK(ps_law_ks(law, PS_REF_F12, &ks) == PS_OK);
  CHECK(ks <= 0.02);
  ps_law_free(law);
  ps_dominance lp, lq, up;
  CHECK(ps_stochastic_order(50, &lp, &lq, &up) == PS_OK);
  CHECK(ps_stochastic_order(3, &lp, &lq, &up) != PS_OK);
}

TEST_CASE("permutohedron and Monte Carlo through the C API") {
  double exact = 0, asym = 0, ratio = 0;
  CHECK(ps_regular_ratio(4, &exact, &asym, &ratio) == PS_OK);
  CHECK(exact == doctest::Approx(0.68329).epsilon(1e-4));
  ps_volume_report vr;
  CHECK(ps_volume_report_compute(PS_FAMILY_MAXIMAL, 4, 0, 0, &vr) == PS_ERR_INVALID_ARGUMENT);
  CHECK(ps_volume_report_compute(PS_FAMILY_REGULAR, 4, 0, 0, &vr) == PS_OK);
  CHECK(vr.closed_form_used == 1);
  std::vector<double> pts(5 * 4);
  CHECK(ps_sphere_sample(4, 1.0, 5, 1, pts.data(), pts.size()) == PS_OK);
  CHECK(ps_sphere_sample(4, 1.0, 5, 1, pts.data(), pts.size() - 1) == PS_ERR_BUFFER_TOO_SMALL);
  ps_hypothesis_report h;
  CHECK(ps_hypothesis_test(20, 10000, 1, &h) == PS_OK);
  CHECK(h.power == 1.0);
  const double th[] = {0.2, 0.4, 0.6};
  ps_subindep_row row;
  int all = 0;
  CHECK(ps_subindependence(3, th, 1, 20000, 1, 0, &row, nullptr, &all) == PS_OK);
  CHECK(ps_subindependence(3, th, 1, 20000, 1, 1, &row, nullptr, &all) == PS_ERR_INVALID_ARGUMENT);
  ps_slepian_report sr;
  CHECK(ps_slepian(6, 1.0, 10000, 1, &sr) == PS_OK);
  ps_coverage_report cr;
  CHECK(ps_ape_coverage(PS_FAMILY_MAXIMAL, 10, 10, 1, &cr) != PS_OK);
}

TEST_CASE("errors are reported per thread") {
  ps_config* c = nullptr;
  CHECK(ps_config_new_family(PS_FAMILY_REGULAR, 0, &c) == PS_ERR_INVALID_DIMENSION);
  const std::string first = ps_last_error();
  CHECK_FALSE(first.empty());
}
