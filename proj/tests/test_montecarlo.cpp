#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "oracles.hpp"
#include "permsphere/configs.hpp"
#include "permsphere/error.hpp"
#include "permsphere/linalg.hpp"
#include "permsphere/montecarlo.hpp"
#include "permsphere/specfun.hpp"

using namespace permsphere;

TEST_CASE("sphere and ball samples are reproducible and well placed") {
  const auto a = sphere_sample(6, 2.0, 1000, 5);
  const auto b = sphere_sample(6, 2.0, 1000, 5);
  CHECK(a.rows() == 1000);
  CHECK(a.cols() == 6);
  CHECK(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
  for (std::size_t i = 0; i < a.rows(); ++i) CHECK(norm2(a.row(i)) == doctest::Approx(2.0));
  const auto c = ball_sample(6, 2.0, 1000, 5);
  for (std::size_t i = 0; i < c.rows(); ++i) CHECK(norm2(c.row(i)) <= 2.0 + 1e-12);
  CHECK_THROWS_AS(sphere_sample(2, 1.0, 10, 1), Error);
}

TEST_CASE("sphere sample coordinate survival matches the cap area") {
  const std::size_t q = 8, n = 100000;
  const auto s = sphere_sample(q, 1.0, n, 7);
  const double edge = std::sqrt((q - 1.0) / q);
  for (double c : {-0.3, 0.0, 0.2, 0.5}) {
    std::size_t above = 0;
    for (std::size_t i = 0; i < n; ++i) above += s(i, 0) > c;
    const double p = oracle::cap_area_quadrature(q, c / edge);
    CHECK(std::fabs(double(above) / n - p) <= 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST_CASE("coverage spec thresholds") {
  const auto r = coverage_spec(Family::regular, 30);
  CHECK(r.two_sided);
  CHECK(r.caps == 60);
  CHECK(r.coordinate_threshold == doctest::Approx(14.5));
  const auto n = coverage_spec(Family::normal, 30);
  CHECK_FALSE(n.two_sided);
  CHECK(n.caps == 30);
  CHECK(n.coordinate_threshold == doctest::Approx(normal(30).y[29]));
  CHECK_THROWS_AS(coverage_spec(Family::maximal, 30), Error);
}

TEST_CASE("empty caps of the regular orbit cover almost everything") {
  const auto r = ape_coverage(coverage_spec(Family::regular, 30), 100000, 7);
  CHECK(r.empty_verified);
  CHECK(r.complement <= std::pow(0.96, 29));
  CHECK(r.complement == doctest::Approx(1 - r.coverage.value));
  CHECK(r.max_orbit_inner <= r.cap_level * (1 + 1e-12));
}

TEST_CASE("the range test rejects every orbit point and rarely a sphere point") {
  const auto h = hypothesis_test(20, 100000, 1);
  CHECK(h.power == 1.0);
  CHECK(h.critical_value == 9.5);
  CHECK(h.size.value <= std::pow(0.96, 19));
  CHECK(h.size.n == 100000);
}

TEST_CASE("threshold draws are reproducible and in (0, 1]") {
  const auto a = draw_thresholds(4, 10, 3), b = draw_thresholds(4, 10, 3);
  CHECK(a == b);
  for (const auto& v : a) {
    CHECK(v.size() == 4);
    for (double t : v) {
      CHECK(t > 0.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("subindependence on the circle against exact arcs") {
  const std::vector<Vector> sets{{0.3, 0.2}, {0.9, 0.1}, {0.5, 0.5}, {0.05, 0.7}};
  const auto rep = subindependence_check(2, sets, 400000, 11);
  REQUIRE(rep.rows.size() == sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& row = rep.rows[i];
    const double joint = oracle::circle_joint(sets[i][0], sets[i][1]);
    const double prod = oracle::circle_marginal(sets[i][0]) * oracle::circle_marginal(sets[i][1]);
    CHECK(std::fabs(row.joint.value - joint) <= 4 * row.joint.std_error);
    CHECK(row.exact_product == doctest::Approx(prod).epsilon(1e-12));
    CHECK(joint <= prod + 1e-15);
  }
}

TEST_CASE("property: for positive thresholds the exact circle joint never exceeds the marginal product") {
  gen::Source src(71);
  for (int c = 0; c < gen::kCases; ++c) {
    const double a = src.real(1e-9, 1), b = src.real(1e-9, 1);
    CHECK(oracle::circle_joint(a, b) <= oracle::circle_marginal(a) * oracle::circle_marginal(b) + 1e-15);
  }
}

TEST_CASE("subindependence rejects nonpositive thresholds") {
  CHECK_THROWS_AS(subindependence_check(2, std::vector<Vector>{{0.3, -0.2}}, 100, 1), Error);
  CHECK_THROWS_AS(subindependence_check(2, std::vector<Vector>{{0.0, 0.5}}, 100, 1), Error);
}

TEST_CASE("subindependence rows with splits") {
  const auto sets = draw_thresholds(5, 5, 2);
  const auto rep = subindependence_check(5, sets, 200000, 3, true);
  CHECK(rep.all_pass);
  for (const auto& row : rep.rows) {
    CHECK(row.pass);
    CHECK(row.splits.size() == 4);
    double exact = 1;
    for (double t : row.thresholds) exact *= 1 - cap_area(6, t);
    CHECK(row.exact_product == doctest::Approx(exact));
  }
}

TEST_CASE("Slepian halfspace comparison") {
  const std::size_t q = 10;
  const double thr = regular_norm(q) * std::sqrt(3.0 / (q + 1));
  const auto r = slepian_halfspace_check(q, thr, 200000, 3);
  CHECK(r.slepian_pass);
  CHECK(r.product_pass);
  CHECK(r.analytic_product == doctest::Approx(std::pow(1 - cap_area(q, thr / regular_norm(q)), q - 1)));
  CHECK(r.halfspaces_f.value <= r.halfspaces_gamma.value + 3 * std::hypot(r.halfspaces_f.std_error, r.halfspaces_gamma.std_error));
}
