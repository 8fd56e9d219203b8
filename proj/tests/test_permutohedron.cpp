#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"
#include "permsphere/configs.hpp"
#include "permsphere/error.hpp"
#include "permsphere/linalg.hpp"
#include "permsphere/permutohedron.hpp"

using namespace permsphere;

TEST_CASE("hexagon area from the projected orbit") {
  const auto y = regular(3);
  const auto h2 = helmert_column(3, 2), h3 = helmert_column(3, 3);
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : oracle::permutations({y.entries().begin(), y.entries().end()})) {
    double a = 0, b = 0;
    for (std::size_t i = 0; i < 3; ++i) a += p[i] * h2[i], b += p[i] * h3[i];
    pts.emplace_back(a, b);
  }
  const double area = oracle::convex_polygon_area(pts);
  CHECK(area == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::fabs(regular_volume(3) - area) <= 1e-9);
}

TEST_CASE("regular volume and its logarithm") {
  CHECK(regular_volume(4) == doctest::Approx(32.0));
  CHECK(log_regular_volume(200) == doctest::Approx(198.5 * std::log(200.0)));
  CHECK(std::isinf(regular_volume(400)));
}

TEST_CASE("ball volume") {
  CHECK(ball_volume(3, 2.0) == doctest::Approx(4 * std::numbers::pi));
  CHECK(ball_volume(4, 1.0) == doctest::Approx(4.0 / 3 * std::numbers::pi));
  CHECK(log_ball_volume(1001, 3.0) == doctest::Approx(500 * std::log(std::numbers::pi) + 1000 * std::log(3.0) - std::lgamma(501.0)));
}

TEST_CASE("regular ratio and asymptote") {
  CHECK(std::fabs(regular_ratio(4).exact - 0.6833) <= 1e-4);
  CHECK(std::fabs(regular_ratio(50).ratio - 1.0) <= 0.02);
  CHECK(std::fabs(regular_ratio(20).ratio - 1.0) <= 0.05);
  const auto c = cube_ratio(4);
  CHECK(c.exact == doctest::Approx(std::pow(5.0, 1.5) / 32));
  CHECK(c.asymptote == doctest::Approx(2.0 / std::pow(3.0, 1.5)));
}

TEST_CASE("property: convex combinations of orbit points lie in the hull") {
  gen::Source src(61);
  for (int c = 0; c < gen::kCases; ++c) {
    const std::size_t q = src.size(3, 6);
    const auto v = src.centered(q);
    const CenteredConfiguration y(v);
    const auto perms = oracle::permutations(v);
    std::vector<double> p(q, 0.0);
    double total = 0;
    std::vector<double> wts(perms.size());
    for (auto& w : wts) total += (w = src.real(0, 1) * (src.coin() ? 1 : 0) + 1e-3);
    for (std::size_t j = 0; j < perms.size(); ++j) {
      for (std::size_t i = 0; i < q; ++i) p[i] += wts[j] / total * perms[j][i];
    }
    // Remove rounding drift so tiny combinations still satisfy the zero-sum precondition.
    const double drift = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(q);
    for (auto& x : p) x -= drift;
    // Uniform weights over the orbit land on the centre up to rounding noise.
    if (std::sqrt(std::inner_product(p.begin(), p.end(), p.begin(), 0.0)) < 1e-9 * y.norm()) std::fill(p.begin(), p.end(), 0.0);
    CHECK(hull_contains(y, p));
    // A vertex pushed outward leaves the hull.
    auto out = perms[src.size(0, perms.size() - 1)];
    for (auto& x : out) x *= 1.01;
    CHECK_FALSE(hull_contains(y, out));
  }
}

TEST_CASE("hull membership rejects non-zero-sum input") {
  const auto y = regular(4);
  CHECK_THROWS_AS(hull_contains(y, std::vector<double>{1, 0, 0, 0}), Error);
  CHECK(hull_contains(y, std::vector<double>{0, 0, 0, 0}));
}

TEST_CASE("Monte Carlo volume ratios") {
  const auto reg = mc_volume_ratio(Family::regular, 4, 200000, 3);
  CHECK(std::fabs(reg.value - regular_ratio(4).exact) <= 4 * reg.std_error);
  const auto hex = mc_volume_ratio(Family::regular, 3, 200000, 4);
  // Hexagon inscribed in a circle of radius sqrt(2): area ratio 3 sqrt3 / (2 pi).
  CHECK(std::fabs(hex.value - 3 * std::sqrt(3.0) / (2 * std::numbers::pi)) <= 4 * hex.std_error);
  CHECK_THROWS_AS(mc_volume_ratio(Family::regular, 31, 10, 1), Error);
}

TEST_CASE("volume report") {
  const auto r = volume_report(Family::regular, 4, 0, 0);
  CHECK(r.closed_form_used);
  CHECK(r.hull_volume == 32.0);
  CHECK(r.mc.n == 0);
  CHECK_THROWS_AS(volume_report(Family::maximal, 4, 0, 0), Error);
  const auto m = volume_report(Family::maximal, 4, 100000, 2);
  CHECK_FALSE(m.closed_form_used);
  CHECK(m.ratio == m.mc.value);
  CHECK(m.hull_volume == doctest::Approx(m.ratio * m.ball_volume));
}
