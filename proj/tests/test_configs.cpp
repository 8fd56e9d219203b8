#include <doctest.h>

#include <cmath>
#include <map>

#include "generators.hpp"
#include "oracles.hpp"
#include "permsphere/configs.hpp"
#include "permsphere/error.hpp"

using namespace permsphere;

namespace {

// Nonnegative entries as printed in the reference table, q = 3..6.
const std::map<std::pair<Family, std::size_t>, std::vector<double>> kPrinted = {
    {{Family::regular, 3}, {0, 1}},         {{Family::maximal, 3}, {0, 1}},
    {{Family::normal, 3}, {0, 1}},          {{Family::regular, 4}, {.5, 1.5}},
    {{Family::maximal, 4}, {.242, 1.56}},   {{Family::normal, 4}, {.459, 1.51}},
    {{Family::regular, 5}, {0, 1, 2}},      {{Family::maximal, 5}, {0, .490, 2.18}},
    {{Family::normal, 5}, {0, .909, 2.04}}, {{Family::regular, 6}, {.5, 1.5, 2.5}},
    {{Family::maximal, 6}, {.219, .756, 2.85}}, {{Family::normal, 6}, {.436, 1.37, 2.59}},
};

// The printed normal q = 6 top entry (2.59) is a double rounding of 2.58498.
bool printed_off_band(Family f, std::size_t q, std::size_t j) { return f == Family::normal && q == 6 && j == 2; }

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : {Family::regular, Family::maximal, Family::normal, Family::simplex, Family::custom}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("Regular").has_value());
  CHECK_FALSE(parse_family("").has_value());
}

TEST_CASE("small configurations match the printed table within 0.005") {
  for (const auto& [key, printed] : kPrinted) {
    const auto y = family_configuration(key.first, key.second);
    const std::size_t q = key.second;
    CAPTURE(to_string(key.first));
    CAPTURE(q);
    for (std::size_t j = 0; j < printed.size(); ++j) {
      const double v = y[q - printed.size() + j];
      if (!printed_off_band(key.first, q, j)) CHECK(std::fabs(v - printed[j]) <= 0.005);
      CHECK(std::fabs(y[printed.size() - 1 - j] + v) < 1e-12);
    }
  }
}

TEST_CASE("normal q = 4 second-smallest positive entry is 0.4558, not the printed 0.459") {
  const auto y = normal(4).y;
  CHECK(y[2] == doctest::Approx(0.45575726).epsilon(1e-7));
}

TEST_CASE("normal q = 6 top entry is 2.58498, outside the band around the printed 2.59") {
  double w[6], n2 = 0;
  for (int k = 1; k <= 6; ++k) {
    w[k - 1] = oracle::normal_quantile_bisect(k / 7.0);
    n2 += w[k - 1] * w[k - 1];
  }
  const double expect = w[5] * std::sqrt(17.5 / n2);
  const auto y = normal(6).y;
  CHECK(y[5] == doctest::Approx(expect).epsilon(1e-10));
  CHECK(y[5] == doctest::Approx(2.584977).epsilon(1e-6));
  CHECK(std::fabs(y[5] - 2.59) > 0.005);
}

TEST_CASE("regular configuration") {
  const auto y = regular(5);
  const double expect[] = {-2, -1, 0, 1, 2};
  for (std::size_t i = 0; i < 5; ++i) CHECK(y[i] == expect[i]);
  CHECK(y.norm() == doctest::Approx(regular_norm(5)));
  CHECK(regular_norm(5) == doctest::Approx(std::sqrt(10.0)));
  CHECK_THROWS_AS(regular(1), Error);
}

TEST_CASE("maximal weights from the definition of b") {
  for (std::size_t q : {2u, 4u, 9u, 300u}) {
    const auto w = maximal_weights(q);
    REQUIRE(w.b.size() == q);
    double prev = 0, ss = 0;
    for (std::size_t k = 1; k <= q; ++k) {
      const double b = std::sqrt(3.0 * k * (q - k) / (q * (q + 1.0)));
      CHECK(w.b[k - 1] == doctest::Approx(b).epsilon(1e-14));
      CHECK(w.a_hat[k - 1] == doctest::Approx(prev - b).epsilon(1e-12).scale(1e-3));
      prev = b;
      ss += w.a_hat[k - 1] * w.a_hat[k - 1];
    }
    CHECK(w.norm_a == doctest::Approx(std::sqrt(ss)).epsilon(1e-13));
  }
  CHECK(maximal_weights(4).norm_a == doctest::Approx(0.95997).epsilon(1e-5));
  CHECK(maximal_weights(100).norm_a == doctest::Approx(0.31273).epsilon(1e-5));
}

TEST_CASE("property: family configurations are sorted, zero-sum, antisymmetric, at the regular norm") {
  gen::Source src(31);
  for (int c = 0; c < 60; ++c) {
    const std::size_t q = src.size(3, 3000);
    for (Family f : {Family::regular, Family::maximal, Family::normal, Family::simplex}) {
      const auto y = family_configuration(f, q);
      CHECK(y.dim() == q);
      CHECK(y.norm() == doctest::Approx(regular_norm(q)).epsilon(1e-12));
      double s = 0;
      for (std::size_t i = 0; i < q; ++i) {
        s += y[i];
        if (i) CHECK(y[i - 1] <= y[i]);
        if (f != Family::simplex) CHECK(std::fabs(y[i] + y[q - 1 - i]) <= 1e-12 * y.norm());
      }
      CHECK(std::fabs(s) <= 1e-10 * y.norm());
    }
  }
  CHECK_THROWS_AS(family_configuration(Family::custom, 5), Error);
}

TEST_CASE("normal weights are Gaussian quantiles") {
  const auto w = normal_weights(9);
  for (std::size_t k = 1; k <= 9; ++k) CHECK(w.a_breve[k - 1] == doctest::Approx(oracle::normal_quantile_bisect(k / 10.0)).epsilon(1e-10).scale(1));
  CHECK(w.a_breve[4] == 0.0);
}

TEST_CASE("c_k closed forms agree, and both norm formulas agree") {
  for (std::size_t q : {4u, 10u, 1000u}) {
    for (std::size_t k = 1; k <= q; ++k) CHECK(std::fabs(ck(q, k) - ck_expanded(q, k)) <= 1e-14 * double(q) * double(q));
  }
  for (std::size_t q = 4; q <= 10000; q = q * 3 + 1) {
    const double from_b = maximal_weights(q).norm_a;
    CHECK(maximal_norm_sq_from_ck(q) == doctest::Approx(from_b * from_b).epsilon(1e-10));
  }
}

TEST_CASE("norm bounds bracket the exact norm") {
  for (std::size_t q = 4; q <= 10000; q += (q < 100 ? 1 : 97)) {
    const auto b = maximal_norm_bounds(q);
    CAPTURE(q);
    CHECK(b.lower < b.exact);
    CHECK(b.exact < b.upper);
    CHECK(b.exact == doctest::Approx(maximal_weights(q).norm_a));
  }
}

TEST_CASE("maximal threshold equals the orbit threshold of the maximal configuration") {
  for (std::size_t q : {4u, 10u, 100u}) {
    const auto y = maximal(q).y;
    const std::vector<double> v(y.entries().begin(), y.entries().end());
    CHECK(maximal_threshold(q) == doctest::Approx(oracle::brute_threshold(v)).epsilon(1e-12));
  }
}

TEST_CASE("ray objective ties at every ray for the maximal configuration") {
  const std::size_t q = 12;
  const auto y = maximal(q).y;
  const std::vector<double> v(y.entries().begin(), y.entries().end());
  const double lam = maximal_threshold(q);
  double yy = 0;
  for (double x : v) yy += x * x;
  for (std::size_t k = 1; k < q; ++k) {
    const auto z = oracle::explicit_ray(q, k);
    double d = 0;
    for (std::size_t i = 0; i < q; ++i) d += v[i] * z[i];
    CHECK(std::fabs(d / std::sqrt(yy) - lam) <= 1e-12);
  }
  CHECK(ray_objective(v) == doctest::Approx(lam).epsilon(1e-13));
}

TEST_CASE("property: no random ordered direction beats the maximal threshold") {
  gen::Source src(32);
  for (int c = 0; c < gen::kCases; ++c) {
    const std::size_t q = src.size(3, 40);
    auto w = src.zero_sum_unit(q);
    std::sort(w.begin(), w.end());
    CHECK(ray_objective(w) <= maximal_threshold(q) + 1e-12);
  }
}

TEST_CASE("optimality search report") {
  const auto r = verify_maximal_optimality(10, 20000, 5);
  CHECK(r.violations == 0);
  CHECK(r.majorization_failures == 0);
  CHECK(r.max_objective <= r.lambda_hat + 1e-12);
  CHECK(r.gap == doctest::Approx(r.lambda_hat - r.max_objective));
  const auto again = verify_maximal_optimality(10, 20000, 5);
  CHECK(again.max_objective == r.max_objective);
}

TEST_CASE("quantile tail diagnostic") {
  const auto d = quantile_tail_diagnostic(1000);
  CHECK(d.exact == doctest::Approx(oracle::normal_quantile_bisect(1000.0 / 1001)).epsilon(1e-9));
  CHECK(d.approx == doctest::Approx(std::sqrt(2 * std::log(1001.0))));
  CHECK(d.ratio > 1.0);
  CHECK_THROWS_AS(quantile_tail_diagnostic(5), Error);
}
