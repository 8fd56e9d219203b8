#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "permsphere/linalg.hpp"
#include "permsphere/random.hpp"

using namespace permsphere;

namespace {

std::vector<double> chunk_sums(std::uint64_t n, std::uint64_t seed) {
  return run_chunks<double>(n, seed, [](std::uint64_t, std::uint64_t b, std::uint64_t e, Rng& rng) {
    double s = 0;
    for (std::uint64_t i = b; i < e; ++i) s += rng.uniform();
    return s;
  });
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
  Rng a = Rng::stream(5, 3), b = Rng::stream(5, 3), c = Rng::stream(5, 4), d = Rng::stream(6, 3);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
}

TEST_CASE("uniform, below and normal have the right first moments") {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  std::uint64_t counts[5] = {};
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK_FALSE(u >= 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    ++counts[rng.below(5)];
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::fabs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
  for (auto c : counts) CHECK(std::fabs(double(c) / n - 0.2) < 0.005);
}

TEST_CASE("run_chunks results do not depend on the worker count") {
  const std::uint64_t n = 10 * kChunkSize + 123;
  setenv("PERMSPHERE_THREADS", "1", 1);
  const auto one = chunk_sums(n, 77);
  setenv("PERMSPHERE_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  const auto four = chunk_sums(n, 77);
  unsetenv("PERMSPHERE_THREADS");
  CHECK(one == four);
  CHECK(one.size() == 11);
}

TEST_CASE("run_chunks propagates exceptions") {
  setenv("PERMSPHERE_THREADS", "3", 1);
  CHECK_THROWS(run_chunks<int>(5 * kChunkSize, 1, [](std::uint64_t c, std::uint64_t, std::uint64_t, Rng&) -> int {
    if (c == 2) throw std::runtime_error("boom");
    return 0;
  }));
  unsetenv("PERMSPHERE_THREADS");
}

TEST_CASE("McEstimate proportion") {
  const auto e = McEstimate::proportion(25, 100, 9);
  CHECK(e.value == 0.25);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  CHECK(e.seed == 9);
}

TEST_CASE("sphere and ball points lie where they should") {
  Rng rng(3);
  std::vector<double> v(7);
  for (int i = 0; i < 1000; ++i) {
    sample_sphere_point(rng, v, 2.5);
    CHECK(norm2(v) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(std::fabs(compensated_sum(v)) < 1e-12);
    sample_ball_point(rng, v, 2.5);
    CHECK(norm2(v) <= 2.5 + 1e-12);
    CHECK(std::fabs(compensated_sum(v)) < 1e-12);
    sample_unit_sphere_full(rng, v);
    CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ball radius law: P[|v| <= r/2] = 2^-(q-1)") {
  Rng rng(4);
  const std::size_t q = 4;
  std::vector<double> v(q);
  const int n = 200000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    sample_ball_point(rng, v, 1.0);
    inside += norm2(v) <= 0.5;
  }
  const double p = 1.0 / 8, se = std::sqrt(p * (1 - p) / n);
  CHECK(std::fabs(double(inside) / n - p) < 4 * se);
}
