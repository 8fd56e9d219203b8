#include "permsphere/random.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "permsphere/linalg.hpp"

namespace permsphere {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& s : s_) s = splitmix64(state);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t state = seed ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t a = splitmix64(state);
  std::uint64_t mix = chunk + 0x3c6ef372fe94f82bULL;
  const std::uint64_t b = splitmix64(mix);
  return Rng(a ^ rotl(b, 17));
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

McEstimate McEstimate::proportion(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  McEstimate e;
  e.n = n;
  e.seed = seed;
  if (n == 0) return e;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

unsigned worker_count() {
  if (const char* env = std::getenv("PERMSPHERE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void sample_sphere_point(Rng& rng, std::span<double> out, double radius) {
  double mean = 0.0;
  for (double& v : out) {
    v = rng.normal();
    mean += v;
  }
  mean /= static_cast<double>(out.size());
  for (double& v : out) v -= mean;
  const double n = norm2(out);
  const double scale = radius / n;
  for (double& v : out) v *= scale;
}

void sample_unit_sphere_full(Rng& rng, std::span<double> out) {
  for (double& v : out) v = rng.normal();
  const double scale = 1.0 / norm2(out);
  for (double& v : out) v *= scale;
}

void sample_ball_point(Rng& rng, std::span<double> out, double radius) {
  sample_sphere_point(rng, out, 1.0);
  const double dim = static_cast<double>(out.size() - 1);
  const double r = radius * std::pow(rng.uniform_open0(), 1.0 / dim);
  for (double& v : out) v *= r;
}

}  // namespace permsphere
