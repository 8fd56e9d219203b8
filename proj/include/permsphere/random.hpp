#pragma once

// Seeded sampling machinery. The generator is xoshiro256** seeded through
// SplitMix64; the stream for chunk c of a computation with seed s is derived
// from (s, c) alone, so results do not depend on how many workers run.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace permsphere {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream for chunk `chunk` of a computation seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t chunk);

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open0() noexcept { return 1.0 - uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Standard normal (Marsaglia polar method, spare value cached).
  double normal() noexcept;

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Point estimate with standard error, sample count and seed.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;

  /// hits/n with binomial standard error sqrt(p(1-p)/n).
  static McEstimate proportion(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);
};

/// Samples per chunk; chunk boundaries depend on the sample index only.
inline constexpr std::uint64_t kChunkSize = 4096;

/// Worker threads: PERMSPHERE_THREADS if set and positive, otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Fills `out` (n x q) with i.i.d. uniform points on the sphere of radius r in
/// the zero-sum hyperplane of R^q: Gaussian vector, centered, rescaled.
void sample_sphere_point(Rng& rng, std::span<double> out, double radius);
/// Uniform direction on the unit sphere of R^n (no centering).
void sample_unit_sphere_full(Rng& rng, std::span<double> out);
/// Uniform in the (q-1)-ball of radius r inside the zero-sum hyperplane.
void sample_ball_point(Rng& rng, std::span<double> out, double radius);

/// Runs `fn(chunk_index, begin, end, rng)` for every chunk of [0, n) and
/// returns the per-chunk results in chunk order.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::uint64_t n, std::uint64_t seed, Fn&& fn) {
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Result> results(chunks);
  if (chunks == 0) return results;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), chunks));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        const std::uint64_t begin = c * kChunkSize;
        const std::uint64_t end = std::min(n, begin + kChunkSize);
        Rng rng = Rng::stream(seed, c);
        results[c] = fn(c, begin, end, rng);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace permsphere
