#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace gjs {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Counter-based generator: every variate is a pure function of
/// (seed, stream, index), so parallel consumers are reproducible
/// regardless of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t index) const {
    const std::uint64_t h = detail::splitmix64(
        detail::splitmix64(detail::splitmix64(seed_) ^ stream) ^ index);
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on two counter-indexed uniforms.
  double normal(std::uint64_t stream, std::uint64_t index) const {
    const double u1 = uniform(stream, 2 * index);
    const double u2 = uniform(stream, 2 * index + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t seed_;
};

/// Runs f(shard_index, begin, end) over fixed-size shards of [0, total).
/// Shard boundaries do not depend on the thread count, so accumulating
/// per-shard results and combining them in shard order gives bit-identical
/// totals for any number of threads.
template <typename F>
void for_each_shard(std::int64_t total, std::int64_t shard_size, int threads,
                    F&& f) {
  if (total <= 0) return;
  if (shard_size <= 0) shard_size = 1;
  const std::int64_t shards = (total + shard_size - 1) / shard_size;
  if (threads <= 1 || shards == 1) {
    for (std::int64_t s = 0; s < shards; ++s) {
      f(s, s * shard_size, std::min(total, (s + 1) * shard_size));
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t s = next.fetch_add(1);
      if (s >= shards) return;
      f(s, s * shard_size, std::min(total, (s + 1) * shard_size));
    }
  };
  const int n = std::min<std::int64_t>(threads, shards);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace gjs
