#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace vidshift {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Every distribution is implemented here rather than taken from
/// <random>, because library distributions differ between vendors:
///   uniform()      53 high bits of one draw, scaled to [0,1)
///   normal()       Box-Muller; both variates of a pair are used in order
///   poisson(mean)  Knuth multiplication for mean < 10, PTRS (Hormann 1993) above
///   uniform_int    rejection sampling on the raw 64-bit draw
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  std::uint64_t poisson(double mean);

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Fisher-Yates, iterating from the back.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i - 1)));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vidshift
