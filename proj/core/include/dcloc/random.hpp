#pragma once

#include <cstdint>
#include <string_view>

namespace dcloc {

/// Counter-based generator: the n-th draw of stream s under seed k is
/// splitmix64(key(k, s) + n * golden). Streams split without shared state, so
/// start i of a multi-start run draws the same numbers in any execution order.
class CounterRng {
 public:
  static constexpr std::string_view kFamily = "splitmix64-counter";

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  CounterRng split(std::uint64_t stream) const { return CounterRng(seed_, stream); }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal deviate (Box-Muller, one value per call).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dcloc
