#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sminlab {

/// Identifies one independent random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Philox4x32-10 counter-based generator.
///
/// The key is the master seed and the upper half of the 128-bit counter is
/// the trial index, so the stream for (master_seed, trial_index) is a pure
/// function of both and streams for different trials never overlap.
/// Satisfies UniformRandomBitGenerator.
class Philox {
 public:
  using result_type = std::uint32_t;

  explicit Philox(SeedSpec seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 1]; safe to take a logarithm of.
  double uniform01_open_below() { return 1.0 - uniform01(); }
  /// Standard normal by the Box-Muller transform (pairs are cached).
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 4> block_{};
  int next_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace sminlab
