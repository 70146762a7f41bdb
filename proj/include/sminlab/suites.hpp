#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sminlab {

/// Randomized property suites. Each instance i draws from the stream
/// (seed, i), so a failing instance can be replayed on its own.
struct SuiteResult {
  std::string suite;
  std::size_t instances = 0;   // generated
  std::size_t qualifying = 0;  // instances whose hypotheses held
  std::size_t checks = 0;      // individual assertions evaluated
  std::size_t failures = 0;
  double max_error = 0.0;      // largest numerical error, where meaningful
  std::string first_failure;   // empty when none
  double wall_seconds = 0.0;

  bool passed() const { return failures == 0 && qualifying > 0; }
};

/// pivot, q-sets, edge-interval, low-value, dichotomy, alpharho, biorthogonality.
const std::vector<std::string_view>& suite_names();
std::size_t default_instances(std::string_view suite);

/// Throws InvalidInput for an unknown suite name.
SuiteResult run_suite(std::string_view suite, std::size_t instances, std::uint64_t seed);

/// Columns of B^{-1} against row distances: max over i of
/// | ||col_i(B^{-1})|| dist(R_i, H^i) - 1 |, and the relative error of
/// ||B^{-1}||_HS^2 = sum_i dist(R_i, H^i)^{-2}. Tolerance 1e-8 for both.
SuiteResult biorthogonality_suite(std::size_t instances, std::uint64_t seed);
/// Pivot selection on constructed instances whose hypotheses hold by design.
SuiteResult pivot_suite(std::size_t instances, std::uint64_t seed);
/// Q-set counting bound with thresholds taken from realized row distances.
SuiteResult q_sets_suite(std::size_t instances, std::uint64_t seed);
/// Two-sided edge-count bounds for every 0 < l <= k <= depth.
SuiteResult edge_interval_suite(std::size_t instances, std::uint64_t seed);
/// Low-value count bound for L in {1,2,3} and every N, plus the
/// deterministic triple property on the first 50 matrices.
SuiteResult low_value_suite(std::size_t instances, std::uint64_t seed);
/// Two-graph dichotomy on graph pairs meeting the edge-difference hypothesis.
SuiteResult dichotomy_suite(std::size_t instances, std::uint64_t seed);
/// Integral inequality on random discrete structures.
SuiteResult alpharho_suite(std::size_t instances, std::uint64_t seed);

}  // namespace sminlab
