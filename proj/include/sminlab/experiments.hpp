#pragma once

#include "sminlab/samplers.hpp"
#include "sminlab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sminlab {

enum class StatisticKind {
  smin_scaled,       // hit at t iff s_min(A+M) <= t / sqrt(n)
  hs_scaled_sqrt,    // hit at t iff ||(A+M)^{-1}||_HS >= t sqrt(n)
  hs_scaled_n,       // hit at t iff ||(A+M)^{-1}||_HS >= t n
  distance_profile,  // hit at a iff |{i : dist(R_i, H^i) <= a}| >= k
};

std::string_view to_string(StatisticKind kind);
StatisticKind statistic_kind_from_string(std::string_view name);

struct Statistic {
  StatisticKind kind = StatisticKind::smin_scaled;
  std::size_t k = 1;  // distance_profile only
  double a = 1.0;     // distance_profile only: threshold used when the grid is empty
  friend bool operator==(const Statistic&, const Statistic&) = default;
};

/// For distance_profile the grid values are the distance thresholds a.
struct ExperimentConfig {
  RowDistribution dist;
  ShiftSpec shift;
  std::size_t n = 1;
  std::size_t trials = 1;
  std::vector<double> t_grid;
  std::uint64_t master_seed = 0;
  Statistic statistic;

  /// Throws InvalidInput on n == 0, trials == 0, or a grid that is not
  /// strictly increasing.
  void validate() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct TailPoint {
  double t = 0.0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  friend bool operator==(const TailPoint&, const TailPoint&) = default;
};

struct TailEstimate {
  ExperimentConfig config;
  std::vector<TailPoint> points;
  double wall_seconds = 0.0;
  friend bool operator==(const TailEstimate&, const TailEstimate&) = default;
};

/// Worker count: SMINLAB_THREADS when set and positive, otherwise the
/// hardware concurrency.
std::size_t default_worker_count();

/// Evaluates fn(trial) for every trial in [0, trials) on `workers` threads.
/// Output slot `trial` is written only by fn(trial), so the result does not
/// depend on scheduling.
void parallel_trials(std::size_t trials, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// One realization of A+M per trial; the whole grid is scored against it.
/// Singular realizations count as s_min = 0 and ||inverse|| = +infinity.
TailEstimate estimate_tail(const ExperimentConfig& config, std::size_t workers = 0);

/// estimate_tail for a distance_profile statistic; an empty grid means the
/// single threshold statistic.a.
TailEstimate distance_profile_tail(const ExperimentConfig& config, std::size_t workers = 0);

/// Builds the grid start:end:count, linearly or geometrically spaced.
std::vector<double> make_grid(double start, double end, std::size_t count, bool geometric);
/// Parses "start:end:count".
std::vector<double> parse_grid(std::string_view text, bool geometric);

struct ProportionEstimate {
  double threshold = 0.0;
  std::size_t hits = 0;
  std::size_t trials = 0;
  double p_hat = 0.0;
  Interval ci;
};

/// Shifted Bernoulli matrices B + diag(tau,...,tau,0,0).
struct CounterexampleReport {
  std::size_t n = 0;
  double tau = 0.0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  /// Bottom-right corner cancels: (b_{n-1,n-1}+b_{n-1,n})^2 + (b_{n,n-1}+b_{n,n})^2 = 0.
  ProportionEstimate corner;
  /// P{s_min(B+M) <= C n / tau}; `threshold` holds C.
  std::vector<ProportionEstimate> small_smin;
  /// P{kappa(B+M) >= c tau^2 / n}; `threshold` holds c.
  std::vector<ProportionEstimate> large_condition;
  /// Median of s_min over trials where the corner cancels (NaN if none).
  double corner_median_smin = 0.0;
  /// Largest ||(B+M)X|| / ||X|| over corner trials, X the witness vector;
  /// an upper bound on s_min in each such trial.
  double corner_max_witness_ratio = 0.0;
  double wall_seconds = 0.0;
};

/// Throws InvalidInput unless n >= 8 and tau >= n.
CounterexampleReport counterexample_experiment(std::size_t n, double tau, std::size_t trials,
                                               std::uint64_t master_seed, std::size_t workers = 0);

}  // namespace sminlab
