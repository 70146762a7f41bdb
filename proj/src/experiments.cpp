#include "sminlab/experiments.hpp"

#include "sminlab/error.hpp"
#include "sminlab/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace sminlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool hit(StatisticKind kind, double value, double t) {
  switch (kind) {
    case StatisticKind::smin_scaled:
    case StatisticKind::distance_profile:
      return value <= t;
    case StatisticKind::hs_scaled_sqrt:
    case StatisticKind::hs_scaled_n:
      return value >= t;
  }
  return false;
}

// The per-trial scalar that every grid point is compared against. For
// distance_profile it is the k-th smallest row distance, so "at least k
// distances <= a" is "value <= a"; +inf when k > n.
double trial_statistic(const ExperimentConfig& c, const Matrix& shift, std::size_t trial) {
  const Matrix b = sample_matrix(c.dist, c.n, SeedSpec{c.master_seed, trial}) + shift;
  const double n = static_cast<double>(c.n);
  if (c.statistic.kind == StatisticKind::distance_profile) {
    if (c.statistic.k > c.n) return kInf;
    auto d = row_distances(b);
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(c.statistic.k - 1), d.end());
    return d[c.statistic.k - 1];
  }
  const Vector sigma = singular_values(b);
  const bool singular = singular_at_tolerance(b, sigma);
  switch (c.statistic.kind) {
    case StatisticKind::smin_scaled:
      return singular ? 0.0 : sigma(sigma.size() - 1) * std::sqrt(n);
    case StatisticKind::hs_scaled_sqrt:
    case StatisticKind::hs_scaled_n: {
      if (singular) return kInf;
      const double hs = std::sqrt((1.0 / sigma.array().square()).sum());
      return c.statistic.kind == StatisticKind::hs_scaled_sqrt ? hs / std::sqrt(n) : hs / n;
    }
    case StatisticKind::distance_profile:
      break;
  }
  return 0.0;
}

TailEstimate run_tail(const ExperimentConfig& config, const std::vector<double>& grid, std::size_t workers) {
  const auto start = std::chrono::steady_clock::now();
  const Matrix shift = build_shift(config.shift, config.n);
  std::vector<double> values(config.trials);
  parallel_trials(config.trials, workers,
                  [&](std::size_t trial) { values[trial] = trial_statistic(config, shift, trial); });

  TailEstimate out;
  out.config = config;
  out.points.reserve(grid.size());
  for (double t : grid) {
    TailPoint p;
    p.t = t;
    p.trials = config.trials;
    for (double v : values) p.hits += hit(config.statistic.kind, v, t) ? 1 : 0;
    p.p_hat = static_cast<double>(p.hits) / static_cast<double>(p.trials);
    const Interval ci = wilson_interval(p.hits, p.trials);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
    out.points.push_back(p);
  }
  out.wall_seconds = seconds_since(start);
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidInput("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

ProportionEstimate proportion(double threshold, std::size_t hits, std::size_t trials) {
  ProportionEstimate p;
  p.threshold = threshold;
  p.hits = hits;
  p.trials = trials;
  p.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  p.ci = wilson_interval(hits, trials);
  return p;
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::smin_scaled: return "smin_scaled";
    case StatisticKind::hs_scaled_sqrt: return "hs_scaled_sqrt";
    case StatisticKind::hs_scaled_n: return "hs_scaled_n";
    case StatisticKind::distance_profile: return "distance_profile";
  }
  return "?";
}

StatisticKind statistic_kind_from_string(std::string_view name) {
  for (auto k : {StatisticKind::smin_scaled, StatisticKind::hs_scaled_sqrt, StatisticKind::hs_scaled_n,
                 StatisticKind::distance_profile}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown statistic '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (n == 0) throw InvalidInput("config: n must be positive");
  if (trials == 0) throw InvalidInput("config: trials must be positive");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i])) throw InvalidInput("config: grid values must be finite");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidInput("config: grid must be strictly increasing");
  }
  if (statistic.kind == StatisticKind::distance_profile) {
    if (statistic.k == 0) throw InvalidInput("config: distance_profile needs k >= 1");
    if (!(statistic.a > 0.0)) throw InvalidInput("config: distance_profile needs a > 0");
  }
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto same_shift = [](const ShiftSpec& x, const ShiftSpec& y) {
    return x.kind == y.kind && x.tau == y.tau && x.values == y.values && x.matrix == y.matrix;
  };
  return a.dist.kind == b.dist.kind && same_shift(a.shift, b.shift) && a.n == b.n && a.trials == b.trials &&
         a.t_grid == b.t_grid && a.master_seed == b.master_seed && a.statistic == b.statistic;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("SMINLAB_THREADS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_trials(std::size_t trials, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = default_worker_count();
  workers = std::min(workers, trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_trial = trials;
  std::exception_ptr error;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < trials; t = next++) {
        try {
          fn(t);
        } catch (...) {
          // Report the failure with the smallest trial index, as a serial run would.
          std::lock_guard lock(error_mutex);
          if (t < error_trial) {
            error_trial = t;
            error = std::current_exception();
          }
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

TailEstimate estimate_tail(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  return run_tail(config, config.t_grid, workers);
}

TailEstimate distance_profile_tail(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  if (config.statistic.kind != StatisticKind::distance_profile) {
    throw InvalidInput("distance_profile_tail: statistic is not distance_profile");
  }
  const std::vector<double> grid = config.t_grid.empty() ? std::vector<double>{config.statistic.a} : config.t_grid;
  return run_tail(config, grid, workers);
}

std::vector<double> make_grid(double start, double end, std::size_t count, bool geometric) {
  if (count == 0) return {};
  if (!std::isfinite(start) || !std::isfinite(end)) throw InvalidInput("grid: bounds must be finite");
  if (count == 1) return {start};
  if (!(end > start)) throw InvalidInput("grid: end must exceed start");
  if (geometric && !(start > 0.0)) throw InvalidInput("grid: geometric spacing needs start > 0");
  std::vector<double> g(count);
  const double steps = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / steps;
    g[i] = geometric ? start * std::pow(end / start, f) : start + (end - start) * f;
  }
  g.front() = start;
  g.back() = end;
  return g;
}

std::vector<double> parse_grid(std::string_view text, bool geometric) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidInput("grid must look like start:end:count, got '" + std::string(text) + "'");
  }
  const double start = parse_double(text.substr(0, c1), "grid start");
  const double end = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid end");
  const auto count_text = text.substr(c2 + 1);
  std::size_t count = 0;
  const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
    throw InvalidInput("cannot parse grid count '" + std::string(count_text) + "'");
  }
  return make_grid(start, end, count, geometric);
}

CounterexampleReport counterexample_experiment(std::size_t n, double tau, std::size_t trials,
                                               std::uint64_t master_seed, std::size_t workers) {
  if (n < 8) throw InvalidInput("counterexample: n must be at least 8");
  if (!(tau >= static_cast<double>(n))) throw InvalidInput("counterexample: tau must be at least n");
  if (trials == 0) throw InvalidInput("counterexample: trials must be positive");
  const auto start = std::chrono::steady_clock::now();

  struct Trial {
    bool corner = false;
    double s_min = 0.0;
    double kappa = 0.0;
    double witness_ratio = 0.0;
  };
  const Matrix shift = build_shift(ShiftSpec::counterexample(tau), n);
  const auto bernoulli = RowDistribution::of(DistKind::bernoulli);
  std::vector<Trial> out(trials);
  parallel_trials(trials, workers, [&](std::size_t t) {
    const Matrix b = sample_matrix(bernoulli, n, SeedSpec{master_seed, t});
    const Matrix bm = b + shift;
    const Vector sigma = singular_values(bm);
    Trial& r = out[t];
    const bool singular = singular_at_tolerance(bm, sigma);
    r.s_min = singular ? 0.0 : sigma(sigma.size() - 1);
    r.kappa = singular ? kInf : sigma(0) / r.s_min;
    const double u = b(n - 2, n - 2) + b(n - 2, n - 1);
    const double v = b(n - 1, n - 2) + b(n - 1, n - 1);
    r.corner = u * u + v * v == 0.0;
    if (r.corner) {
      const Vector x = counterexample_witness(b, tau);
      r.witness_ratio = (bm.eigen() * x).norm() / x.norm();
    }
  });

  CounterexampleReport rep;
  rep.n = n;
  rep.tau = tau;
  rep.trials = trials;
  rep.master_seed = master_seed;
  const double nd = static_cast<double>(n);
  std::size_t corner_hits = 0;
  std::vector<double> corner_smin;
  for (const Trial& r : out) {
    if (!r.corner) continue;
    ++corner_hits;
    corner_smin.push_back(r.s_min);
    rep.corner_max_witness_ratio = std::max(rep.corner_max_witness_ratio, r.witness_ratio);
  }
  rep.corner = proportion(0.0, corner_hits, trials);
  for (double c : {1.0, 5.0, 10.0}) {
    const double bound = c * nd / tau;
    const auto hits = static_cast<std::size_t>(
        std::count_if(out.begin(), out.end(), [&](const Trial& r) { return r.s_min <= bound; }));
    rep.small_smin.push_back(proportion(c, hits, trials));
  }
  for (double c : {0.01, 0.1}) {
    const double bound = c * tau * tau / nd;
    const auto hits = static_cast<std::size_t>(
        std::count_if(out.begin(), out.end(), [&](const Trial& r) { return r.kappa >= bound; }));
    rep.large_condition.push_back(proportion(c, hits, trials));
  }
  if (corner_smin.empty()) {
    rep.corner_median_smin = std::numeric_limits<double>::quiet_NaN();
  } else {
    std::sort(corner_smin.begin(), corner_smin.end());
    const std::size_t m = corner_smin.size();
    rep.corner_median_smin = m % 2 == 1 ? corner_smin[m / 2] : 0.5 * (corner_smin[m / 2 - 1] + corner_smin[m / 2]);
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace sminlab
