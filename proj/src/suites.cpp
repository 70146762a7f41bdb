#include "sminlab/suites.hpp"

#include "sminlab/alphaeta.hpp"
#include "sminlab/combinatorics.hpp"
#include "sminlab/error.hpp"
#include "sminlab/graph.hpp"
#include "sminlab/linalg.hpp"
#include "sminlab/rng.hpp"
#include "sminlab/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

namespace sminlab {

namespace {

// Choices that are not matrix entries come from a stream keyed apart from
// the one sample_matrix uses for the same instance.
constexpr std::uint64_t kAuxKey = 0x5eed'a11c'e5u;

class Draw {
 public:
  Draw(std::uint64_t seed, std::size_t instance) : rng_(SeedSpec{seed ^ kAuxKey, instance}) {}
  // Uniform on {lo, ..., hi}.
  std::size_t integer(std::size_t lo, std::size_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<std::size_t>(rng_.uniform01() * span));
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }
  bool coin(double p) { return rng_.uniform01() < p; }
  double normal() { return rng_.normal(); }

 private:
  Philox rng_;
};

constexpr DistKind kContinuousKinds[] = {DistKind::gaussian, DistKind::uniform_entry,
                                         DistKind::symmetric_exponential, DistKind::ball_uniform};

class Recorder {
 public:
  explicit Recorder(std::string suite) : start_(std::chrono::steady_clock::now()) {
    result_.suite = std::move(suite);
  }
  void check(bool ok, std::size_t instance, const std::string& what) {
    ++result_.checks;
    if (ok) return;
    if (result_.failures++ == 0) {
      result_.first_failure = "instance " + std::to_string(instance) + ": " + what;
    }
  }
  void error(double e) { result_.max_error = std::max(result_.max_error, e); }
  SuiteResult& raw() { return result_; }
  SuiteResult finish() {
    result_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

Graph random_graph(Draw& draw, std::size_t n, std::size_t isolated, double p) {
  Graph g(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (j != isolated && k != isolated && draw.coin(p)) g.add_edge(j, k);
    }
  }
  return g;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t t = 1; t <= k; ++t) c = c * static_cast<double>(n - k + t) / static_cast<double>(t);
  return std::round(c);
}

}  // namespace

SuiteResult biorthogonality_suite(std::size_t instances, std::uint64_t seed) {
  constexpr double kTol = 1e-8;
  constexpr DistKind kinds[] = {DistKind::gaussian, DistKind::bernoulli, DistKind::uniform_entry,
                                DistKind::symmetric_exponential, DistKind::ball_uniform};
  Recorder rec("biorthogonality");
  std::size_t stream = 0;
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const DistKind kind = kinds[inst % 5];
    const std::size_t n = draw.integer(2, 50);
    // Redraw singular samples (only the discrete kind produces them).
    Matrix b;
    SingularData sd;
    do {
      b = sample_matrix(RowDistribution::of(kind), n, SeedSpec{seed, stream++});
      sd = singular_data(b);
    } while (sd.singular);
    ++rec.raw().instances;
    ++rec.raw().qualifying;

    const Eigen::MatrixXd inv = b.eigen().fullPivLu().inverse();
    double worst = 0.0;
    double sum_inv_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = sd.row_distances[i];
      worst = std::max(worst, std::abs(inv.col(static_cast<Eigen::Index>(i)).norm() * d - 1.0));
      sum_inv_sq += 1.0 / (d * d);
    }
    const double hs2 = sd.hs_inverse * sd.hs_inverse;
    const double hs_err = std::abs(hs2 - sum_inv_sq) / hs2;
    rec.error(std::max(worst, hs_err));
    std::ostringstream what;
    what << to_string(kind) << " n=" << n << " column error " << worst << " hs error " << hs_err;
    rec.check(worst <= kTol && hs_err <= kTol, inst, what.str());
  }
  return rec.finish();
}

SuiteResult pivot_suite(std::size_t instances, std::uint64_t seed) {
  Recorder rec("pivot");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t r = draw.integer(2, 6);
    std::vector<Vector> xs(r, Vector::Zero(static_cast<Eigen::Index>(r)));
    // x_2..x_r with random scales; x_1 close to their span.
    for (std::size_t i = 1; i < r; ++i) {
      const double scale = std::pow(10.0, draw.uniform(-2.0, 2.0));
      for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(r); ++c) xs[i](c) = scale * draw.normal();
    }
    for (std::size_t i = 1; i < r; ++i) xs[0] += std::pow(10.0, draw.uniform(-2.0, 3.0)) * draw.normal() * xs[i];
    const double noise = std::pow(10.0, draw.uniform(-4.0, 0.0));
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(r); ++c) xs[0](c) += noise * draw.normal();

    const auto dist_to_others = [&](std::size_t i) {
      std::vector<Vector> others;
      for (std::size_t j = 0; j < r; ++j) {
        if (j != i) others.push_back(xs[j]);
      }
      return dist_to_span(xs[i], others);
    };
    // Tightest admissible a and b, loosened by a random factor.
    const double a = dist_to_others(0) * draw.uniform(1.0, 3.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < r; ++i) b = std::min(b, dist_to_others(i));
    b *= draw.uniform(0.3, 1.0);
    ++rec.raw().instances;
    if (!(a > 0.0) || !(b > 0.0)) continue;
    ++rec.raw().qualifying;

    const PivotResult res = pivot_index(xs, a, b);
    bool ok = res.index.has_value() && *res.index >= 1 && *res.index < r;
    if (ok) ok = xs[*res.index].norm() >= b / (2.0 * a * static_cast<double>(r)) * xs[0].norm();
    rec.check(ok, inst, "r=" + std::to_string(r) + ": " + (res.diagnostic.empty() ? "invalid index" : res.diagnostic));
  }
  return rec.finish();
}

SuiteResult q_sets_suite(std::size_t instances, std::uint64_t seed) {
  Recorder rec("q-sets");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t n = draw.integer(4, 10);
    const std::size_t r = draw.integer(2, 3);
    const DistKind kind = kContinuousKinds[inst % 4];
    const Matrix b = sample_matrix(RowDistribution::of(kind), n, SeedSpec{seed, inst});
    const auto d = row_distances(b);
    ++rec.raw().instances;

    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t half = (n + 1) / 2;
    const double a = sorted[draw.integer(0, n - half - 1)];
    VertexSet I;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] <= a) I.push_back(i);
    }
    std::vector<double> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] > a) rest.push_back(d[i]);
    }
    std::sort(rest.begin(), rest.end(), std::greater<>());
    if (rest.size() < half || !(a > 0.0)) continue;
    const double bt = rest[half - 1];
    VertexSet J;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] > a && d[i] >= bt) J.push_back(i);
    }
    // Hypotheses, checked independently of how the sets were built.
    bool qualifies = !I.empty() && 2 * J.size() >= n;
    for (std::size_t i : I) qualifies = qualifies && d[i] <= a && !std::binary_search(J.begin(), J.end(), i);
    for (std::size_t j : J) qualifies = qualifies && d[j] >= bt;
    if (!qualifies) continue;
    ++rec.raw().qualifying;

    const double tau = a * std::pow(2.0, draw.uniform(-4.0, 4.0));
    const QSets q = q_sets(b, I, tau, a, bt, r);
    const double bound = static_cast<double>(I.size()) * binomial(half, r - 1);
    std::ostringstream what;
    what << "n=" << n << " r=" << r << " |I|=" << I.size() << " |Q1 u Q2|=" << q.union_size() << " < " << bound;
    rec.check(static_cast<double>(q.union_size()) >= bound, inst, what.str());
  }
  return rec.finish();
}

SuiteResult edge_interval_suite(std::size_t instances, std::uint64_t seed) {
  Recorder rec("edge-interval");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t n = draw.integer(3, 12);
    const std::size_t i = draw.integer(0, n - 1);
    const Graph g = random_graph(draw, n, i, draw.uniform(0.1, 0.9));
    ++rec.raw().instances;
    ++rec.raw().qualifying;
    // Far enough to reach the stabilized tail of the sequences.
    const auto depth = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(g.edge_count()) + 1.0))) + 2;
    for (std::size_t k = 1; k <= depth; ++k) {
      for (std::size_t l = 1; l <= k; ++l) {
        rec.check(check_edge_interval(g, i, k, l), inst,
                  "n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
      }
    }
  }
  return rec.finish();
}

SuiteResult low_value_suite(std::size_t instances, std::uint64_t seed) {
  constexpr std::size_t kTripleMatrices = 50;
  Recorder rec("low-value");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t n = draw.integer(3, 12);
    const DistKind kind = kContinuousKinds[inst % 4];
    const Matrix b = sample_matrix(RowDistribution::of(kind), n, SeedSpec{seed, inst});
    ++rec.raw().instances;
    ++rec.raw().qualifying;

    std::vector<Graph> graphs;
    for (std::size_t v = 0; v < n; ++v) graphs.push_back(build_graph_G(b, v));
    for (std::size_t L = 1; L <= 3; ++L) {
      std::vector<double> values(n);
      for (std::size_t v = 0; v < n; ++v) values[v] = vertex_value(graphs[v], v, L);
      for (std::size_t N = 1; N <= n; ++N) {
        const std::size_t count = low_value_count(b, L, N);
        const auto direct = static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(), [N](double x) { return x <= static_cast<double>(N); }));
        rec.check(count == direct && count <= 16 * N, inst,
                  "n=" + std::to_string(n) + " L=" + std::to_string(L) + " N=" + std::to_string(N) +
                      " count=" + std::to_string(count));
      }
    }
    if (inst < kTripleMatrices) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
          for (std::size_t z = y + 1; z < n; ++z) {
            const bool ok = graphs[x].has_edge(y, z) || graphs[y].has_edge(x, z) || graphs[z].has_edge(x, y);
            rec.check(ok, inst, "triple (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");
          }
        }
      }
    }
  }
  return rec.finish();
}

SuiteResult dichotomy_suite(std::size_t instances, std::uint64_t seed) {
  Recorder rec("dichotomy");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t n = draw.integer(3, 12);
    const std::size_t L = draw.integer(1, 2);
    const std::size_t i = draw.integer(0, n - 1);
    const Graph g_tilde = random_graph(draw, n, i, draw.uniform(0.1, 0.9));
    const auto allowance = static_cast<std::size_t>(
        std::floor(static_cast<double>(n * n) * std::pow(16.0, -static_cast<double>(L))));
    // G: part of G~ plus at most `allowance` edges that G~ lacks.
    Graph g(n);
    const double keep = draw.uniform(0.5, 1.0);
    for (const auto& e : g_tilde.edges()) {
      if (draw.coin(keep)) g.add_edge(e.first, e.second);
    }
    std::size_t extra = draw.integer(0, allowance);
    for (std::size_t j = 0; j < n && extra > 0; ++j) {
      for (std::size_t k = j + 1; k < n && extra > 0; ++k) {
        if (j == i || k == i || g_tilde.has_edge(j, k) || !draw.coin(0.3)) continue;
        g.add_edge(j, k);
        --extra;
      }
    }
    ++rec.raw().instances;
    try {
      const DichotomyReport rep = two_graphs_dichotomy(g, g_tilde, i, L);
      ++rec.raw().qualifying;
      std::ostringstream what;
      what << "n=" << n << " L=" << L << " value=" << rep.value << " min_cover=" << rep.min_cover;
      rec.check(rep.holds(), inst, what.str());
    } catch (const PreconditionError&) {
      // Hypothesis not met; the instance does not count.
    }
  }
  return rec.finish();
}

SuiteResult alpharho_suite(std::size_t instances, std::uint64_t seed) {
  Recorder rec("alpharho");
  for (std::size_t inst = 0; inst < instances; ++inst) {
    Draw draw(seed, inst);
    const std::size_t n = draw.integer(1, 4);
    std::vector<std::vector<double>> factors(n);
    for (auto& f : factors) {
      f.resize(draw.integer(1, 5));
      for (double& p : f) p = draw.uniform(0.05, 1.0);
      const double total = std::accumulate(f.begin(), f.end(), 0.0);
      for (double& p : f) p /= total;
    }
    AlphaEtaStructure s;
    s.space = DiscreteProductSpace(std::move(factors));
    s.psi_labels.resize(draw.integer(1, 3));
    std::iota(s.psi_labels.begin(), s.psi_labels.end(), 1);
    s.lambda_labels.resize(draw.integer(1, 3));
    std::iota(s.lambda_labels.begin(), s.lambda_labels.end(), 1);
    const std::size_t atoms = s.space.atom_count();
    const double event_density = draw.uniform(0.1, 1.0);
    s.in_event.resize(atoms);
    for (auto& e : s.in_event) e = draw.coin(event_density) ? 1 : 0;
    s.classes.assign(n, std::vector<std::uint16_t>(atoms));
    s.event_partition.assign(n, std::vector<std::uint16_t>(atoms, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t w = 0; w < atoms; ++w) {
        s.classes[i][w] = static_cast<std::uint16_t>(draw.integer(0, s.psi_labels.size() - 1));
        if (s.in_event[w]) {
          s.event_partition[i][w] = static_cast<std::uint16_t>(draw.integer(0, s.lambda_labels.size() - 1));
        }
      }
    }
    s.validate();
    ++rec.raw().instances;
    ++rec.raw().qualifying;

    const AlphaRhoCheck c = verify_alpharho(s);
    std::ostringstream what;
    what << "n=" << n << " lhs=" << c.lhs << " rhs=" << c.rhs;
    rec.check(c.holds, inst, what.str());
    // Consequence: P(E) <= rhs / min_w sum_i alpha/#eta.
    const double pe = s.event_probability();
    if (pe > 0.0) rec.check(pe <= c.rhs / c.min_ratio_sum + 1e-9, inst, "event bound, " + what.str());
  }
  return rec.finish();
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"pivot",     "q-sets",   "edge-interval",  "low-value",
                                                   "dichotomy", "alpharho", "biorthogonality"};
  return names;
}

std::size_t default_instances(std::string_view suite) {
  static const std::map<std::string_view, std::size_t> defaults{
      {"pivot", 10000}, {"q-sets", 1000},  {"edge-interval", 200},    {"low-value", 100},
      {"dichotomy", 200}, {"alpharho", 500}, {"biorthogonality", 1000}};
  const auto it = defaults.find(suite);
  if (it == defaults.end()) throw InvalidInput("unknown suite '" + std::string(suite) + "'");
  return it->second;
}

SuiteResult run_suite(std::string_view suite, std::size_t instances, std::uint64_t seed) {
  if (suite == "pivot") return pivot_suite(instances, seed);
  if (suite == "q-sets") return q_sets_suite(instances, seed);
  if (suite == "edge-interval") return edge_interval_suite(instances, seed);
  if (suite == "low-value") return low_value_suite(instances, seed);
  if (suite == "dichotomy") return dichotomy_suite(instances, seed);
  if (suite == "alpharho") return alpharho_suite(instances, seed);
  if (suite == "biorthogonality") return biorthogonality_suite(instances, seed);
  throw InvalidInput("unknown suite '" + std::string(suite) + "'");
}

}  // namespace sminlab
