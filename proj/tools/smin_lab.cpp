// smin-lab: Monte Carlo tail experiments, property suites and small exact demos.
#include "sminlab/alphaeta.hpp"
#include "sminlab/combinatorics.hpp"
#include "sminlab/error.hpp"
#include "sminlab/experiments.hpp"
#include "sminlab/graph.hpp"
#include "sminlab/io.hpp"
#include "sminlab/suites.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace sminlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct ExperimentFlags {
  std::string config;
  std::string dist = "gaussian";
  std::size_t n = 100;
  std::size_t trials = 1000;
  std::string shift = "zero";
  std::string grid;
  bool geom = false;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config, "JSON file with the experiment config (flags given explicitly override it)");
  cmd->add_option("--dist", f.dist, "Row distribution")
      ->check(CLI::IsMember({"gaussian", "bernoulli", "uniform_entry", "symmetric_exponential", "ball_uniform"}));
  cmd->add_option("--n", f.n, "Matrix dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", f.trials, "Number of independent trials")->check(CLI::PositiveNumber);
  cmd->add_option("--shift", f.shift, "zero | scaled_identity:TAU | diagonal:V1,V2,... | counterexample:TAU");
  cmd->add_flag("--geom", f.geom, "Geometric grid spacing");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0: SMINLAB_THREADS or hardware concurrency)");
  cmd->add_option("--out", f.out, "Write results here");
  cmd->add_option("--format", f.format, "csv or json (default: from the --out extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig build_config(const CLI::App* cmd, const ExperimentFlags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) c = load_config(f.config);
  const bool from_file = !f.config.empty();
  const auto given = [&](const char* name) { return !from_file || cmd->count(name) > 0; };
  if (given("--dist")) c.dist = RowDistribution::of(dist_kind_from_string(f.dist));
  if (given("--n")) c.n = f.n;
  if (given("--trials")) c.trials = f.trials;
  if (given("--shift")) c.shift = parse_shift(f.shift);
  if (given("--seed")) c.master_seed = f.seed;
  return c;
}

ResultFormat pick_format(const ExperimentFlags& f) {
  if (f.format == "json") return ResultFormat::json;
  if (f.format == "csv") return ResultFormat::csv;
  const auto dot = f.out.rfind('.');
  return dot != std::string::npos && f.out.substr(dot) == ".json" ? ResultFormat::json : ResultFormat::csv;
}

void print_estimate(const TailEstimate& e) {
  std::cout << "# config " << to_json(e.config).dump() << '\n';
  std::printf("%14s %8s %8s %12s %12s %12s\n", "t", "trials", "hits", "p_hat", "ci_low", "ci_high");
  for (const auto& p : e.points) {
    std::printf("%14.6g %8zu %8zu %12.6g %12.6g %12.6g\n", p.t, p.trials, p.hits, p.p_hat, p.ci_low, p.ci_high);
  }
  std::printf("# wall time %.3f s\n", e.wall_seconds);
}

void finish_estimate(const TailEstimate& e, const ExperimentFlags& f) {
  print_estimate(e);
  if (!f.out.empty()) emit_results(e, f.out, pick_format(f));
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Json proportion_json(const ProportionEstimate& p) {
  return Json{{"threshold", p.threshold}, {"hits", p.hits},        {"trials", p.trials},
              {"p_hat", p.p_hat},         {"ci_low", p.ci.low}, {"ci_high", p.ci.high}};
}

Json suite_json(const SuiteResult& r) {
  return Json{{"suite", r.suite},       {"instances", r.instances}, {"qualifying", r.qualifying},
              {"checks", r.checks},     {"failures", r.failures},   {"max_error", r.max_error},
              {"passed", r.passed()},   {"first_failure", r.first_failure}, {"wall_seconds", r.wall_seconds}};
}

std::string edges_str(const std::vector<Edge>& edges) {
  std::string s;
  for (const auto& e : edges) {
    if (!s.empty()) s += ' ';
    s += '(' + std::to_string(e.first + 1) + ',' + std::to_string(e.second + 1) + ')';
  }
  return s.empty() ? "{}" : s;
}

std::string set_str(const VertexSet& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smin-lab: smallest singular value experiments and property checks"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);

  // tail
  ExperimentFlags tail_flags;
  std::string statistic = "smin_scaled";
  tail_flags.grid = "0.05:0.5:10";
  auto* tail = app.add_subcommand("tail", "Estimate a tail probability over a threshold grid");
  add_common(tail, tail_flags);
  tail->add_option("--t-grid", tail_flags.grid, "Threshold grid start:end:count");
  tail->add_option("--statistic", statistic, "Statistic")
      ->check(CLI::IsMember({"smin_scaled", "hs_scaled_sqrt", "hs_scaled_n"}));

  // distance-profile
  ExperimentFlags dp_flags;
  std::size_t dp_k = 1;
  double dp_a = 1.0;
  auto* dp = app.add_subcommand("distance-profile",
                                "Probability that at least k rows lie within distance a of the span of the others");
  add_common(dp, dp_flags);
  dp->add_option("--k", dp_k, "Minimum number of close rows")->check(CLI::PositiveNumber);
  dp->add_option("--a", dp_a, "Distance threshold (used when --a-grid is absent)")->check(CLI::PositiveNumber);
  dp->add_option("--a-grid", dp_flags.grid, "Distance threshold grid start:end:count");

  // counterexample
  std::size_t ce_n = 50;
  double ce_tau = 2500.0;
  std::size_t ce_trials = 2000;
  std::uint64_t ce_seed = 0;
  std::size_t ce_threads = 0;
  std::string ce_out;
  auto* ce = app.add_subcommand("counterexample", "Shifted Bernoulli matrices B + diag(tau,...,tau,0,0)");
  ce->add_option("--n", ce_n, "Matrix dimension (>= 8)");
  ce->add_option("--tau", ce_tau, "Shift size (>= n)");
  ce->add_option("--trials", ce_trials, "Number of trials")->check(CLI::PositiveNumber);
  ce->add_option("--seed", ce_seed, "Master seed");
  ce->add_option("--threads", ce_threads, "Worker threads (0: SMINLAB_THREADS or hardware concurrency)");
  ce->add_option("--out", ce_out, "Write the JSON report here");

  // lemma-check
  std::string suite;
  std::size_t instances = 0;
  std::uint64_t lc_seed = 0;
  std::string lc_out;
  auto* lc = app.add_subcommand("lemma-check", "Run a randomized property suite; exit 1 on any failure");
  std::vector<std::string> suite_choices{"all"};
  for (auto s : suite_names()) suite_choices.emplace_back(s);
  lc->add_option("--suite", suite, "Suite name, or all")->required()->check(CLI::IsMember(suite_choices));
  lc->add_option("--instances", instances, "Instances (0: the suite default)");
  lc->add_option("--seed", lc_seed, "Seed");
  lc->add_option("--out", lc_out, "Write the JSON summary here");

  // alphaeta-demo
  bool cube = false;
  std::size_t ae_n = 4;
  double ae_k = 10.0;
  std::size_t ae_atoms = 40;
  std::string structure_path;
  std::string ae_out;
  auto* ae = app.add_subcommand("alphaeta-demo", "Exact evaluation of the integral inequality on a finite structure");
  auto* cube_flag = ae->add_flag("--cube", cube, "Use the discretized cube example");
  ae->add_option("--n", ae_n, "Cube dimension (perfect square)");
  ae->add_option("--k", ae_k, "Cube constant K > 1");
  ae->add_option("--atoms", ae_atoms, "Atoms per factor m");
  ae->add_option("--structure", structure_path, "JSON structure file")->excludes(cube_flag);
  ae->add_option("--out", ae_out, "Write the JSON report here");

  // graph-decompose
  std::string edges_path;
  std::size_t gd_n = 0;
  std::size_t gd_vertex = 1;
  std::size_t gd_depth = 4;
  std::string gd_mode = "exact";
  std::string gd_out;
  auto* gd = app.add_subcommand("graph-decompose", "Greedy decomposition, vertex value and rho-set of an edge list");
  gd->add_option("--edges", edges_path, "Edge list file, one 1-indexed 'j k' pair per line")->required();
  gd->add_option("--n", gd_n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gd->add_option("--vertex", gd_vertex, "Isolated vertex i (1-indexed)")->check(CLI::PositiveNumber);
  gd->add_option("--depth", gd_depth, "Decomposition depth L")->check(CLI::PositiveNumber);
  gd->add_option("--mode", gd_mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
  gd->add_option("--out", gd_out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (tail->parsed()) {
      ExperimentConfig c = build_config(tail, tail_flags);
      if (tail->count("--statistic") || tail_flags.config.empty()) {
        c.statistic.kind = statistic_kind_from_string(statistic);
      }
      if (tail->count("--t-grid") || tail_flags.config.empty()) c.t_grid = parse_grid(tail_flags.grid, tail_flags.geom);
      if (c.statistic.kind == StatisticKind::distance_profile) {
        throw InvalidInput("use the distance-profile verb for that statistic");
      }
      finish_estimate(estimate_tail(c, tail_flags.threads), tail_flags);
      return kExitOk;
    }
    if (dp->parsed()) {
      ExperimentConfig c = build_config(dp, dp_flags);
      if (dp_flags.config.empty() || c.statistic.kind != StatisticKind::distance_profile) {
        c.statistic = Statistic{StatisticKind::distance_profile, dp_k, dp_a};
      }
      if (dp->count("--k")) c.statistic.k = dp_k;
      if (dp->count("--a")) c.statistic.a = dp_a;
      if (dp->count("--a-grid")) c.t_grid = parse_grid(dp_flags.grid, dp_flags.geom);
      else if (dp_flags.config.empty()) c.t_grid.clear();
      finish_estimate(distance_profile_tail(c, dp_flags.threads), dp_flags);
      return kExitOk;
    }
    if (ce->parsed()) {
      const auto r = counterexample_experiment(ce_n, ce_tau, ce_trials, ce_seed, ce_threads);
      std::printf("n=%zu tau=%g trials=%zu seed=%llu\n", r.n, r.tau, r.trials,
                  static_cast<unsigned long long>(r.master_seed));
      std::printf("corner event frequency     %.4f  [%.4f, %.4f]\n", r.corner.p_hat, r.corner.ci.low, r.corner.ci.high);
      for (const auto& p : r.small_smin) {
        std::printf("P{s_min <= %4g n/tau}      %.4f  [%.4f, %.4f]\n", p.threshold, p.p_hat, p.ci.low, p.ci.high);
      }
      for (const auto& p : r.large_condition) {
        std::printf("P{kappa >= %4g tau^2/n}    %.4f  [%.4f, %.4f]\n", p.threshold, p.p_hat, p.ci.low, p.ci.high);
      }
      std::printf("median s_min on corner     %.6g\n", r.corner_median_smin);
      std::printf("max witness ratio (corner) %.6g\n", r.corner_max_witness_ratio);
      std::printf("# wall time %.3f s\n", r.wall_seconds);
      Json j{{"n", r.n},
             {"tau", r.tau},
             {"trials", r.trials},
             {"master_seed", r.master_seed},
             {"corner", proportion_json(r.corner)},
             {"small_smin", Json::array()},
             {"large_condition", Json::array()},
             {"corner_median_smin", std::isnan(r.corner_median_smin) ? Json(nullptr) : Json(r.corner_median_smin)},
             {"corner_max_witness_ratio", r.corner_max_witness_ratio},
             {"wall_seconds", r.wall_seconds}};
      for (const auto& p : r.small_smin) j["small_smin"].push_back(proportion_json(p));
      for (const auto& p : r.large_condition) j["large_condition"].push_back(proportion_json(p));
      write_json(ce_out, j);
      return kExitOk;
    }
    if (lc->parsed()) {
      std::vector<std::string> run;
      if (suite == "all") {
        for (auto s : suite_names()) run.emplace_back(s);
      } else {
        run.push_back(suite);
      }
      bool all_passed = true;
      Json report = Json::array();
      for (const auto& s : run) {
        const std::size_t count = instances > 0 ? instances : default_instances(s);
        const SuiteResult r = run_suite(s, count, lc_seed);
        all_passed = all_passed && r.passed();
        std::printf("%-16s %s  instances=%zu qualifying=%zu checks=%zu failures=%zu (%.2f s)\n", r.suite.c_str(),
                    r.passed() ? "PASS" : "FAIL", r.instances, r.qualifying, r.checks, r.failures, r.wall_seconds);
        if (!r.first_failure.empty()) std::printf("  first failure: %s\n", r.first_failure.c_str());
        report.push_back(suite_json(r));
      }
      write_json(lc_out, report);
      return all_passed ? kExitOk : kExitFailed;
    }
    if (ae->parsed()) {
      if (!cube && structure_path.empty()) throw InvalidInput("alphaeta-demo needs --cube or --structure");
      AlphaEtaStructure s;
      if (cube) {
        s = cube_example_structure(ae_n, ae_k, ae_atoms);
      } else {
        std::ifstream in(structure_path);
        if (!in) throw InvalidInput("cannot open structure '" + structure_path + "'");
        s = structure_from_json(Json::parse(in));
      }
      const double pe = s.event_probability();
      const AlphaRhoCheck c = verify_alpharho(s);
      const auto sharps = sharp_all(s);
      std::printf("atoms %zu, |Psi| %zu, |Lambda| %zu\n", s.space.atom_count(), s.psi_labels.size(),
                  s.lambda_labels.size());
      for (std::size_t p = 0; p < sharps.size(); ++p) std::printf("#%d = %zu\n", s.psi_labels[p], sharps[p]);
      std::printf("P(E) = %.10f\n", pe);
      std::printf("integral = %.10f <= %g : %s\n", c.lhs, c.rhs, c.holds ? "holds" : "FAILS");
      bool ok = c.holds;
      Json j{{"atoms", s.space.atom_count()}, {"event_probability", pe}, {"lhs", c.lhs}, {"rhs", c.rhs},
             {"holds", c.holds},             {"sharp", sharps}};
      if (cube) {
        // On the cube every coordinate contributes K to the integrand, so the
        // inequality bounds K P(E).
        const double bound = c.rhs / ae_k;
        std::printf("certified bound |Psi|^2|Lambda|/K = %g : P(E) %s bound\n", bound, pe <= bound ? "<=" : ">");
        ok = ok && pe <= bound;
        j["bound"] = bound;
      }
      write_json(ae_out, j);
      return ok ? kExitOk : kExitFailed;
    }
    if (gd->parsed()) {
      std::ifstream in(edges_path);
      if (!in) throw InvalidInput("cannot open edge list '" + edges_path + "'");
      const Graph g = read_edge_list(in, gd_n);
      if (gd_vertex > gd_n) throw InvalidInput("--vertex exceeds --n");
      const std::size_t i = gd_vertex - 1;
      const auto mode = decomposition_mode_from_string(gd_mode);
      const auto d = greedy_decomposition(g, i, 4 * gd_depth, mode);
      Json steps = Json::array();
      for (std::size_t k = 0; k <= d.depth(); ++k) {
        std::printf("k=%2zu S=%s |E|=%zu\n", k, set_str(d.S[k]).c_str(), d.E[k].size());
        Json s = Json::array();
        for (auto v : d.S[k]) s.push_back(v + 1);
        steps.push_back({{"k", k}, {"S", s}, {"edges", d.E[k].size()}});
      }
      const double value = vertex_value(d, gd_depth);
      const auto rho = rho_set(g, i, gd_depth, mode);
      std::printf("vertex value (L=%zu) = %.10g\n", gd_depth, value);
      std::printf("rho set (%zu edges) = %s\n", rho.size(), edges_str(rho).c_str());
      Json rho_j = Json::array();
      for (const auto& e : rho) rho_j.push_back({e.first + 1, e.second + 1});
      write_json(gd_out, Json{{"n", gd_n}, {"vertex", gd_vertex}, {"L", gd_depth}, {"mode", gd_mode},
                              {"steps", steps}, {"vertex_value", value}, {"rho", rho_j}});
      return kExitOk;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
