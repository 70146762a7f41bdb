#include "sminlab/io.hpp"

#include "sminlab/error.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sminlab {

namespace {

Json shift_to_json(const ShiftSpec& s) {
  Json j{{"kind", to_string(s.kind)}};
  switch (s.kind) {
    case ShiftKind::zero:
      break;
    case ShiftKind::scaled_identity:
    case ShiftKind::counterexample:
      j["tau"] = s.tau;
      break;
    case ShiftKind::diagonal:
      j["values"] = s.values;
      break;
    case ShiftKind::explicit_matrix: {
      Json rows = Json::array();
      for (std::size_t i = 0; i < s.matrix.n(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < s.matrix.n(); ++k) row.push_back(s.matrix(i, k));
        rows.push_back(std::move(row));
      }
      j["matrix"] = std::move(rows);
      break;
    }
  }
  return j;
}

ShiftSpec shift_from_json(const Json& j) {
  if (j.is_string()) return parse_shift(j.get<std::string>());
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ShiftSpec::zero();
  if (kind == "scaled_identity") return ShiftSpec::scaled_identity(j.at("tau").get<double>());
  if (kind == "counterexample") return ShiftSpec::counterexample(j.at("tau").get<double>());
  if (kind == "diagonal") return ShiftSpec::diagonal(j.at("values").get<std::vector<double>>());
  if (kind == "explicit" || kind == "explicit_matrix") {
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw InvalidInput("shift matrix must be square");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
      }
    }
    return ShiftSpec::explicit_matrix(Matrix(std::move(m)));
  }
  throw InvalidInput("unknown shift kind '" + kind + "'");
}

Json statistic_to_json(const Statistic& s) {
  Json j{{"kind", to_string(s.kind)}};
  if (s.kind == StatisticKind::distance_profile) {
    j["k"] = s.k;
    j["a"] = s.a;
  }
  return j;
}

Statistic statistic_from_json(const Json& j) {
  Statistic s;
  if (j.is_string()) {
    s.kind = statistic_kind_from_string(j.get<std::string>());
    return s;
  }
  s.kind = statistic_kind_from_string(j.at("kind").get<std::string>());
  s.k = j.value("k", s.k);
  s.a = j.value("a", s.a);
  return s;
}

template <class F>
auto checked(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

// RFC 4180 quoting for the free-text columns (diagonal shifts contain commas).
std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const TailEstimate& e) {
  const auto& c = e.config;
  os << "t,trials,hits,p_hat,ci_low,ci_high,n,statistic,dist,shift,master_seed\n";
  for (const auto& p : e.points) {
    os << format_real(p.t) << ',' << p.trials << ',' << p.hits << ',' << format_real(p.p_hat) << ','
       << format_real(p.ci_low) << ',' << format_real(p.ci_high) << ',' << c.n << ',' << to_string(c.statistic.kind)
       << ',' << to_string(c.dist.kind) << ',' << csv_field(describe(c.shift)) << ',' << c.master_seed << '\n';
  }
}

void emit_results(const TailEstimate& estimate, const std::filesystem::path& path, ResultFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  if (format == ResultFormat::csv) {
    write_csv(out, estimate);
  } else {
    out << to_json(estimate).dump(2) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"dist", to_string(c.dist.kind)},
              {"shift", shift_to_json(c.shift)},
              {"n", c.n},
              {"trials", c.trials},
              {"t_grid", c.t_grid},
              {"master_seed", c.master_seed},
              {"statistic", statistic_to_json(c.statistic)}};
}

ExperimentConfig config_from_json(const Json& j) {
  return checked("config", [&] {
    ExperimentConfig c;
    c.dist = RowDistribution::of(dist_kind_from_string(j.at("dist").get<std::string>()));
    if (j.contains("shift")) c.shift = shift_from_json(j.at("shift"));
    c.n = j.at("n").get<std::size_t>();
    c.trials = j.value("trials", c.trials);
    c.t_grid = j.value("t_grid", c.t_grid);
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("statistic")) c.statistic = statistic_from_json(j.at("statistic"));
    c.validate();
    return c;
  });
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config '" + path.string() + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InvalidInput("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

Json to_json(const TailEstimate& e) {
  Json points = Json::array();
  for (const auto& p : e.points) {
    points.push_back({{"t", p.t},
                      {"trials", p.trials},
                      {"hits", p.hits},
                      {"p_hat", p.p_hat},
                      {"ci_low", p.ci_low},
                      {"ci_high", p.ci_high}});
  }
  return Json{{"config", to_json(e.config)}, {"points", std::move(points)}, {"wall_seconds", e.wall_seconds}};
}

TailEstimate tail_estimate_from_json(const Json& j) {
  return checked("tail estimate", [&] {
    TailEstimate e;
    e.config = config_from_json(j.at("config"));
    for (const auto& p : j.at("points")) {
      e.points.push_back(TailPoint{p.at("t").get<double>(), p.at("trials").get<std::size_t>(),
                                   p.at("hits").get<std::size_t>(), p.at("p_hat").get<double>(),
                                   p.at("ci_low").get<double>(), p.at("ci_high").get<double>()});
    }
    e.wall_seconds = j.value("wall_seconds", 0.0);
    return e;
  });
}

Json to_json(const AlphaEtaStructure& s) {
  Json event = Json::array();
  for (std::size_t w = 0; w < s.in_event.size(); ++w) {
    if (s.in_event[w]) event.push_back(w);
  }
  Json partition = Json::array();
  for (const auto& cells : s.event_partition) {
    Json row = Json::array();
    for (std::size_t w = 0; w < s.in_event.size(); ++w) {
      if (s.in_event[w]) row.push_back(cells[w]);
    }
    partition.push_back(std::move(row));
  }
  return Json{{"factors", s.space.factors()}, {"psi_labels", s.psi_labels},   {"lambda_labels", s.lambda_labels},
              {"classes", s.classes},         {"event", std::move(event)}, {"event_partition", std::move(partition)}};
}

AlphaEtaStructure structure_from_json(const Json& j) {
  return checked("structure", [&] {
    AlphaEtaStructure s;
    s.space = DiscreteProductSpace(j.at("factors").get<std::vector<std::vector<double>>>());
    s.psi_labels = j.at("psi_labels").get<std::vector<int>>();
    s.lambda_labels = j.at("lambda_labels").get<std::vector<int>>();
    s.classes = j.at("classes").get<std::vector<std::vector<std::uint16_t>>>();
    const auto event = j.at("event").get<std::vector<std::size_t>>();
    const auto partition = j.at("event_partition").get<std::vector<std::vector<std::uint16_t>>>();
    const std::size_t atoms = s.space.atom_count();
    s.in_event.assign(atoms, 0);
    for (std::size_t w : event) {
      if (w >= atoms) throw InvalidInput("structure: event atom out of range");
      s.in_event[w] = 1;
    }
    if (partition.size() != s.space.n()) throw InvalidInput("structure: event_partition needs one row per coordinate");
    s.event_partition.assign(s.space.n(), std::vector<std::uint16_t>(atoms, 0));
    for (std::size_t i = 0; i < partition.size(); ++i) {
      if (partition[i].size() != event.size()) throw InvalidInput("structure: event_partition row length mismatch");
      for (std::size_t k = 0; k < event.size(); ++k) s.event_partition[i][event[k]] = partition[i][k];
    }
    s.validate();
    return s;
  });
}

}  // namespace sminlab
