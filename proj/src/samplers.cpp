#include "sminlab/samplers.hpp"

#include "sminlab/error.hpp"

#include <cmath>
#include <charconv>
#include <numbers>
#include <sstream>

namespace sminlab {

namespace {

constexpr std::pair<DistKind, std::string_view> kDistNames[] = {
    {DistKind::gaussian, "gaussian"},
    {DistKind::bernoulli, "bernoulli"},
    {DistKind::uniform_entry, "uniform_entry"},
    {DistKind::symmetric_exponential, "symmetric_exponential"},
    {DistKind::ball_uniform, "ball_uniform"},
};

constexpr std::pair<ShiftKind, std::string_view> kShiftNames[] = {
    {ShiftKind::zero, "zero"},
    {ShiftKind::scaled_identity, "scaled_identity"},
    {ShiftKind::diagonal, "diagonal"},
    {ShiftKind::explicit_matrix, "explicit"},
    {ShiftKind::counterexample, "counterexample"},
};

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw InvalidInput("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string_view to_string(DistKind kind) {
  for (const auto& [k, name] : kDistNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

DistKind dist_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kDistNames) {
    if (n == name) return k;
  }
  throw InvalidInput("unknown distribution '" + std::string(name) + "'");
}

RowDistribution RowDistribution::of(DistKind kind) {
  RowDistribution d;
  d.kind = kind;
  switch (kind) {
    case DistKind::gaussian:
      d.density_bound = 1.0 / std::sqrt(2.0 * std::numbers::pi);
      break;
    case DistKind::uniform_entry:
      d.density_bound = 1.0 / (2.0 * std::sqrt(3.0));
      break;
    case DistKind::symmetric_exponential:
      d.density_bound = 1.0 / std::sqrt(2.0);
      break;
    case DistKind::bernoulli:      // atoms, no density
    case DistKind::ball_uniform:   // marginal bound depends on n
      break;
  }
  return d;
}

std::string_view to_string(ShiftKind kind) {
  for (const auto& [k, name] : kShiftNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string describe(const ShiftSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(spec.kind);
  switch (spec.kind) {
    case ShiftKind::scaled_identity:
    case ShiftKind::counterexample:
      os << ':' << spec.tau;
      break;
    case ShiftKind::diagonal:
      os << ':';
      for (std::size_t i = 0; i < spec.values.size(); ++i) os << (i ? "," : "") << spec.values[i];
      break;
    case ShiftKind::explicit_matrix:
      os << ':' << spec.matrix.n() << 'x' << spec.matrix.n();
      break;
    case ShiftKind::zero:
      break;
  }
  return os.str();
}

ShiftSpec parse_shift(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "zero") return ShiftSpec::zero();
  if (head == "scaled_identity") return ShiftSpec::scaled_identity(parse_double(tail));
  if (head == "counterexample") return ShiftSpec::counterexample(parse_double(tail));
  if (head == "diagonal") {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= tail.size()) {
      const auto comma = tail.find(',', start);
      const auto piece = tail.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      values.push_back(parse_double(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return ShiftSpec::diagonal(std::move(values));
  }
  throw InvalidInput("unknown shift '" + std::string(text) + "'");
}

Matrix sample_matrix(const RowDistribution& dist, std::size_t n, SeedSpec seed) {
  if (n == 0) throw InvalidInput("sample_matrix: n must be positive");
  Philox rng(seed);
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(k, k);

  switch (dist.kind) {
    case DistKind::gaussian:
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) m(i, j) = rng.normal();
      break;
    case DistKind::bernoulli:
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) m(i, j) = (rng() & 1u) ? 1.0 : -1.0;
      break;
    case DistKind::uniform_entry: {
      const double half_width = std::sqrt(3.0);
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) m(i, j) = half_width * (2.0 * rng.uniform01() - 1.0);
      break;
    }
    case DistKind::symmetric_exponential: {
      // Laplace with scale 1/sqrt(2) has unit variance.
      const double scale = 1.0 / std::sqrt(2.0);
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
          const double magnitude = -scale * std::log(rng.uniform01_open_below());
          m(i, j) = (rng() & 1u) ? magnitude : -magnitude;
        }
      }
      break;
    }
    case DistKind::ball_uniform: {
      // Uniform on the ball of radius sqrt(n+2): E x_j^2 = R^2/(n+2) = 1.
      const double radius = std::sqrt(static_cast<double>(n) + 2.0);
      for (Eigen::Index i = 0; i < k; ++i) {
        Eigen::VectorXd g(k);
        for (Eigen::Index j = 0; j < k; ++j) g(j) = rng.normal();
        const double r = radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
        m.row(i) = (r / g.norm()) * g.transpose();
      }
      break;
    }
  }
  return Matrix(std::move(m));
}

Matrix build_shift(const ShiftSpec& spec, std::size_t n) {
  switch (spec.kind) {
    case ShiftKind::zero:
      return Matrix::zero(n);
    case ShiftKind::scaled_identity: {
      const std::vector<double> diag(n, spec.tau);
      return Matrix::diagonal(diag);
    }
    case ShiftKind::diagonal:
      if (spec.values.size() != n) {
        throw InvalidInput("diagonal shift has " + std::to_string(spec.values.size()) + " entries, need " +
                           std::to_string(n));
      }
      return Matrix::diagonal(spec.values);
    case ShiftKind::explicit_matrix:
      if (spec.matrix.n() != n) throw InvalidInput("explicit shift has the wrong dimension");
      return spec.matrix;
    case ShiftKind::counterexample: {
      if (n < 3) throw InvalidInput("counterexample shift needs n >= 3");
      std::vector<double> diag(n, spec.tau);
      diag[n - 1] = 0.0;
      diag[n - 2] = 0.0;
      return Matrix::diagonal(diag);
    }
  }
  throw InvalidInput("unhandled shift kind");
}

Vector counterexample_witness(const Matrix& b, double tau) {
  const std::size_t n = b.n();
  if (n < 3) throw InvalidInput("counterexample_witness: n must be at least 3");
  if (!(tau >= static_cast<double>(n))) {
    throw InvalidInput("counterexample_witness: tau must be >= n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b(i, j) != 1.0 && b(i, j) != -1.0) throw InvalidInput("counterexample_witness: entries must be +-1");
    }
  }
  Vector x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 2 < n; ++i) {
    x(static_cast<Eigen::Index>(i)) = -(b(i, n - 2) + b(i, n - 1)) / tau;
  }
  x(static_cast<Eigen::Index>(n - 2)) = 1.0;
  x(static_cast<Eigen::Index>(n - 1)) = 1.0;
  return x;
}

}  // namespace sminlab
