#pragma once

#include "sminlab/linalg.hpp"
#include "sminlab/rng.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sminlab {

enum class DistKind { gaussian, bernoulli, uniform_entry, symmetric_exponential, ball_uniform };

/// Law of one matrix row. All continuous kinds are isotropic.
struct RowDistribution {
  DistKind kind = DistKind::gaussian;
  /// Density bound of one-dimensional projections, where known in closed form.
  std::optional<double> density_bound;
  /// (K1, K2) of the decaying 3-d projection density bound, when known.
  std::optional<std::pair<double, double>> c2_params;

  static RowDistribution of(DistKind kind);
};

std::string_view to_string(DistKind kind);
DistKind dist_kind_from_string(std::string_view name);

enum class ShiftKind { zero, scaled_identity, diagonal, explicit_matrix, counterexample };

struct ShiftSpec {
  ShiftKind kind = ShiftKind::zero;
  double tau = 0.0;            // scaled_identity, counterexample
  std::vector<double> values;  // diagonal
  Matrix matrix;               // explicit_matrix

  static ShiftSpec zero() { return {}; }
  static ShiftSpec scaled_identity(double tau) { return {ShiftKind::scaled_identity, tau, {}, {}}; }
  static ShiftSpec diagonal(std::vector<double> v) { return {ShiftKind::diagonal, 0.0, std::move(v), {}}; }
  static ShiftSpec explicit_matrix(Matrix m) { return {ShiftKind::explicit_matrix, 0.0, {}, std::move(m)}; }
  static ShiftSpec counterexample(double tau) { return {ShiftKind::counterexample, tau, {}, {}}; }
};

std::string_view to_string(ShiftKind kind);
/// Compact description, e.g. "zero", "scaled_identity:2.5", "counterexample:2500".
std::string describe(const ShiftSpec& spec);
/// Parses the CLI form: zero | scaled_identity:TAU | diagonal:V1,V2,... |
/// counterexample:TAU. Explicit matrices come from config files only.
ShiftSpec parse_shift(std::string_view text);

/// One n x n draw; rows are independent and the result is a pure function
/// of (dist, n, seed).
Matrix sample_matrix(const RowDistribution& dist, std::size_t n, SeedSpec seed);

/// Materializes the fixed shift M.
Matrix build_shift(const ShiftSpec& spec, std::size_t n);

/// The vector X with X_i = -(b_{i,n-1} + b_{i,n})/tau for i <= n-2 and
/// X_{n-1} = X_n = 1 (1-indexed), for which ||(B+M)X|| is small whenever
/// the bottom-right 2x2 corner of the Bernoulli matrix B cancels.
Vector counterexample_witness(const Matrix& b, double tau);

}  // namespace sminlab
