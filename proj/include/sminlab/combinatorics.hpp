#pragma once

#include "sminlab/graph.hpp"
#include "sminlab/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sminlab {

/// Graph on the rows of B with an edge (j,k), j,k != i, whenever
///   dist(R_i, H^{ijk}) >= max(dist(R_j, H^{ijk}), dist(R_k, H^{ijk})).
/// Vertex i is isolated. Ties count as edges.
Graph build_graph_G(const Matrix& b, std::size_t i);

/// Same rule with the left side replaced by dist(R_i(M), H^{ijk}(A+M)) + offset;
/// the i-th row of A does not enter.
Graph build_graph_G_tilde(const Matrix& a, const Matrix& m, std::size_t i, double offset);

/// The three distances dist(R_x(B), H^{jkl}(B)) for x in the sorted triple
/// {j,k,l}, in that order. Every graph that looks at the same triple reads
/// the same numbers.
std::array<double, 3> triple_distances(const Matrix& b, std::size_t j, std::size_t k, std::size_t l);

/// |{i : vl_{G_{B,i},L}(i) <= N}|.
std::size_t low_value_count(const Matrix& b, std::size_t L, std::size_t N,
                            DecompositionMode mode = DecompositionMode::exact);

struct QSets {
  std::vector<VertexSet> q1;
  std::vector<VertexSet> q2;
  std::size_t union_size() const;
};

/// Enumerates all r-subsets S and sorts them into
///   Q1: some j in S n I has dist(R_j, H^S) <= tau;
///   Q2: S n I nonempty and some j in S \ I has dist(R_j, H^S) >= tau b/(2ar).
QSets q_sets(const Matrix& b, const VertexSet& I, double tau, double a, double b_threshold, std::size_t r);

struct PivotResult {
  std::optional<std::size_t> index;  // 0-based, in [1, r-1]
  std::string diagnostic;
};

/// Given x_1..x_r with dist(x_1, span rest) <= a and dist(x_i, span others) >= b
/// (i >= 2), returns the first i0 >= 2 with ||x_{i0}|| >= b/(2ar) ||x_1||.
/// Hypotheses are checked with relative slack 1e-9; the conclusion is
/// compared exactly. Returns no index, with a diagnostic, when either fails.
PivotResult pivot_index(std::span<const Vector> xs, double a, double b);

/// min(dist(R_j, H^j), dist(R_k, H^k)).
double mindist(const Matrix& b, std::size_t j, std::size_t k);
double mindist(std::span<const double> row_dists, std::size_t j, std::size_t k);

/// k-th largest element counting multiplicity (k is 1-based).
double kmax(std::vector<double> values, std::size_t k);

struct StructureParams {
  double epsilon = 1.0 / 24.0;
  std::size_t n = 0;
  std::size_t u = 0;
  double level_count = 0.0;  // L_u = 8(floor(log2 n) + 1 - u) + 2 log2(1 + K1)
  double offset = 0.0;       // 2^{L_u / 192}
  double k1 = 1.0;
  double k2 = 2000.0;
  double t = 1.0;

  /// L_u rounded up; the integer used for decomposition depth and the
  /// dyadic index range.
  std::size_t levels() const;
};

StructureParams structure_params(std::size_t n, std::size_t u, double k1, double t = 1.0);

/// Index of the dyadic cell [2^l t, 2^{l+1} t) containing x, with values
/// below 2^{-L} t mapped to -infinity and values >= 2^{L+1} t to +infinity.
struct DyadicLevel {
  enum class Kind { minus_infinity, finite, plus_infinity };
  Kind kind = Kind::finite;
  int value = 0;

  static DyadicLevel minus_infinity() { return {Kind::minus_infinity, 0}; }
  static DyadicLevel plus_infinity() { return {Kind::plus_infinity, 0}; }
  static DyadicLevel at(int v) { return {Kind::finite, v}; }
  friend bool operator==(const DyadicLevel&, const DyadicLevel&) = default;
  std::string str() const;
};

DyadicLevel dyadic_level(double x, double t, int levels);

struct LambdaClass {
  DyadicLevel distance;  // lambda_1
  DyadicLevel spread;    // lambda_2
  friend bool operator==(const LambdaClass&, const LambdaClass&) = default;
};

/// lambda_1 from dist(R_i(A+M), H^i(A+M)); lambda_2 from the
/// ceil(|rho_i|/2)-th largest mindist over rho_i, where rho_i is the rho-set
/// of G~_i at depth params.levels(). An empty rho_i gives -infinity.
LambdaClass classify_lambda(const Matrix& a, const Matrix& m, std::size_t i, const StructureParams& params,
                            DecompositionMode mode = DecompositionMode::exact);

}  // namespace sminlab
