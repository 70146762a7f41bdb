#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sminlab {

using Vector = Eigen::VectorXd;

/// Dense square real matrix with finite entries.
///
/// Rows are the objects of interest throughout the library: R_i(B) is
/// `row(i)`, and the subspaces spanned by subsets of rows are derived on
/// demand rather than stored.
class Matrix {
 public:
  Matrix() = default;
  /// Throws InvalidInput if `m` is not square or holds a NaN/infinity.
  explicit Matrix(Eigen::MatrixXd m);

  static Matrix zero(std::size_t n);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t n() const { return static_cast<std::size_t>(data_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  Vector row(std::size_t i) const { return data_.row(static_cast<Eigen::Index>(i)).transpose(); }
  const Eigen::MatrixXd& eigen() const { return data_; }

  /// Largest Euclidean row norm; the scale used by the rank tolerance.
  double max_row_norm() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

 private:
  Eigen::MatrixXd data_;
};

/// A vector is declared inside a span when its residual norm is at most
/// kRankTolerance times the reference scale (the largest row norm).
inline constexpr double kRankTolerance = 1e-10;

/// Orthonormal basis of span(vectors), built by two-pass Gram-Schmidt in
/// input order; a vector whose residual is <= `drop_below` is skipped.
std::vector<Vector> orthonormal_basis(std::span<const Vector> vectors, double drop_below);

/// ||x - P x|| where P projects onto span(rows). Residuals at or below the
/// rank tolerance (relative to the largest norm among x and rows) are
/// reported as exactly 0.
double dist_to_span(const Vector& x, std::span<const Vector> rows);

/// Same, with an explicit reference scale for the rank tolerance.
double dist_to_span(const Vector& x, std::span<const Vector> rows, double scale);

/// dist(R_i(B), H^i(B)) for every i.
std::vector<double> row_distances(const Matrix& b);

/// dist(R_i(B), H^S(B)): distance from row i to the span of the rows
/// outside `subset`. `subset` must contain i.
double dist_to_complement(const Matrix& b, std::size_t i, std::span<const std::size_t> subset);

/// Distances of every row indexed by `subset` to H^subset(B), in the order
/// of `subset`. One orthogonalization is shared by all of them.
std::vector<double> dists_to_complement(const Matrix& b, std::span<const std::size_t> subset);

struct SingularData {
  double s_min = 0.0;
  double s_max = 0.0;
  double hs_inverse = 0.0;  // +infinity when singular at the rank tolerance
  std::vector<double> row_distances;
  bool singular = false;
};

/// Extreme singular values, Hilbert-Schmidt norm of the inverse, and the
/// row-to-hyperplane distances.
SingularData singular_data(const Matrix& b);

/// Singular values in decreasing order.
Vector singular_values(const Matrix& b);

/// True when the smallest singular value is within the rank tolerance of
/// zero relative to the largest row norm.
bool singular_at_tolerance(const Matrix& b, const Vector& sigma);

}  // namespace sminlab
