#include "sminlab/linalg.hpp"

#include "sminlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sminlab {

Matrix::Matrix(Eigen::MatrixXd m) : data_(std::move(m)) {
  if (data_.rows() != data_.cols()) {
    throw InvalidInput("matrix must be square, got " + std::to_string(data_.rows()) + "x" +
                       std::to_string(data_.cols()));
  }
  if (!data_.allFinite()) throw InvalidInput("matrix entries must be finite");
}

Matrix Matrix::zero(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Matrix(Eigen::MatrixXd::Zero(k, k));
}

Matrix Matrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Matrix(Eigen::MatrixXd::Identity(k, k));
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(values.size()),
                                            static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return Matrix(std::move(m));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    if (static_cast<Eigen::Index>(r.size()) != n) throw InvalidInput("from_rows: ragged or non-square rows");
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return Matrix(std::move(m));
}

double Matrix::max_row_norm() const {
  if (data_.rows() == 0) return 0.0;
  return data_.rowwise().norm().maxCoeff();
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw InvalidInput("matrix sum: dimension mismatch");
  return Matrix(a.data_ + b.data_);
}

namespace {

// Subtract the projection onto `basis` twice; one pass loses orthogonality
// when the vector is nearly inside the span.
Vector residual(const Vector& x, const std::vector<Vector>& basis) {
  Vector r = x;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) r -= q.dot(r) * q;
  }
  return r;
}

double tolerance_for(double scale) { return kRankTolerance * scale; }

std::size_t dimension_of(std::span<const Vector> rows, const Vector& x) {
  for (const auto& r : rows) {
    if (r.size() != x.size()) throw InvalidInput("dist_to_span: dimension mismatch");
  }
  return static_cast<std::size_t>(x.size());
}

}  // namespace

std::vector<Vector> orthonormal_basis(std::span<const Vector> vectors, double drop_below) {
  std::vector<Vector> basis;
  basis.reserve(vectors.size());
  for (const auto& v : vectors) {
    Vector r = residual(v, basis);
    const double norm = r.norm();
    if (norm > drop_below && norm > 0.0) basis.push_back(r / norm);
  }
  return basis;
}

double dist_to_span(const Vector& x, std::span<const Vector> rows, double scale) {
  dimension_of(rows, x);
  const double tol = tolerance_for(scale);
  const auto basis = orthonormal_basis(rows, tol);
  const double d = residual(x, basis).norm();
  return d <= tol ? 0.0 : d;
}

double dist_to_span(const Vector& x, std::span<const Vector> rows) {
  dimension_of(rows, x);
  double scale = x.norm();
  for (const auto& r : rows) scale = std::max(scale, r.norm());
  return dist_to_span(x, rows, scale);
}

namespace {

std::vector<Vector> rows_outside(const Matrix& b, std::span<const std::size_t> subset) {
  std::vector<char> excluded(b.n(), 0);
  for (auto s : subset) excluded[s] = 1;
  std::vector<Vector> rows;
  rows.reserve(b.n());
  for (std::size_t j = 0; j < b.n(); ++j) {
    if (!excluded[j]) rows.push_back(b.row(j));
  }
  return rows;
}

void check_subset(const Matrix& b, std::span<const std::size_t> subset) {
  for (auto s : subset) {
    if (s >= b.n()) throw InvalidInput("row index " + std::to_string(s) + " out of range");
  }
}

}  // namespace

std::vector<double> dists_to_complement(const Matrix& b, std::span<const std::size_t> subset) {
  check_subset(b, subset);
  const double tol = tolerance_for(b.max_row_norm());
  const auto rows = rows_outside(b, subset);
  const auto basis = orthonormal_basis(rows, tol);
  std::vector<double> out;
  out.reserve(subset.size());
  for (auto s : subset) {
    const double d = residual(b.row(s), basis).norm();
    out.push_back(d <= tol ? 0.0 : d);
  }
  return out;
}

double dist_to_complement(const Matrix& b, std::size_t i, std::span<const std::size_t> subset) {
  if (std::find(subset.begin(), subset.end(), i) == subset.end()) {
    throw InvalidInput("dist_to_complement: index " + std::to_string(i) + " is not in the subset");
  }
  const std::size_t one[] = {i};
  check_subset(b, one);
  check_subset(b, subset);
  const double tol = tolerance_for(b.max_row_norm());
  const auto basis = orthonormal_basis(rows_outside(b, subset), tol);
  const double d = residual(b.row(i), basis).norm();
  return d <= tol ? 0.0 : d;
}

std::vector<double> row_distances(const Matrix& b) {
  const std::size_t n = b.n();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const double tol = tolerance_for(b.max_row_norm());
  if (n == 1) {
    const double d = b.row(0).norm();
    out[0] = d <= tol ? 0.0 : d;
    return out;
  }

  // Rows of B are the columns of B^T = QR, and Q^T R_j = R.col(j). Deleting
  // column i and restoring triangular form with Givens rotations leaves the
  // other rows spanning the leading n-1 coordinates; the last coordinate of
  // the rotated R.col(i) is then the distance. The diagonal of the rotated
  // factor holds each row's residual against its predecessors, which is the
  // same quantity the Gram-Schmidt route drops on, so a small diagonal sends
  // that row to the general routine.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(b.eigen().transpose());
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  const auto nn = static_cast<Eigen::Index>(n);

  for (Eigen::Index i = 0; i < nn; ++i) {
    Eigen::MatrixXd w(nn, nn - 1);
    w.leftCols(i) = r.leftCols(i);
    w.rightCols(nn - 1 - i) = r.rightCols(nn - 1 - i);
    Vector z = r.col(i);

    for (Eigen::Index k = i; k < nn - 1; ++k) {
      Eigen::JacobiRotation<double> g;
      g.makeGivens(w(k, k), w(k + 1, k));
      w.applyOnTheLeft(k, k + 1, g.adjoint());
      z.applyOnTheLeft(k, k + 1, g.adjoint());
    }

    bool full_rank = true;
    for (Eigen::Index k = 0; k < nn - 1; ++k) {
      if (std::abs(w(k, k)) <= tol) {
        full_rank = false;
        break;
      }
    }
    double d = 0.0;
    if (full_rank) {
      d = std::abs(z(nn - 1));
      d = d <= tol ? 0.0 : d;
    } else {
      const std::size_t subset[] = {static_cast<std::size_t>(i)};
      d = dists_to_complement(b, subset)[0];
    }
    out[static_cast<std::size_t>(i)] = d;
  }
  return out;
}

Vector singular_values(const Matrix& b) {
  if (b.n() == 0) return Vector{};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b.eigen());
  return svd.singularValues();
}

bool singular_at_tolerance(const Matrix& b, const Vector& sigma) {
  if (sigma.size() == 0) return false;
  return sigma(sigma.size() - 1) <= tolerance_for(b.max_row_norm());
}

SingularData singular_data(const Matrix& b) {
  SingularData out;
  if (b.n() == 0) throw InvalidInput("singular_data: empty matrix");
  const Vector sigma = singular_values(b);
  out.s_max = sigma(0);
  out.s_min = sigma(sigma.size() - 1);
  out.row_distances = row_distances(b);

  const bool zero_distance =
      std::any_of(out.row_distances.begin(), out.row_distances.end(), [](double d) { return d == 0.0; });
  out.singular = zero_distance || singular_at_tolerance(b, sigma);
  if (out.singular) {
    out.s_min = 0.0;
    out.hs_inverse = std::numeric_limits<double>::infinity();
    return out;
  }
  // From the spectrum, independently of the row distances.
  out.hs_inverse = std::sqrt((1.0 / sigma.array().square()).sum());
  return out;
}

}  // namespace sminlab
