#include "helpers.hpp"
#include "sminlab/error.hpp"
#include "sminlab/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace sminlab;
using testing::rel_err;
using testing::to_plain;

TEST_CASE("matrix construction rejects bad input") {
  CHECK_THROWS_AS(Matrix(Eigen::MatrixXd(2, 3)), InvalidInput);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Matrix{m}, InvalidInput);
  m(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Matrix{m}, InvalidInput);
}

TEST_CASE("dist_to_span examples") {
  Vector x(2);
  x << 3, 4;
  CHECK(dist_to_span(x, std::vector<Vector>{}) == doctest::Approx(5.0));

  Vector e1 = Vector::Unit(2, 0);
  Vector e2 = Vector::Unit(2, 1);
  CHECK(dist_to_span(e1, std::vector<Vector>{e2}) == doctest::Approx(1.0));

  Vector y(3);
  y << 1, 2, 2;
  CHECK(dist_to_span(y, std::vector<Vector>{Vector::Unit(3, 2)}) == doctest::Approx(std::sqrt(5.0)));

  CHECK_THROWS_AS(dist_to_span(y, std::vector<Vector>{e1}), InvalidInput);
}

TEST_CASE("dist_to_span reports exact zero inside the span") {
  Vector a(3), b(3);
  a << 1, 2, 3;
  b << -1, 0, 4;
  const Vector x = 2.0 * a - 3.0 * b;
  CHECK(dist_to_span(x, std::vector<Vector>{a, b}) == 0.0);
}

TEST_CASE("row_distances examples") {
  const auto id = row_distances(Matrix::identity(3));
  for (double d : id) CHECK(d == doctest::Approx(1.0));

  const std::vector<double> diag{2, 3, 4};
  const auto dd = row_distances(Matrix::diagonal(diag));
  CHECK(dd[0] == doctest::Approx(2.0));
  CHECK(dd[1] == doctest::Approx(3.0));
  CHECK(dd[2] == doctest::Approx(4.0));
}

TEST_CASE("row_distances against the inverse oracle") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const Matrix b = testing::gaussian(5, 11, trial);
    const auto inv = oracle::inverse(to_plain(b));
    const auto d = row_distances(b);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(rel_err(d[i], 1.0 / oracle::norm(oracle::column(inv, i))) <= 1e-8);
    }
  }
}

TEST_CASE("row_distances on a singular matrix has zeros where rows are dependent") {
  const Matrix b = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 0}});
  const auto d = row_distances(b);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == doctest::Approx(std::sqrt(10.0 / 14.0)));
}

TEST_CASE("dist_to_complement examples and oracle") {
  const std::vector<std::size_t> s01{0, 1};
  CHECK(dist_to_complement(Matrix::identity(4), 0, s01) == doctest::Approx(1.0));
  const std::vector<double> diag{1.5, 2.5, 3.5, 4.5};
  const std::vector<std::size_t> s12{1, 2};
  CHECK(dist_to_complement(Matrix::diagonal(diag), 1, s12) == doctest::Approx(2.5));
  CHECK_THROWS_AS(dist_to_complement(Matrix::identity(4), 3, s12), InvalidInput);

  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const Matrix b = testing::gaussian(6, 12, trial);
    const std::vector<std::size_t> S{trial % 6, (trial + 2) % 6, (trial + 3) % 6};
    const double want = oracle::distance_to_complement(to_plain(b), S[0], S);
    CHECK(rel_err(dist_to_complement(b, S[0], S), want) <= 1e-8);
    const auto all = dists_to_complement(b, S);
    for (std::size_t k = 0; k < S.size(); ++k) {
      CHECK(rel_err(all[k], oracle::distance_to_complement(to_plain(b), S[k], S)) <= 1e-8);
    }
  }
}

TEST_CASE("singular_data examples") {
  const auto id = singular_data(Matrix::identity(7));
  CHECK(id.s_min == doctest::Approx(1.0));
  CHECK(id.s_max == doctest::Approx(1.0));
  CHECK(id.hs_inverse == doctest::Approx(std::sqrt(7.0)));
  CHECK_FALSE(id.singular);

  const std::vector<double> diag{3, 0.5};
  const auto d = singular_data(Matrix::diagonal(diag));
  CHECK(d.s_min == doctest::Approx(0.5));
  CHECK(d.s_max == doctest::Approx(3.0));
  CHECK(d.hs_inverse == doctest::Approx(2.02759).epsilon(1e-5));

  const auto u = singular_data(Matrix::from_rows({{1, 1}, {0, 1}}));
  CHECK(u.s_min == doctest::Approx(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  CHECK(u.s_min == doctest::Approx(0.61803).epsilon(1e-5));

  const auto z = singular_data(Matrix::from_rows({{1, 2}, {2, 4}}));
  CHECK(z.singular);
  CHECK(z.s_min == 0.0);
  CHECK(std::isinf(z.hs_inverse));
}

TEST_CASE("s_min agrees with the Jacobi eigenvalue oracle") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const Matrix b = testing::gaussian(8, 13, trial);
    // Squaring the matrix costs accuracy in the oracle; 1e-7 is ample.
    CHECK(rel_err(singular_data(b).s_min, oracle::smallest_singular_value(to_plain(b))) <= 1e-7);
  }
}

TEST_CASE("property: linalg identities on random matrices") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 12;
    const Matrix b = testing::gaussian(n, 14, trial);
    const auto sd = singular_data(b);
    REQUIRE_FALSE(sd.singular);
    CHECK(sd.s_max >= sd.s_min);
    CHECK(sd.hs_inverse >= 1.0 / sd.s_min * (1 - 1e-12));
    CHECK(1.0 / sd.s_min >= 1.0 / sd.s_max);

    double sum = 0.0;
    for (double d : sd.row_distances) sum += 1.0 / (d * d);
    CHECK(rel_err(sd.hs_inverse * sd.hs_inverse, sum) <= 1e-8);

    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<std::size_t> single{i};
      CHECK(rel_err(dist_to_complement(b, i, single), sd.row_distances[i]) <= 1e-10);
      // Monotone in S.
      std::vector<std::size_t> S{i};
      double prev = sd.row_distances[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        S.push_back(j);
        const double cur = dist_to_complement(b, i, S);
        CHECK(cur >= prev * (1 - 1e-10));
        prev = cur;
      }
    }

    // Right multiplication by an orthogonal matrix changes nothing.
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(testing::gaussian(n, 15, trial).eigen()).householderQ();
    const auto rotated = singular_data(Matrix(b.eigen() * q));
    CHECK(rel_err(rotated.s_min, sd.s_min) <= 1e-8);
    CHECK(rel_err(rotated.s_max, sd.s_max) <= 1e-8);
    CHECK(rel_err(rotated.hs_inverse, sd.hs_inverse) <= 1e-8);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(rotated.row_distances[i], sd.row_distances[i]) <= 1e-8);
  }
}
