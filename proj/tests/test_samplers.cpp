#include "helpers.hpp"
#include "sminlab/error.hpp"
#include "sminlab/rng.hpp"
#include "sminlab/samplers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace sminlab;

namespace {

constexpr DistKind kContinuous[] = {DistKind::gaussian, DistKind::uniform_entry, DistKind::symmetric_exponential,
                                    DistKind::ball_uniform};

}  // namespace

TEST_CASE("philox streams are reproducible and distinct") {
  Philox a(SeedSpec{7, 3});
  Philox b(SeedSpec{7, 3});
  Philox c(SeedSpec{7, 4});
  Philox d(SeedSpec{8, 3});
  bool differs_c = false;
  bool differs_d = false;
  for (int k = 0; k < 64; ++k) {
    const auto x = a();
    CHECK(x == b());
    differs_c = differs_c || x != c();
    differs_d = differs_d || x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("philox uniform and normal moments") {
  Philox g(SeedSpec{1, 0});
  double s = 0, s2 = 0, n1 = 0, n2 = 0;
  const int N = 200000;
  for (int k = 0; k < N; ++k) {
    const double u = g.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    s += u;
    s2 += u * u;
    const double z = g.normal();
    n1 += z;
    n2 += z * z;
  }
  CHECK(s / N == doctest::Approx(0.5).epsilon(0.01));
  CHECK(s2 / N - (s / N) * (s / N) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
  CHECK(std::abs(n1 / N) < 0.01);
  CHECK(n2 / N == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sample_matrix: bernoulli support and determinism") {
  const auto dist = RowDistribution::of(DistKind::bernoulli);
  const Matrix b = sample_matrix(dist, 3, {99, 0});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK((b(i, j) == 1.0 || b(i, j) == -1.0));
  }
  for (auto kind : {DistKind::gaussian, DistKind::bernoulli, DistKind::uniform_entry,
                    DistKind::symmetric_exponential, DistKind::ball_uniform}) {
    const auto d = RowDistribution::of(kind);
    CHECK(sample_matrix(d, 6, {5, 17}) == sample_matrix(d, 6, {5, 17}));
    CHECK_FALSE(sample_matrix(d, 6, {5, 17}) == sample_matrix(d, 6, {5, 18}));
  }
  CHECK_THROWS_AS(sample_matrix(dist, 0, {0, 0}), InvalidInput);
}

TEST_CASE("sample_matrix: uniform_entry moments") {
  const Matrix m = sample_matrix(RowDistribution::of(DistKind::uniform_entry), 100, {3, 0});
  const double mean = m.eigen().mean();
  const double var = (m.eigen().array() - mean).square().mean();
  CHECK(std::abs(mean) <= 0.05);
  CHECK(var >= 0.9);
  CHECK(var <= 1.1);
  CHECK(m.eigen().cwiseAbs().maxCoeff() <= std::sqrt(3.0));
}

TEST_CASE("sample_matrix: ball_uniform rows stay in the ball") {
  const Matrix m = sample_matrix(RowDistribution::of(DistKind::ball_uniform), 50, {4, 0});
  for (std::size_t i = 0; i < 50; ++i) CHECK(m.row(i).norm() <= std::sqrt(52.0));
}

TEST_CASE("property: continuous kinds are isotropic") {
  for (auto kind : kContinuous) {
    CAPTURE(to_string(kind));
    const auto dist = RowDistribution::of(kind);
    const std::size_t n = 10;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    const int rows = 10000;
    // 1000 matrices of 10 rows each give 10^4 independent rows.
    for (int t = 0; t < rows / static_cast<int>(n); ++t) {
      const Matrix m = sample_matrix(dist, n, {21, static_cast<std::uint64_t>(t)});
      for (std::size_t i = 0; i < n; ++i) {
        mean += m.row(i);
        cov += m.row(i) * m.row(i).transpose();
      }
    }
    mean /= rows;
    cov /= rows;
    CHECK(mean.cwiseAbs().maxCoeff() < 0.05);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          CHECK(cov(i, j) >= 0.85);
          CHECK(cov(i, j) <= 1.15);
        } else {
          CHECK(std::abs(cov(i, j)) <= 0.1);
        }
      }
    }
  }
}

TEST_CASE("property: different trial indices look uncorrelated") {
  const auto dist = RowDistribution::of(DistKind::gaussian);
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  int count = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Matrix a = sample_matrix(dist, 10, {30, 2 * t});
    const Matrix b = sample_matrix(dist, 10, {30, 2 * t + 1});
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 10; ++j) {
        const double x = a(i, j), y = b(i, j);
        sxy += x * y;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        ++count;
      }
    }
  }
  const double cxy = sxy / count - sx / count * sy / count;
  const double corr = cxy / std::sqrt((sxx / count - sx * sx / count / count) * (syy / count - sy * sy / count / count));
  CHECK(count == 10000);
  CHECK(std::abs(corr) <= 0.05);
}

TEST_CASE("density bounds are the closed forms") {
  CHECK(*RowDistribution::of(DistKind::gaussian).density_bound == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
  CHECK(*RowDistribution::of(DistKind::uniform_entry).density_bound == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));
  CHECK(*RowDistribution::of(DistKind::symmetric_exponential).density_bound == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_FALSE(RowDistribution::of(DistKind::bernoulli).density_bound.has_value());
}

TEST_CASE("distribution names round-trip") {
  for (auto kind : {DistKind::gaussian, DistKind::bernoulli, DistKind::uniform_entry,
                    DistKind::symmetric_exponential, DistKind::ball_uniform}) {
    CHECK(dist_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(dist_kind_from_string("cauchy"), InvalidInput);
}

TEST_CASE("build_shift examples") {
  const Matrix c = build_shift(ShiftSpec::counterexample(10), 5);
  const std::vector<double> want{10, 10, 10, 0, 0};
  CHECK(c == Matrix::diagonal(want));
  CHECK(build_shift(ShiftSpec::zero(), 4) == Matrix::zero(4));
  CHECK(build_shift(ShiftSpec::scaled_identity(2.5), 2) == Matrix::from_rows({{2.5, 0}, {0, 2.5}}));
  CHECK_THROWS_AS(build_shift(ShiftSpec::counterexample(10), 2), InvalidInput);
  CHECK_THROWS_AS(build_shift(ShiftSpec::diagonal({1, 2}), 3), InvalidInput);
}

TEST_CASE("parse_shift and describe") {
  CHECK(parse_shift("zero").kind == ShiftKind::zero);
  const auto s = parse_shift("scaled_identity:2.5");
  CHECK(s.kind == ShiftKind::scaled_identity);
  CHECK(s.tau == 2.5);
  const auto d = parse_shift("diagonal:1,2,3");
  CHECK(d.values == std::vector<double>{1, 2, 3});
  CHECK(parse_shift(describe(d)).values == d.values);
  CHECK(parse_shift("counterexample:2500").tau == 2500);
  CHECK_THROWS_AS(parse_shift("rotation:3"), InvalidInput);
  CHECK_THROWS_AS(parse_shift("scaled_identity:abc"), InvalidInput);
}

TEST_CASE("counterexample_witness examples") {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4);
  const Vector x = counterexample_witness(Matrix(ones), 10);
  CHECK(x(0) == doctest::Approx(-0.2));
  CHECK(x(1) == doctest::Approx(-0.2));
  CHECK(x(2) == 1.0);
  CHECK(x(3) == 1.0);

  Eigen::MatrixXd cancel = Eigen::MatrixXd::Ones(5, 5);
  cancel.col(3).setConstant(-1.0);
  const Vector y = counterexample_witness(Matrix(cancel), 5);
  CHECK(y.head(3).isZero());
  CHECK(y.norm() == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(counterexample_witness(Matrix(ones), 3), InvalidInput);
  CHECK_THROWS_AS(counterexample_witness(Matrix::identity(4), 10), InvalidInput);
}

TEST_CASE("property: witness norm lies in [sqrt 2, 2)") {
  const auto dist = RowDistribution::of(DistKind::bernoulli);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const std::size_t n = 3 + t % 60;
    const Matrix b = sample_matrix(dist, n, {40, t});
    const Vector x = counterexample_witness(b, static_cast<double>(n));
    CHECK(x.norm() >= std::sqrt(2.0));
    CHECK(x.norm() < 2.0);
  }
}
