#include "oracles.hpp"
#include "sminlab/alphaeta.hpp"
#include "sminlab/error.hpp"
#include "sminlab/io.hpp"
#include "sminlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace sminlab;

namespace {

AlphaEtaStructure random_structure(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t psi,
                                   std::size_t lambda) {
  Philox rng(SeedSpec{seed, 0});
  const auto pick = [&](std::size_t k) { return static_cast<std::uint16_t>(rng.uniform01() * static_cast<double>(k)); };
  std::vector<std::vector<double>> factors(n, std::vector<double>(m));
  for (auto& f : factors) {
    for (double& p : f) p = 0.1 + rng.uniform01();
    const double t = std::accumulate(f.begin(), f.end(), 0.0);
    for (double& p : f) p /= t;
  }
  AlphaEtaStructure s;
  s.space = DiscreteProductSpace(factors);
  s.psi_labels.resize(psi);
  std::iota(s.psi_labels.begin(), s.psi_labels.end(), 1);
  s.lambda_labels.resize(lambda);
  std::iota(s.lambda_labels.begin(), s.lambda_labels.end(), 1);
  const std::size_t atoms = s.space.atom_count();
  s.in_event.resize(atoms);
  for (auto& e : s.in_event) e = rng.uniform01() < 0.6 ? 1 : 0;
  s.classes.assign(n, std::vector<std::uint16_t>(atoms));
  s.event_partition.assign(n, std::vector<std::uint16_t>(atoms, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < atoms; ++w) {
      s.classes[i][w] = pick(psi);
      if (s.in_event[w]) s.event_partition[i][w] = pick(lambda);
    }
  }
  return s;
}

AlphaEtaStructure whole_space(std::size_t n, std::size_t m) {
  AlphaEtaStructure s;
  s.space = DiscreteProductSpace(std::vector<std::vector<double>>(n, std::vector<double>(m, 1.0 / static_cast<double>(m))));
  s.psi_labels = {1};
  s.lambda_labels = {1};
  s.classes.assign(n, std::vector<std::uint16_t>(s.space.atom_count(), 0));
  s.in_event.assign(s.space.atom_count(), 1);
  s.event_partition.assign(n, std::vector<std::uint16_t>(s.space.atom_count(), 0));
  return s;
}

}  // namespace

TEST_CASE("product space validation") {
  CHECK_THROWS_AS(DiscreteProductSpace({{0.5, 0.4}}), InvalidInput);
  CHECK_THROWS_AS(DiscreteProductSpace({{1.0, 0.0}}), InvalidInput);
  CHECK_THROWS_AS(DiscreteProductSpace(std::vector<std::vector<double>>{}), InvalidInput);
  CHECK_THROWS_AS(DiscreteProductSpace(std::vector<std::vector<double>>(7, std::vector<double>(10, 0.1))),
                  UnsupportedSize);
  const DiscreteProductSpace s({{0.5, 0.5}, {0.2, 0.3, 0.5}});
  CHECK(s.atom_count() == 6);
  CHECK(s.coordinate(5, 0) == 1);
  CHECK(s.coordinate(5, 1) == 2);
  CHECK(s.with_coordinate(5, 1, 0) == 1);
  CHECK(s.probability(5) == doctest::Approx(0.25));
}

TEST_CASE("structure validation") {
  auto s = whole_space(2, 2);
  CHECK_NOTHROW(s.validate());
  s.classes[0][1] = 3;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
}

TEST_CASE("sharp, eta, alpha on the whole space") {
  const auto s = whole_space(3, 4);
  CHECK(sharp(s, 0) == 3);
  CHECK(eta(s, 1, 7) == 0);
  CHECK(alpha(s, 2, 5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sharp(s, 1), InvalidInput);
  const auto c = verify_alpharho(s);
  CHECK(c.lhs == doctest::Approx(1.0));  // sum_i 1/3 over three coordinates
  CHECK(c.holds);
}

TEST_CASE("alpha of a single-atom section is 1/p") {
  auto s = whole_space(2, 2);
  s.space = DiscreteProductSpace({{0.25, 0.75}, {0.5, 0.5}});
  s.event_partition[0] = {0, 0, 0, 0};
  s.lambda_labels = {1, 2};
  // Coordinate 0 splits the event by its own value.
  s.event_partition[0] = {0, 1, 0, 1};
  CHECK(alpha(s, 0, 0) == doctest::Approx(4.0));
  CHECK(alpha(s, 0, 1) == doctest::Approx(4.0 / 3.0));
  s.in_event[3] = 0;
  CHECK_THROWS_AS(alpha(s, 0, 3), InvalidInput);
}

TEST_CASE("empty event gives lhs 0") {
  auto s = whole_space(2, 3);
  std::fill(s.in_event.begin(), s.in_event.end(), 0);
  const auto c = verify_alpharho(s);
  CHECK(c.lhs == 0.0);
  CHECK(c.holds);
}

TEST_CASE("eta tie goes to the largest psi") {
  AlphaEtaStructure s;
  s.space = DiscreteProductSpace({{0.5, 0.5}});
  s.psi_labels = {1, 2};
  s.lambda_labels = {1};
  s.classes = {{0, 1}};
  s.in_event = {1, 1};
  s.event_partition = {{0, 0}};
  CHECK(eta(s, 0, 0) == 1);
}

TEST_CASE("cube example") {
  const auto s = cube_example_structure(4, 10.0, 40);
  CHECK(s.space.atom_count() == 2'560'000);
  const double want = 1.0 - std::pow(1.0 - 1.0 / 40.0, 2) * std::pow(1.0 - 1.0 / 20.0, 2);
  CHECK(s.event_probability() == doctest::Approx(want).epsilon(1e-12));
  CHECK(s.event_probability() == doctest::Approx(0.14206).epsilon(1e-4));
  const auto sh = sharp_all(s);
  CHECK(sh[0] == 2);
  CHECK(sh[1] == 2);
  CHECK(eta(s, 0, 12345) == 0);
  const auto c = verify_alpharho(s);
  CHECK(c.holds);
  CHECK(c.lhs <= 4.0);
  CHECK(s.event_probability() <= 4.0 / 10.0);

  CHECK_THROWS_AS(cube_example_structure(5, 10.0, 40), InvalidInput);
  CHECK_THROWS_AS(cube_example_structure(4, 10.0, 30), InvalidInput);
  CHECK_THROWS_AS(cube_example_structure(4, 1.0, 40), InvalidInput);
}

TEST_CASE("sharp agrees with the subset definition") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_structure(seed, 3, 3, 3, 2);
    std::vector<std::vector<int>> classes(3, std::vector<int>(s.space.atom_count()));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t w = 0; w < s.space.atom_count(); ++w) classes[i][w] = s.classes[i][w];
    }
    for (std::size_t p = 0; p < 3; ++p) {
      CHECK(sharp(s, p) == oracle::sharp_by_subsets(classes, s.space.atom_count(), static_cast<int>(p)));
    }
  }
}

TEST_CASE("property: eta section bound and coordinate independence") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const std::size_t psi = 1 + seed % 3;
    const auto s = random_structure(seed, 3, 4, psi, 2);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t w = 0; w < s.space.atom_count(); ++w) {
        const auto e = eta(s, i, w);
        CHECK(class_section_probability(s, i, w, e) >= 1.0 / static_cast<double>(psi) - 1e-12);
        for (std::size_t v = 0; v < 4; ++v) {
          const std::size_t w2 = s.space.with_coordinate(w, i, v);
          CHECK(eta(s, i, w2) == e);
          if (s.in_event[w] && s.in_event[w2] && s.event_partition[i][w] == s.event_partition[i][w2]) {
            CHECK(alpha(s, i, w2) == doctest::Approx(alpha(s, i, w)));
          }
        }
      }
    }
  }
}

TEST_CASE("property: integral inequality and its consequence") {
  for (std::uint64_t seed = 200; seed < 300; ++seed) {
    const auto s = random_structure(seed, 1 + seed % 4, 2 + seed % 4, 1 + seed % 3, 1 + (seed / 3) % 3);
    const auto c = verify_alpharho(s);
    CHECK(c.holds);
    // Direct per-atom evaluation of the same sum.
    double lhs = 0.0;
    double min_sum = std::numeric_limits<double>::infinity();
    const auto sh = sharp_all(s);
    for (std::size_t w = 0; w < s.space.atom_count(); ++w) {
      if (!s.in_event[w]) continue;
      double sum = 0.0;
      for (std::size_t i = 0; i < s.space.n(); ++i) sum += alpha(s, i, w) / static_cast<double>(sh[eta(s, i, w)]);
      lhs += s.space.probability(w) * sum;
      min_sum = std::min(min_sum, sum);
    }
    CHECK(c.lhs == doctest::Approx(lhs).epsilon(1e-12));
    if (s.event_probability() > 0) CHECK(s.event_probability() <= c.rhs / min_sum + 1e-12);
  }
}

TEST_CASE("structure JSON round-trip") {
  const auto s = random_structure(7, 2, 3, 2, 2);
  const auto back = structure_from_json(to_json(s));
  CHECK(back.space.factors() == s.space.factors());
  CHECK(back.classes == s.classes);
  CHECK(back.in_event == s.in_event);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t w = 0; w < s.space.atom_count(); ++w) {
      if (s.in_event[w]) CHECK(back.event_partition[i][w] == s.event_partition[i][w]);
    }
  }
  auto j = to_json(s);
  j["event"].push_back(999);
  CHECK_THROWS_AS(structure_from_json(j), InvalidInput);
}
