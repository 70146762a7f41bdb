#pragma once

#include "oracles.hpp"
#include "sminlab/linalg.hpp"
#include "sminlab/samplers.hpp"

#include <cmath>

namespace testing {

inline oracle::Mat to_plain(const sminlab::Matrix& m) {
  oracle::Mat out(m.n(), oracle::Vec(m.n()));
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

inline oracle::Vec to_plain(const sminlab::Vector& v) { return {v.data(), v.data() + v.size()}; }

inline sminlab::Matrix gaussian(std::size_t n, std::uint64_t seed, std::uint64_t trial = 0) {
  return sminlab::sample_matrix(sminlab::RowDistribution::of(sminlab::DistKind::gaussian), n, {seed, trial});
}

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

}  // namespace testing
