#pragma once

#include <cstddef>

namespace sminlab {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

inline constexpr double kZ95 = 1.96;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t hits, std::size_t trials, double z = kZ95);

}  // namespace sminlab
