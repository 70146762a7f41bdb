#include "sminlab/stats.hpp"

#include "sminlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace sminlab {

Interval wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) throw InvalidInput("wilson_interval: no trials");
  if (hits > trials) throw InvalidInput("wilson_interval: more hits than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval out{center - half, center + half};
  // Rounding can push an endpoint just past p_hat at 0 or 1 hits.
  out.low = std::clamp(std::min(out.low, p), 0.0, 1.0);
  out.high = std::clamp(std::max(out.high, p), 0.0, 1.0);
  return out;
}

}  // namespace sminlab
