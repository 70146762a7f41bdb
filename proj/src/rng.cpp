#include "sminlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace sminlab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

}  // namespace

Philox::Philox(SeedSpec seed) {
  key_ = {static_cast<std::uint32_t>(seed.master_seed), static_cast<std::uint32_t>(seed.master_seed >> 32)};
  counter_ = {0u, 0u, static_cast<std::uint32_t>(seed.trial_index),
              static_cast<std::uint32_t>(seed.trial_index >> 32)};
}

void Philox::refill() {
  block_ = philox_block(counter_, key_);
  // The lower 64 bits count blocks within the stream.
  if (++counter_[0] == 0) ++counter_[1];
  next_ = 0;
}

Philox::result_type Philox::operator()() {
  if (next_ == 4) refill();
  return block_[static_cast<std::size_t>(next_++)];
}

double Philox::uniform01() {
  const std::uint64_t hi = (*this)() >> 5;  // 27 bits
  const std::uint64_t lo = (*this)() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

double Philox::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = uniform01_open_below();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

}  // namespace sminlab
