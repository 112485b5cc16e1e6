#include "pdlab/rng.hpp"

#include <random>

namespace pdlab {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline void philox_round(std::array<std::uint64_t, 4>& x, std::uint64_t k0,
                         std::uint64_t k1) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, x[0], hi0, lo0);
  mulhilo(kMul1, x[2], hi1, lo1);
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint64_t, 4> PhiloxRng::block(
    const std::array<std::uint64_t, 4>& counter, std::uint64_t key0,
    std::uint64_t key1) {
  std::array<std::uint64_t, 4> x = counter;
  philox_round(x, key0, key1);
  for (int r = 1; r < 10; ++r) {
    key0 += kWeyl0;
    key1 += kWeyl1;
    philox_round(x, key0, key1);
  }
  return x;
}

void PhiloxRng::refill() {
  buf_ = block(ctr_, key0_, key1_);
  idx_ = 0;
  // 256-bit little-endian counter increment.
  for (int w = 0; w < 4; ++w) {
    if (++ctr_[w] != 0) break;
  }
}

double draw_uniform(PhiloxRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw_normal(PhiloxRng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(rng);
}

double draw_gamma(PhiloxRng& rng, double shape) {
  std::gamma_distribution<double> d(shape, 1.0);
  return d(rng);
}

double draw_beta(PhiloxRng& rng, double a, double b) {
  double x = draw_gamma(rng, a);
  double y = draw_gamma(rng, b);
  double s = x + y;
  if (s <= 0.0) return 0.5;  // both gammas underflowed; vanishing probability
  return x / s;
}

std::int64_t draw_poisson(PhiloxRng& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> d(mean);
  return d(rng);
}

}  // namespace pdlab
