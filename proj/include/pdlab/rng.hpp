#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pdlab {

// Identifies one reproducible random stream. Replica r of a run uses
// stream = base + r, so parallel replicas are order-independent and a
// rerun with the same (seed, stream) is bit-for-bit identical.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Philox4x64-10 counter-based generator (Salmon et al. 2011). The key is
// (seed, stream); the 256-bit counter enumerates blocks of four 64-bit
// outputs. Distinct keys give statistically independent sequences, which
// is what makes replica-parallel runs deterministic under any scheduling.
class PhiloxRng {
 public:
  using result_type = std::uint64_t;

  PhiloxRng() : PhiloxRng(SeedSpec{}) {}
  explicit PhiloxRng(SeedSpec s) : key0_(s.seed), key1_(s.stream) {}
  PhiloxRng(std::uint64_t seed, std::uint64_t stream)
      : PhiloxRng(SeedSpec{seed, stream}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

  result_type operator()() {
    if (idx_ == 4) refill();
    return buf_[idx_++];
  }

  // Raw block function, exposed for known-answer tests.
  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 4>& counter,
      std::uint64_t key0, std::uint64_t key1);

 private:
  void refill();

  std::array<std::uint64_t, 4> ctr_{{0, 0, 0, 0}};
  std::array<std::uint64_t, 4> buf_{};
  std::uint64_t key0_ = 0;
  std::uint64_t key1_ = 0;
  int idx_ = 4;
};

// Distribution helpers. All of them consume the generator through the
// standard URBG interface; each call constructs the std:: distribution
// afresh so no hidden state survives between calls.
double draw_uniform(PhiloxRng& rng);                   // U[0,1), 53-bit
double draw_normal(PhiloxRng& rng);                    // N(0,1)
double draw_gamma(PhiloxRng& rng, double shape);       // Gamma(shape, 1)
double draw_beta(PhiloxRng& rng, double a, double b);  // via two gammas
std::int64_t draw_poisson(PhiloxRng& rng, double mean);

}  // namespace pdlab
