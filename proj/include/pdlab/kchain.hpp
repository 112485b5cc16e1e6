#pragma once

#include <cstdint>

#include "pdlab/params.hpp"
#include "pdlab/particle.hpp"
#include "pdlab/path_record.hpp"
#include "pdlab/rng.hpp"

namespace pdlab {

// The species-count chain K_n(m). The exact kernel needs the singleton
// count of the underlying particle system (K alone is not Markov), so the
// exact variant carries the particle state; the markovized variant
// replaces M1 by alpha*k and is a bona fide Markov chain on {1,...,n}.
enum class KVariant { exact, markovized };

struct KChainState {
  std::int64_t n = 0;
  std::int64_t k = 1;
  KVariant variant = KVariant::markovized;
  std::int64_t m1 = 0;        // exact variant only
  ParticleSystem particles;   // exact variant only
};

KChainState k_init_markovized(std::int64_t n, std::int64_t k0);
KChainState k_init_exact(const Params& p, std::int64_t n, PhiloxRng& rng);

// Exact kernel probabilities given (k, m1):
//   p(k,k+1) = (1 - m1/n) (theta + alpha k) / (theta + n - 1)
//   p(k,k-1) = m1 (n - 1 - alpha (k-1)) / (n (theta + n - 1))
// The k = n and k = 1 boundary cases vanish automatically (k = n forces
// m1 = n, k = 1 with n >= 2 forces m1 = 0).
double k_up_prob_exact(std::int64_t n, std::int64_t k, std::int64_t m1,
                       const Params& p);
double k_down_prob_exact(std::int64_t n, std::int64_t k, std::int64_t m1,
                         const Params& p);

// Markovized kernel (M1 ~ alpha k), with p(1,0) = 0 and p(n,n+1) = 0
// enforced explicitly and probabilities clamped to [0,1].
double k_up_prob(std::int64_t n, std::int64_t k, const Params& p);
double k_down_prob(std::int64_t n, std::int64_t k, const Params& p);

// One transition. The exact step advances the underlying particle system
// and reads off (k, m1); the markovized step samples the kernel above and
// throws InvalidProbability if clamping ever costs more than 1e-6 mass.
void k_step_exact(KChainState& s, const Params& p, PhiloxRng& rng);
void k_step_markovized(KChainState& s, const Params& p, PhiloxRng& rng);
void k_step(KChainState& s, const Params& p, PhiloxRng& rng);

// Space-time rescaled run. For alpha > 0: floor(n^{1+alpha} t) steps and
// values K/n^alpha. For alpha = 0: floor(n log n t) steps and values
// K/log n. k0 < 1 means: start the markovized chain at ceil(0.5 n^alpha),
// and the exact chain from an urn draw (k0 is ignored there).
PathRecord<double> k_run_rescaled(const Params& p, std::int64_t n, double t,
                                  KVariant variant, PhiloxRng& rng,
                                  std::int64_t k0 = -1,
                                  double record_dt = -1.0);

}  // namespace pdlab
