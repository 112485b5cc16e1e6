#pragma once

#include "pdlab/params.hpp"
#include "pdlab/path_record.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/simplex.hpp"
#include "pdlab/urn.hpp"

namespace pdlab {

// Moran-type chain on n particles: the state is the partition of the n
// type labels. One step removes a uniformly chosen particle and inserts
// a replacement drawn urn-style from the remaining n-1.
struct ParticleSystem {
  PartitionState partition;

  std::int64_t n() const { return partition.n; }
};

// All particles share one type.
ParticleSystem particle_init_monomorphic(std::int64_t n);

// Stationary start: the urn gives the exact n-sample partition law.
ParticleSystem particle_init_from_urn(const Params& p, std::int64_t n,
                                      PhiloxRng& rng);

// One removal + one insertion; preserves n. With k_r blocks left after
// the removal, the insertion opens a new block with probability
// (theta + alpha*k_r)/(theta + n - 1) and copies block j with
// probability (n_j - alpha)/(theta + n - 1).
void particle_step_inplace(ParticleSystem& s, const Params& p, PhiloxRng& rng);
ParticleSystem particle_step(ParticleSystem s, const Params& p,
                             PhiloxRng& rng);

// Ordered relative block sizes of the current state.
OrderedPoint particle_frequencies(const ParticleSystem& s);

// Run floor(n^2 * t) steps, recording ordered frequencies every record_dt
// units of rescaled time (one step = n^{-2} time units).
PathRecord<OrderedPoint> particle_run_rescaled(const Params& p,
                                               std::int64_t n, double t,
                                               double record_dt,
                                               PhiloxRng& rng);
PathRecord<OrderedPoint> particle_run_rescaled(ParticleSystem init,
                                               const Params& p, double t,
                                               double record_dt,
                                               PhiloxRng& rng);

}  // namespace pdlab
