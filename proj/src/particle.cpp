#include "pdlab/particle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pdlab {

ParticleSystem particle_init_monomorphic(std::int64_t n) {
  if (n < 1) throw ConfigError("particle system needs n >= 1");
  ParticleSystem s;
  s.partition.block_sizes = {n};
  s.partition.n = n;
  s.partition.m1 = (n == 1) ? 1 : 0;
  return s;
}

ParticleSystem particle_init_from_urn(const Params& p, std::int64_t n,
                                      PhiloxRng& rng) {
  ParticleSystem s;
  s.partition = urn_run(p, n, rng);
  return s;
}

void particle_step_inplace(ParticleSystem& s, const Params& p,
                           PhiloxRng& rng) {
  PartitionState& part = s.partition;
  assert(part.n >= 2);

  // Remove a uniformly chosen particle: pick its block proportionally to
  // block size.
  const std::int64_t n = part.n;
  std::int64_t pick =
      std::min<std::int64_t>(static_cast<std::int64_t>(draw_uniform(rng) * n),
                             n - 1);
  std::size_t j = 0;
  for (std::int64_t acc = 0;; ++j) {
    acc += part.block_sizes[j];
    if (pick < acc) break;
  }
  if (part.block_sizes[j] == 1) {
    --part.m1;
    part.block_sizes[j] = part.block_sizes.back();
    part.block_sizes.pop_back();
  } else {
    --part.block_sizes[j];
    if (part.block_sizes[j] == 1) ++part.m1;
  }
  part.n = n - 1;

  // Insert urn-style from the n-1 survivors.
  urn_next_inplace(part, p, rng);
}

ParticleSystem particle_step(ParticleSystem s, const Params& p,
                             PhiloxRng& rng) {
  particle_step_inplace(s, p, rng);
  return s;
}

OrderedPoint particle_frequencies(const ParticleSystem& s) {
  const auto& blocks = s.partition.block_sizes;
  Vector z(blocks.size());
  const double n = static_cast<double>(s.partition.n);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    z[static_cast<Index>(j)] = blocks[j] / n;
  }
  std::sort(z.data(), z.data() + z.size(), std::greater<double>());
  return OrderedPoint{std::move(z)};
}

PathRecord<OrderedPoint> particle_run_rescaled(ParticleSystem init,
                                               const Params& p, double t,
                                               double record_dt,
                                               PhiloxRng& rng) {
  if (init.n() < 2) throw ConfigError("rescaled particle run needs n >= 2");
  if (!(t >= 0.0) || !(record_dt > 0.0)) {
    throw ConfigError("particle run needs t >= 0 and record_dt > 0");
  }
  const double n2 = static_cast<double>(init.n()) * init.n();
  const std::int64_t steps = static_cast<std::int64_t>(std::floor(n2 * t));
  const std::int64_t stride = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(record_dt * n2)));

  PathRecord<OrderedPoint> path;
  path.times.push_back(0.0);
  path.values.push_back(particle_frequencies(init));
  for (std::int64_t m = 1; m <= steps; ++m) {
    particle_step_inplace(init, p, rng);
    if (m % stride == 0 || m == steps) {
      path.times.push_back(m / n2);
      path.values.push_back(particle_frequencies(init));
    }
  }
  return path;
}

PathRecord<OrderedPoint> particle_run_rescaled(const Params& p,
                                               std::int64_t n, double t,
                                               double record_dt,
                                               PhiloxRng& rng) {
  return particle_run_rescaled(particle_init_from_urn(p, n, rng), p, t,
                               record_dt, rng);
}

}  // namespace pdlab
