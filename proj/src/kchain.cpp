#include "pdlab/kchain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdlab {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

KChainState k_init_markovized(std::int64_t n, std::int64_t k0) {
  if (n < 2) throw ConfigError("k-chain needs n >= 2");
  if (k0 < 1 || k0 > n) throw ConfigError("k0 must lie in [1, n]");
  KChainState s;
  s.n = n;
  s.k = k0;
  s.variant = KVariant::markovized;
  return s;
}

KChainState k_init_exact(const Params& p, std::int64_t n, PhiloxRng& rng) {
  if (n < 2) throw ConfigError("k-chain needs n >= 2");
  KChainState s;
  s.n = n;
  s.variant = KVariant::exact;
  s.particles = particle_init_from_urn(p, n, rng);
  s.k = s.particles.partition.k();
  s.m1 = s.particles.partition.m1;
  return s;
}

double k_up_prob_exact(std::int64_t n, std::int64_t k, std::int64_t m1,
                       const Params& p) {
  if (k >= n) return 0.0;
  return (1.0 - static_cast<double>(m1) / n) * (p.theta + p.alpha * k) /
         (p.theta + n - 1);
}

double k_down_prob_exact(std::int64_t n, std::int64_t k, std::int64_t m1,
                         const Params& p) {
  if (k <= 1) return 0.0;
  return static_cast<double>(m1) * (n - 1 - p.alpha * (k - 1)) /
         (static_cast<double>(n) * (p.theta + n - 1));
}

double k_up_prob(std::int64_t n, std::int64_t k, const Params& p) {
  if (k >= n) return 0.0;
  double raw = (1.0 - p.alpha * k / n) * (p.theta + p.alpha * k) /
               (p.theta + n - 1);
  return clamp01(raw);
}

double k_down_prob(std::int64_t n, std::int64_t k, const Params& p) {
  if (k <= 1) return 0.0;
  double raw = p.alpha * k * (n - 1 - p.alpha * (k - 1)) /
               (static_cast<double>(n) * (p.theta + n - 1));
  return clamp01(raw);
}

void k_step_exact(KChainState& s, const Params& p, PhiloxRng& rng) {
  if (s.variant != KVariant::exact) {
    throw ConfigError("k_step_exact on a markovized chain");
  }
  particle_step_inplace(s.particles, p, rng);
  s.k = s.particles.partition.k();
  s.m1 = s.particles.partition.m1;
}

void k_step_markovized(KChainState& s, const Params& p, PhiloxRng& rng) {
  if (s.variant != KVariant::markovized) {
    throw ConfigError("k_step_markovized on an exact chain");
  }
  double up_raw = (s.k >= s.n) ? 0.0
                               : (1.0 - p.alpha * s.k / s.n) *
                                     (p.theta + p.alpha * s.k) /
                                     (p.theta + s.n - 1);
  double down_raw =
      (s.k <= 1) ? 0.0
                 : p.alpha * s.k * (s.n - 1 - p.alpha * (s.k - 1)) /
                       (static_cast<double>(s.n) * (p.theta + s.n - 1));
  double up = clamp01(up_raw);
  double down = clamp01(down_raw);
  double clipped = std::abs(up - up_raw) + std::abs(down - down_raw) +
                   std::max(0.0, up + down - 1.0);
  if (clipped > 1e-6) {
    throw InvalidProbability("markovized kernel clamped " +
                             std::to_string(clipped) + " of mass at k = " +
                             std::to_string(s.k) + ", n = " +
                             std::to_string(s.n));
  }
  if (up + down > 1.0) {
    double scale = 1.0 / (up + down);
    up *= scale;
    down *= scale;
  }
  double u = draw_uniform(rng);
  if (u < up) {
    ++s.k;
  } else if (u < up + down) {
    --s.k;
  }
}

void k_step(KChainState& s, const Params& p, PhiloxRng& rng) {
  if (s.variant == KVariant::exact) {
    k_step_exact(s, p, rng);
  } else {
    k_step_markovized(s, p, rng);
  }
}

PathRecord<double> k_run_rescaled(const Params& p, std::int64_t n, double t,
                                  KVariant variant, PhiloxRng& rng,
                                  std::int64_t k0, double record_dt) {
  if (n < 2) throw ConfigError("k_run_rescaled needs n >= 2");
  if (!(t >= 0.0)) throw ConfigError("k_run_rescaled needs t >= 0");

  // alpha > 0: clock n^{1+alpha}, scale n^alpha.
  // alpha = 0: clock n log n, scale log n.
  const double scale =
      (p.alpha > 0.0) ? std::pow(static_cast<double>(n), p.alpha)
                      : std::log(static_cast<double>(n));
  const double clock =
      (p.alpha > 0.0) ? std::pow(static_cast<double>(n), 1.0 + p.alpha)
                      : static_cast<double>(n) * std::log(static_cast<double>(n));

  KChainState s;
  if (variant == KVariant::markovized) {
    std::int64_t start =
        (k0 >= 1) ? k0
                  : static_cast<std::int64_t>(std::ceil(0.5 * scale));
    s = k_init_markovized(n, std::min(start, n));
  } else {
    s = k_init_exact(p, n, rng);
  }

  if (record_dt <= 0.0) record_dt = (t > 0.0) ? t : 1.0;
  const std::int64_t steps = static_cast<std::int64_t>(std::floor(clock * t));
  const std::int64_t stride = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(record_dt * clock)));

  PathRecord<double> path;
  path.times.push_back(0.0);
  path.values.push_back(s.k / scale);
  for (std::int64_t m = 1; m <= steps; ++m) {
    k_step(s, p, rng);
    if (m % stride == 0 || m == steps) {
      path.times.push_back(m / clock);
      path.values.push_back(s.k / scale);
    }
  }
  return path;
}

}  // namespace pdlab
