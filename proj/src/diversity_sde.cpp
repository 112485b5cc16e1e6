#include "pdlab/diversity_sde.hpp"

#include <cmath>
#include <string>

namespace pdlab {

const char* to_string(ZeroBoundary b) {
  switch (b) {
    case ZeroBoundary::absorbing: return "absorbing";
    case ZeroBoundary::instantaneously_reflecting:
      return "instantaneously_reflecting";
    case ZeroBoundary::entrance: return "entrance";
  }
  return "?";
}

const char* to_string(InfinityBoundary b) {
  switch (b) {
    case InfinityBoundary::natural_attracting: return "natural_attracting";
    case InfinityBoundary::natural_nonattracting:
      return "natural_nonattracting";
  }
  return "?";
}

const char* to_string(Recurrence r) {
  switch (r) {
    case Recurrence::null_recurrent: return "null_recurrent";
    case Recurrence::transient: return "transient";
  }
  return "?";
}

BoundaryReport classify_boundary(const Params& p) {
  if (p.alpha == 0.0) {
    throw AlphaZero("alpha = 0 has no diffusive diversity; S moves "
                    "deterministically at rate theta");
  }
  BoundaryReport r{};
  if (p.theta <= 0.0) {
    r.at_zero = ZeroBoundary::absorbing;
  } else if (p.theta < p.alpha) {
    r.at_zero = ZeroBoundary::instantaneously_reflecting;
  } else {
    r.at_zero = ZeroBoundary::entrance;
  }
  r.at_infinity = (p.theta <= p.alpha) ? InfinityBoundary::natural_nonattracting
                                       : InfinityBoundary::natural_attracting;
  r.recurrence = (p.theta == p.alpha) ? Recurrence::null_recurrent
                                      : Recurrence::transient;
  return r;
}

SState euler_step(SState x, const Params& p, double dt, PhiloxRng& rng) {
  if (!(dt > 0.0)) throw ConfigError("euler_step needs dt > 0");
  if (x.absorbed) return x;
  double diff = std::sqrt(2.0 * p.alpha * std::max(x.s, 0.0));
  double s = x.s + p.theta * dt + diff * std::sqrt(dt) * draw_normal(rng);
  s = std::max(s, 0.0);
  return SState{s, p.theta <= 0.0 && s == 0.0};
}

SState exact_transition(SState x, const Params& p, double t, PhiloxRng& rng) {
  if (!(p.theta > 0.0) || !(p.alpha > 0.0)) {
    throw UnsupportedRegime(
        "exact transition needs theta > 0 and alpha > 0 (got theta = " +
        std::to_string(p.theta) + ", alpha = " + std::to_string(p.alpha) +
        "); use euler_step instead");
  }
  if (!(t > 0.0)) throw ConfigError("exact_transition needs t > 0");
  std::int64_t shift = draw_poisson(rng, x.s / (p.alpha * t));
  double g = draw_gamma(rng, p.theta / p.alpha + static_cast<double>(shift));
  return SState{p.alpha * t * g, false};
}

double generator_apply(double f_prime, double f_second, double s,
                       const Params& p) {
  return p.theta * f_prime + p.alpha * s * f_second;
}

double generator_apply(const std::function<double(double)>& f, double s,
                       const Params& p) {
  const double h = 1e-5 * std::max(1.0, std::abs(s));
  const double fp = (f(s + h) - f(s - h)) / (2.0 * h);
  const double fpp = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
  return generator_apply(fp, fpp, s, p);
}

}  // namespace pdlab
