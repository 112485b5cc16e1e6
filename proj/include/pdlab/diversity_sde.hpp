#pragma once

#include <functional>

#include "pdlab/params.hpp"
#include "pdlab/rng.hpp"

namespace pdlab {

// State of the diversity diffusion dS = theta dt + sqrt(2 alpha S) dB.
// absorbed implies s == 0 and can only be set when theta <= 0, where the
// origin is a trap.
struct SState {
  double s = 0.0;
  bool absorbed = false;
};

enum class ZeroBoundary { absorbing, instantaneously_reflecting, entrance };
enum class InfinityBoundary { natural_attracting, natural_nonattracting };
enum class Recurrence { null_recurrent, transient };

struct BoundaryReport {
  ZeroBoundary at_zero;
  InfinityBoundary at_infinity;
  Recurrence recurrence;
};

const char* to_string(ZeroBoundary b);
const char* to_string(InfinityBoundary b);
const char* to_string(Recurrence r);

// Boundary behavior of the diffusion, by the theta/alpha thresholds:
// s = 0 is absorbing for theta <= 0, instantaneously reflecting for
// 0 < theta < alpha, entrance for theta >= alpha; s = infinity is natural,
// attracting iff theta > alpha; the process is null recurrent iff
// theta == alpha. Requires alpha > 0 (alpha = 0 degenerates to the
// deterministic motion s + theta t).
BoundaryReport classify_boundary(const Params& p);

// Full-truncation Euler step: the volatility argument is floored at 0 and
// the result is truncated at 0, so no mass is injected below the origin
// and absorption for theta <= 0 is respected. An absorbed state is frozen.
SState euler_step(SState x, const Params& p, double dt, PhiloxRng& rng);

// One draw from the exact time-t marginal, for theta > 0, alpha > 0.
// S is (alpha/2) times a squared Bessel process of dimension 2 theta/alpha,
// whose transition is a scaled noncentral chi-square; sampling reduces to
//   S_t = alpha t Gamma(theta/alpha + N),  N ~ Poisson(s / (alpha t)).
SState exact_transition(SState x, const Params& p, double t, PhiloxRng& rng);

// Generator L f(s) = theta f'(s) + alpha s f''(s), with caller-supplied
// derivatives or central finite differences (h = 1e-5 max(1,|s|)).
double generator_apply(double f_prime, double f_second, double s,
                       const Params& p);
double generator_apply(const std::function<double(double)>& f, double s,
                       const Params& p);

}  // namespace pdlab
