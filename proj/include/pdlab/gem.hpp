#pragma once

#include <cstdint>

#include "pdlab/params.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/simplex.hpp"

namespace pdlab {

// Stick-breaking weights V_1..V_K with the undistributed residual mass
// prod_i (1 - W_i). On successful return residual < the trunc argument
// and weights + residual sum to 1 up to 1e-12.
struct GemDraw {
  Vector weights;
  double residual = 1.0;
};

inline constexpr std::int64_t kDefaultStickCap = 10'000'000;

// Break sticks W_i ~ Beta(1-alpha, theta + i*alpha) until the residual
// mass drops below trunc. Throws TruncationOverflow if that takes more
// than cap sticks, which genuinely happens for larger alpha: the residual
// after K sticks decays like K^{-(1-alpha)/alpha}.
GemDraw sample_gem(const Params& p, double trunc, PhiloxRng& rng,
                   std::int64_t cap = kDefaultStickCap);

// GEM draw ranked decreasingly; the residual (below trunc) is dropped.
OrderedPoint sample_pd(const Params& p, double trunc, PhiloxRng& rng,
                       std::int64_t cap = kDefaultStickCap);

}  // namespace pdlab
