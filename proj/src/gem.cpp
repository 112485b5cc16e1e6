#include "pdlab/gem.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace pdlab {

GemDraw sample_gem(const Params& p, double trunc, PhiloxRng& rng,
                   std::int64_t cap) {
  if (!(trunc > 0.0) || !(trunc < 1.0)) {
    throw ConfigError("gem truncation must lie in (0,1), got " +
                      std::to_string(trunc));
  }
  std::vector<double> v;
  double residual = 1.0;
  for (std::int64_t i = 1; i <= cap; ++i) {
    double w = draw_beta(rng, 1.0 - p.alpha, p.theta + i * p.alpha);
    // Keep sticks strictly inside (0,1); exact 0/1 only arise from
    // floating-point underflow of the gamma pair.
    w = std::min(std::max(w, 1e-300), 1.0 - 1e-16);
    v.push_back(w * residual);
    residual *= 1.0 - w;
    if (residual < trunc) {
      GemDraw out;
      out.weights = Eigen::Map<const Vector>(v.data(), v.size());
      out.residual = residual;
      return out;
    }
  }
  throw TruncationOverflow(
      "residual mass " + std::to_string(residual) + " still above trunc " +
      std::to_string(trunc) + " after " + std::to_string(cap) +
      " sticks (theta = " + std::to_string(p.theta) + ", alpha = " +
      std::to_string(p.alpha) + ")");
}

OrderedPoint sample_pd(const Params& p, double trunc, PhiloxRng& rng,
                       std::int64_t cap) {
  GemDraw g = sample_gem(p, trunc, rng, cap);
  return order_map(g.weights);
}

}  // namespace pdlab
