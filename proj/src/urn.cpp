#include "pdlab/urn.hpp"

#include <cassert>
#include <string>

namespace pdlab {

PartitionState urn_init() {
  PartitionState s;
  s.block_sizes = {1};
  s.n = 1;
  s.m1 = 1;
  return s;
}

double urn_new_block_prob(const PartitionState& s, const Params& p) {
  return (p.theta + p.alpha * s.k()) / (p.theta + s.n);
}

void urn_next_inplace(PartitionState& s, const Params& p, PhiloxRng& rng) {
  assert(s.n >= 1);
  const double total = p.theta + s.n;
  double u = draw_uniform(rng) * total;
  double acc = p.theta + p.alpha * s.k();
  if (u < acc) {
    s.block_sizes.push_back(1);
    ++s.m1;
    ++s.n;
    return;
  }
  // Existing blocks by cumulative scan of n_j - alpha. The weights sum to
  // n - alpha*K, so acc reaches total analytically; the final fallthrough
  // only catches float rounding.
  const std::size_t k = s.block_sizes.size();
  for (std::size_t j = 0; j < k; ++j) {
    acc += s.block_sizes[j] - p.alpha;
    if (u < acc || j + 1 == k) {
      if (s.block_sizes[j] == 1) --s.m1;
      ++s.block_sizes[j];
      ++s.n;
      return;
    }
  }
}

PartitionState urn_next(PartitionState s, const Params& p, PhiloxRng& rng) {
  urn_next_inplace(s, p, rng);
  return s;
}

PartitionState urn_run(const Params& p, std::int64_t n, PhiloxRng& rng) {
  if (n < 1) throw ConfigError("urn_run needs n >= 1");
  PartitionState s = urn_init();
  for (std::int64_t i = 1; i < n; ++i) {
    urn_next_inplace(s, p, rng);
  }
  return s;
}

}  // namespace pdlab
