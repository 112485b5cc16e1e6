#pragma once

#include <cstdint>
#include <vector>

#include "pdlab/params.hpp"
#include "pdlab/rng.hpp"

namespace pdlab {

// Block sizes of the partition induced by the urn, with the running
// species count K = block count and singleton count M1. Types are
// anonymous labels; only the partition matters because the base
// distribution is nonatomic.
struct PartitionState {
  std::vector<std::int64_t> block_sizes;
  std::int64_t n = 0;   // total observations
  std::int64_t m1 = 0;  // number of blocks of size one

  std::int64_t k() const {
    return static_cast<std::int64_t>(block_sizes.size());
  }
};

// First observation: a single block of size one.
PartitionState urn_init();

// P(next observation opens a new block) = (theta + alpha*K) / (theta + n).
double urn_new_block_prob(const PartitionState& s, const Params& p);

// One urn draw: new block with the probability above, otherwise block j
// grows with probability (n_j - alpha) / (theta + n). Requires n >= 1.
void urn_next_inplace(PartitionState& s, const Params& p, PhiloxRng& rng);
PartitionState urn_next(PartitionState s, const Params& p, PhiloxRng& rng);

// n sequential draws starting from urn_init.
PartitionState urn_run(const Params& p, std::int64_t n, PhiloxRng& rng);

}  // namespace pdlab
