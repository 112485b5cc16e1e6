#pragma once

#include "pdlab/errors.hpp"

namespace pdlab {

// Model parameters. Valid domain: 0 <= alpha < 1 and theta > -alpha.
// alpha = 0 recovers the one-parameter model.
struct Params {
  double theta = 1.0;
  double alpha = 0.0;
};

Params validate_params(double theta, double alpha);

// Default floor schedule eps_n = n^{-1.1}. Any user override must satisfy
// 0 < eps < 1/n; the o(1/n) decay across n is the caller's responsibility.
double default_epsilon(int n);

}  // namespace pdlab
