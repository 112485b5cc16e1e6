#include "pdlab/params.hpp"

#include <cmath>
#include <string>

namespace pdlab {

Params validate_params(double theta, double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 1.0) || std::isnan(alpha)) {
    throw AlphaOutOfRange("alpha must satisfy 0 <= alpha < 1, got " +
                          std::to_string(alpha));
  }
  if (!(theta > -alpha) || std::isnan(theta)) {
    throw ThetaTooSmall("theta must satisfy theta > -alpha, got theta = " +
                        std::to_string(theta) + ", alpha = " +
                        std::to_string(alpha));
  }
  return Params{theta, alpha};
}

double default_epsilon(int n) { return std::pow(static_cast<double>(n), -1.1); }

}  // namespace pdlab
