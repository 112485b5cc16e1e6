#include "pdlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdlab {

namespace {

constexpr double kSumSlack = 1e-9;    // renormalize below this
constexpr double kSumTol = 1e-12;     // must hold after construction
constexpr double kEntrySlack = 1e-12;

}  // namespace

SimplexPoint make_simplex_point(Vector z, double eps) {
  const int n = static_cast<int>(z.size());
  if (n < 1) throw InvalidSimplexPoint("empty simplex point");
  if (!(eps > 0.0) || !(eps < 1.0 / n)) {
    throw InvalidSimplexPoint("eps must lie in (0, 1/n), got eps = " +
                              std::to_string(eps) + " with n = " +
                              std::to_string(n));
  }
  double sum = z.sum();
  if (std::abs(sum - 1.0) > kSumSlack) {
    throw InvalidSimplexPoint("coordinates sum to " + std::to_string(sum) +
                              ", outside the 1e-9 renormalization band");
  }
  for (int i = 0; i < n; ++i) {
    if (z[i] < eps - kEntrySlack) {
      throw InvalidSimplexPoint("coordinate " + std::to_string(i) +
                                " below the eps floor");
    }
  }
  z /= sum;
  // Renormalizing can push floor-level coordinates a hair below eps;
  // repair on the largest coordinate so the total stays exact.
  double repaired = 0.0;
  for (int i = 0; i < n; ++i) {
    if (z[i] < eps) {
      repaired += eps - z[i];
      z[i] = eps;
    }
  }
  if (repaired > 0.0) {
    Index imax;
    z.maxCoeff(&imax);
    z[imax] -= repaired;
  }
  if (std::abs(z.sum() - 1.0) > kSumTol) {
    throw InvalidSimplexPoint("renormalization failed to reach unit sum");
  }
  return SimplexPoint{n, eps, std::move(z)};
}

OrderedPoint make_ordered_point(Vector z) {
  double partial = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    if (z[i] < -kEntrySlack) throw InvalidOrderedPoint("negative entry");
    if (i > 0 && z[i] > z[i - 1] + kEntrySlack) {
      throw InvalidOrderedPoint("entries not non-increasing");
    }
    partial += z[i];
    if (partial > 1.0 + kSumTol) {
      throw InvalidOrderedPoint("partial sums exceed 1");
    }
  }
  return OrderedPoint{std::move(z)};
}

OrderedPoint order_map(const Vector& z) {
  Vector s = z;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return OrderedPoint{std::move(s)};
}

OrderedPoint order_map(const SimplexPoint& p) { return order_map(p.z); }

double phi_m(const Vector& z, int m) {
  if (m < 2) {
    throw MOutOfRange("phi_m requires m >= 2, got " + std::to_string(m));
  }
  double acc = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    acc += std::pow(z[i], m);
  }
  return acc;
}

double phi_m(const OrderedPoint& p, int m) { return phi_m(p.z, m); }
double phi_m(const SimplexPoint& p, int m) { return phi_m(p.z, m); }

SimplexPoint lift_to_simplex(const OrderedPoint& v, int n, double eps) {
  Vector y = Vector::Zero(n);
  const Index k = std::min<Index>(n, v.z.size());
  y.head(k) = v.z.head(k);
  double mass = y.sum();
  if (!(mass > 0.0)) throw InvalidSimplexPoint("lift of a zero-mass prefix");
  y /= mass;
  Vector z = (eps + (1.0 - n * eps) * y.array()).matrix();
  return make_simplex_point(std::move(z), eps);
}

}  // namespace pdlab
