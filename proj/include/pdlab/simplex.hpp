#pragma once

#include "pdlab/errors.hpp"
#include "pdlab/types.hpp"

namespace pdlab {

// A point of the floored simplex: z_i >= eps for all i, sum z_i = 1.
// Construct through make_simplex_point, which renormalizes small float
// drift (|sum - 1| <= 1e-9) and rejects anything larger.
struct SimplexPoint {
  int n = 0;
  double eps = 0.0;
  Vector z;
};

// Finitely supported point of the ordered simplex closure: entries
// non-increasing, nonnegative, partial sums <= 1.
struct OrderedPoint {
  Vector z;
};

SimplexPoint make_simplex_point(Vector z, double eps);
OrderedPoint make_ordered_point(Vector z);

// Decreasing order statistics, zero-padding implied by finite support.
OrderedPoint order_map(const SimplexPoint& p);
OrderedPoint order_map(const Vector& z);

// Power sum sum_i z_i^m for m >= 2.
double phi_m(const Vector& z, int m);
double phi_m(const OrderedPoint& p, int m);
double phi_m(const SimplexPoint& p, int m);

// Embed the first n entries of an ordered point into the floored simplex:
// renormalize the prefix to unit mass, then z_i = eps + (1 - n*eps) * y_i.
SimplexPoint lift_to_simplex(const OrderedPoint& v, int n, double eps);

}  // namespace pdlab
