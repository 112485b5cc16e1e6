#pragma once

namespace pdlab {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series for x < a+1 and a Lentz continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double x, double dof);

// Regularized incomplete beta I_x(a, b); doubles as the Beta(a,b) CDF.
double inc_beta(double a, double b, double x);

}  // namespace pdlab
