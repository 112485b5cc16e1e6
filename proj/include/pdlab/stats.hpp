#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pdlab/params.hpp"
#include "pdlab/rng.hpp"

namespace pdlab {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

McEstimate mc_estimate(const std::vector<double>& samples);

// |mean - target| <= 3 std errors, the convention every Monte Carlo
// comparison in this project uses.
bool within_3se(const McEstimate& e, double target);

// Standard error of the sample variance via the fourth central moment
// (delta method), so variance matches can use the same 3-SE convention.
double sample_variance(const std::vector<double>& samples);
double variance_std_error(const std::vector<double>& samples);

// Exact E[K_n] for the urn, by linearity of the new-block probability:
// E[K_{i+1}] = E[K_i] (1 + alpha/(theta+i)) + theta/(theta+i), E[K_1] = 1.
double expected_k(const Params& p, std::int64_t n);

// E[phi_2] under the stationary law: the probability that the urn's
// second draw repeats the first, (1 - alpha)/(1 + theta).
double coincidence_moment(const Params& p);

struct KsResult {
  double statistic = 0.0;
  std::int64_t n = 0;
  double threshold = 0.0;

  bool pass() const { return statistic < threshold; }
};

// One-sample Kolmogorov-Smirnov test at level 0.01, asymptotic threshold
// 1.63/sqrt(n). Requires at least 100 samples; the input need not be
// sorted (a copy is sorted internally).
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

// Two-sample KS statistic, for chain-versus-diffusion law comparisons.
double ks_two_sample_stat(std::vector<double> a, std::vector<double> b);

struct PoissonFit {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 0.0;
  bool pass = false;  // p_value > 0.01
};

// Pearson chi-square of integer counts against Poisson(theta), adjacent
// cells pooled until every bin expects at least 5 observations.
PoissonFit poisson_fit(const std::vector<std::int64_t>& counts, double theta);

// Monte Carlo mean of K_n / log n over urn replicates (alpha = 0 regime).
// theta = 0 is degenerate (K_n is identically 1) and returns the exact
// value with zero standard error.
McEstimate log_diversity_check(const Params& p, std::int64_t n,
                               int replicates, PhiloxRng& rng);

}  // namespace pdlab
