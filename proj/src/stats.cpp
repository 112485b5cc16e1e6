#include "pdlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdlab/special_functions.hpp"
#include "pdlab/urn.hpp"

namespace pdlab {

McEstimate mc_estimate(const std::vector<double>& samples) {
  const std::int64_t n = static_cast<std::int64_t>(samples.size());
  if (n < 2) throw TooFewSamples("mc_estimate needs at least 2 samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(n - 1);
  return McEstimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

bool within_3se(const McEstimate& e, double target) {
  return std::abs(e.mean - target) <= 3.0 * e.std_error;
}

double sample_variance(const std::vector<double>& samples) {
  const auto e = mc_estimate(samples);
  return e.std_error * e.std_error * static_cast<double>(e.n_samples);
}

double variance_std_error(const std::vector<double>& samples) {
  const std::int64_t n = static_cast<std::int64_t>(samples.size());
  if (n < 4) throw TooFewSamples("variance_std_error needs >= 4 samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  return std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(n));
}

double expected_k(const Params& p, std::int64_t n) {
  if (n < 1) throw ConfigError("expected_k needs n >= 1");
  double ek = 1.0;
  for (std::int64_t i = 1; i < n; ++i) {
    const double d = p.theta + static_cast<double>(i);
    ek = ek * (1.0 + p.alpha / d) + p.theta / d;
  }
  return ek;
}

double coincidence_moment(const Params& p) {
  return (1.0 - p.alpha) / (1.0 + p.theta);
}

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf) {
  const std::int64_t n = static_cast<std::int64_t>(samples.size());
  if (n < 100) {
    throw TooFewSamples("ks_test needs >= 100 samples, got " +
                        std::to_string(n));
  }
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return KsResult{d, n, 1.63 / std::sqrt(static_cast<double>(n))};
}

double ks_two_sample_stat(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw TooFewSamples("empty KS sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

PoissonFit poisson_fit(const std::vector<std::int64_t>& counts, double theta) {
  if (counts.size() < 50) throw TooFewSamples("poisson_fit needs >= 50 counts");
  if (!(theta > 0.0)) throw ConfigError("poisson_fit needs theta > 0");
  std::int64_t max_count = 0;
  for (auto c : counts) max_count = std::max(max_count, c);
  std::vector<double> observed(static_cast<std::size_t>(max_count) + 1, 0.0);
  for (auto c : counts) observed[static_cast<std::size_t>(c)] += 1.0;

  const double total = static_cast<double>(counts.size());
  auto pmf = [theta](std::int64_t k) {
    return std::exp(k * std::log(theta) - theta -
                    std::lgamma(static_cast<double>(k) + 1.0));
  };

  // Walk k upward, closing a bin as soon as it expects >= 5; everything
  // past max_count is folded into the final bin via the tail mass.
  std::vector<double> obs_bins, exp_bins;
  double obs_acc = 0.0, exp_acc = 0.0, cum = 0.0;
  for (std::int64_t k = 0; k <= max_count; ++k) {
    obs_acc += observed[static_cast<std::size_t>(k)];
    const double pk = pmf(k);
    exp_acc += total * pk;
    cum += pk;
    if (exp_acc >= 5.0 && k < max_count) {
      obs_bins.push_back(obs_acc);
      exp_bins.push_back(exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  obs_acc += 0.0;
  exp_acc += total * std::max(1.0 - cum, 0.0);  // tail beyond max_count
  if (!exp_bins.empty() && exp_acc < 5.0) {
    obs_bins.back() += obs_acc;
    exp_bins.back() += exp_acc;
  } else {
    obs_bins.push_back(obs_acc);
    exp_bins.push_back(exp_acc);
  }
  if (obs_bins.size() < 2) {
    throw TooFewSamples("poisson_fit has a single pooled bin; need more data");
  }

  double stat = 0.0;
  for (std::size_t b = 0; b < obs_bins.size(); ++b) {
    const double diff = obs_bins[b] - exp_bins[b];
    stat += diff * diff / exp_bins[b];
  }
  const int dof = static_cast<int>(obs_bins.size()) - 1;
  const double p = chi_square_sf(stat, dof);
  return PoissonFit{stat, dof, p, p > 0.01};
}

McEstimate log_diversity_check(const Params& p, std::int64_t n,
                               int replicates, PhiloxRng& rng) {
  if (p.alpha != 0.0) {
    throw UnsupportedRegime("log-diversity scaling applies to alpha = 0");
  }
  const double log_n = std::log(static_cast<double>(n));
  if (p.theta == 0.0) return McEstimate{1.0 / log_n, 0.0, replicates};
  std::vector<double> vals;
  vals.reserve(replicates);
  for (int r = 0; r < replicates; ++r) {
    vals.push_back(static_cast<double>(urn_run(p, n, rng).k()) / log_n);
  }
  return mc_estimate(vals);
}

}  // namespace pdlab
