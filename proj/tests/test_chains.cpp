#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "pdlab/kchain.hpp"
#include "pdlab/particle.hpp"
#include "pdlab/stats.hpp"

using namespace pdlab;

TEST_CASE("particle step preserves the particle count") {
  const Params p = validate_params(1.0, 0.5);
  PhiloxRng rng(30, 0);
  ParticleSystem s = particle_init_from_urn(p, 500, rng);
  for (int i = 0; i < 2000; ++i) {
    particle_step_inplace(s, p, rng);
    REQUIRE(s.n() == 500);
  }
  std::int64_t total = 0, singles = 0;
  for (auto b : s.partition.block_sizes) {
    total += b;
    singles += (b == 1);
  }
  CHECK(total == 500);
  CHECK(singles == s.partition.m1);
}

TEST_CASE("two monomorphic particles: new type after removal") {
  // Removing one of two same-type particles leaves k_r = 1, so the
  // insertion opens a new block with probability (theta+alpha)/(theta+1).
  const Params p = validate_params(0.5, 0.5);
  PhiloxRng rng(31, 0);
  int new_type = 0;
  const int reps = 50000;
  for (int i = 0; i < reps; ++i) {
    ParticleSystem s = particle_init_monomorphic(2);
    particle_step_inplace(s, p, rng);
    new_type += (s.partition.k() == 2);
  }
  const double freq = static_cast<double>(new_type) / reps;
  const double target = (0.5 + 0.5) / (0.5 + 1.0);  // 2/3
  CHECK(std::abs(freq - target) <
        3.0 * std::sqrt(target * (1 - target) / reps));
}

TEST_CASE("K-marginal of the particle step matches the exact kernel") {
  const Params p = validate_params(1.0, 0.5);
  const std::int64_t n = 60;
  PhiloxRng rng(32, 0);
  ParticleSystem s = particle_init_from_urn(p, n, rng);

  struct Tally {
    std::int64_t visits = 0, up = 0, down = 0;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Tally> buckets;
  for (int step = 0; step < 200000; ++step) {
    const std::int64_t k = s.partition.k();
    const std::int64_t m1 = s.partition.m1;
    particle_step_inplace(s, p, rng);
    Tally& t = buckets[{k, m1}];
    ++t.visits;
    t.up += (s.partition.k() == k + 1);
    t.down += (s.partition.k() == k - 1);
  }
  int tested = 0;
  for (const auto& [km, tally] : buckets) {
    if (tally.visits < 2000) continue;
    const auto [k, m1] = km;
    const double pu = k_up_prob_exact(n, k, m1, p);
    const double pd = k_down_prob_exact(n, k, m1, p);
    const double fu = static_cast<double>(tally.up) / tally.visits;
    const double fd = static_cast<double>(tally.down) / tally.visits;
    const double se_u = std::sqrt(pu * (1 - pu) / tally.visits);
    const double se_d = std::sqrt(pd * (1 - pd) / tally.visits);
    CHECK(std::abs(fu - pu) < 4.0 * se_u + 1e-12);
    CHECK(std::abs(fd - pd) < 4.0 * se_d + 1e-12);
    ++tested;
  }
  CHECK(tested >= 3);  // enough well-visited (k, m1) cells
}

TEST_CASE("time-averaged M1 tracks alpha K at large n") {
  const Params p = validate_params(1.0, 0.5);
  const std::int64_t n = 10000;
  PhiloxRng rng(33, 0);
  ParticleSystem s = particle_init_from_urn(p, n, rng);
  double sum_m1 = 0.0, sum_ak = 0.0;
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) {
    particle_step_inplace(s, p, rng);
    sum_m1 += static_cast<double>(s.partition.m1);
    sum_ak += p.alpha * static_cast<double>(s.partition.k());
  }
  CHECK(std::abs(sum_m1 / sum_ak - 1.0) < 0.10);
}

TEST_CASE("rescaled particle run records valid ranked frequencies") {
  const Params p = validate_params(1.0, 0.3);
  PhiloxRng rng(34, 0);
  auto path = particle_run_rescaled(p, 50, 0.02, 0.005, rng);
  CHECK(path.size() >= 4);
  for (const auto& v : path.values) {
    CHECK(std::abs(v.z.sum() - 1.0) < 1e-12);
    for (Index j = 1; j < v.z.size(); ++j) REQUIRE(v.z[j] <= v.z[j - 1]);
  }

  auto trivial = particle_run_rescaled(p, 50, 0.0, 0.005, rng);
  CHECK(trivial.size() == 1);
  CHECK(trivial.times[0] == 0.0);
}

TEST_CASE("stationary particle chain holds the finite-n phi2 moment") {
  // Urn initialization is the stationary law, and the n-sample coincidence
  // probability gives the exact moment 1/n + (1-1/n)(1-alpha)/(1+theta).
  const Params p = validate_params(1.0, 0.5);
  const std::int64_t n = 200;
  PhiloxRng rng(35, 0);
  std::vector<double> phi2;
  for (int rep = 0; rep < 200; ++rep) {
    ParticleSystem s = particle_init_from_urn(p, n, rng);
    for (int i = 0; i < 400; ++i) particle_step_inplace(s, p, rng);
    phi2.push_back(phi_m(particle_frequencies(s), 2));
  }
  const double target =
      1.0 / n + (1.0 - 1.0 / n) * coincidence_moment(p);
  CHECK(within_3se(mc_estimate(phi2), target));
}

TEST_CASE("markovized kernel values") {
  const Params p = validate_params(1.0, 0.5);
  CHECK(k_up_prob(100, 10, p) == doctest::Approx(0.057).epsilon(1e-12));

  CHECK(k_up_prob(100, 100, p) == 0.0);   // p(n, n+1) = 0
  CHECK(k_down_prob(100, 1, p) == 0.0);   // p(1, 0) = 0

  const Params a0 = validate_params(2.0, 0.0);
  for (std::int64_t k : {1, 5, 50}) CHECK(k_down_prob(100, k, a0) == 0.0);

  // Stress the hold probability over an awkward parameter range.
  for (double alpha : {0.0, 0.5, 0.9, 0.99}) {
    for (double theta : {-0.9 * alpha, 0.1, 5.0}) {
      if (!(theta > -alpha)) continue;
      const Params q = validate_params(theta, alpha);
      for (std::int64_t n : {2, 3, 10, 100}) {
        for (std::int64_t k = 1; k <= n; ++k) {
          const double up = k_up_prob(n, k, q);
          const double down = k_down_prob(n, k, q);
          REQUIRE(up >= 0.0);
          REQUIRE(down >= 0.0);
          REQUIRE(up + down <= 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("markovized chain with alpha=0 never loses species") {
  const Params p = validate_params(1.0, 0.0);
  PhiloxRng rng(36, 0);
  KChainState s = k_init_markovized(100, 5);
  std::int64_t prev = s.k;
  for (int i = 0; i < 5000; ++i) {
    k_step_markovized(s, p, rng);
    REQUIRE(s.k >= prev);
    prev = s.k;
  }
}

TEST_CASE("exact chain mirrors its particle system") {
  const Params p = validate_params(0.8, 0.4);
  PhiloxRng rng(37, 0);
  KChainState s = k_init_exact(p, 300, rng);
  for (int i = 0; i < 2000; ++i) {
    k_step_exact(s, p, rng);
    REQUIRE(s.k == s.particles.partition.k());
    REQUIRE(s.m1 == s.particles.partition.m1);
    REQUIRE(s.k >= 1);
    REQUIRE(s.k <= 300);
  }
}

TEST_CASE("rescaled chain starts at k0 over the scale factor") {
  const Params p = validate_params(1.0, 0.5);
  PhiloxRng rng(38, 0);
  auto path = k_run_rescaled(p, 400, 0.01, KVariant::markovized, rng, 10);
  CHECK(path.times[0] == 0.0);
  CHECK(path.values[0] == doctest::Approx(10.0 / std::pow(400.0, 0.5)));
}

TEST_CASE("alpha=0 rescaled chain concentrates at the log-diversity") {
  // Stationary start; terminal K / log n should match the exact finite-n
  // mean expected_k / log n, which itself approaches theta.
  const Params p = validate_params(2.0, 0.0);
  const std::int64_t n = 3000;
  PhiloxRng rng(39, 0);
  std::vector<double> terminal;
  for (int rep = 0; rep < 30; ++rep) {
    auto path = k_run_rescaled(p, n, 1.0, KVariant::exact, rng);
    terminal.push_back(path.values.back());
  }
  const double oracle = expected_k(p, n) / std::log(static_cast<double>(n));
  const McEstimate e = mc_estimate(terminal);
  CHECK(within_3se(e, oracle));
  CHECK(std::abs(e.mean - 2.0) < 0.5);  // near theta already at n = 3000
}

TEST_CASE("rescaled kernel generator approaches the diffusion generator") {
  // For f(s) = e^{-s}: L f(s) = -theta e^{-s} + alpha s e^{-s}. The
  // discrete generator n^{1+alpha}(U_n - I) applied to f at k = ceil(s n^a)
  // must approach L f uniformly on a grid as n grows.
  const Params p = validate_params(1.0, 0.5);
  auto f = [](double s) { return std::exp(-s); };
  auto lf = [&](double s) { return -p.theta * f(s) + p.alpha * s * f(s); };
  std::vector<double> gaps;
  for (std::int64_t n : {100, 1000, 10000}) {
    const double scale = std::pow(static_cast<double>(n), p.alpha);
    const double clock = std::pow(static_cast<double>(n), 1.0 + p.alpha);
    double worst = 0.0;
    for (double s = 0.2; s <= 3.0; s += 0.2) {
      const std::int64_t k = static_cast<std::int64_t>(std::ceil(s * scale));
      const double x = static_cast<double>(k) / scale;
      const double up = k_up_prob(n, k, p);
      const double down = k_down_prob(n, k, p);
      const double action = up * (f((k + 1) / scale) - f(x)) +
                            down * (f((k - 1) / scale) - f(x));
      worst = std::max(worst, std::abs(clock * action - lf(s)));
    }
    gaps.push_back(worst);
  }
  CHECK(gaps[0] > gaps[1]);
  CHECK(gaps[1] > gaps[2]);
}
