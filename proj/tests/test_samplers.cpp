#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdlab/gem.hpp"
#include "pdlab/special_functions.hpp"
#include "pdlab/stats.hpp"
#include "pdlab/urn.hpp"

using namespace pdlab;

TEST_CASE("gem weights plus residual sum to one") {
  PhiloxRng rng(10, 0);
  for (double alpha : {0.0, 0.1, 0.3}) {
    const Params p = validate_params(1.0, alpha);
    for (int rep = 0; rep < 50; ++rep) {
      const GemDraw g = sample_gem(p, 1e-6, rng);
      CHECK(g.residual < 1e-6);
      CHECK(g.weights.minCoeff() > 0.0);
      CHECK(std::abs(g.weights.sum() + g.residual - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("residual equals the product of surviving stick fractions") {
  PhiloxRng rng(11, 0);
  const Params p = validate_params(2.0, 0.2);
  const GemDraw g = sample_gem(p, 1e-4, rng);
  double remaining = 1.0;
  double prod = 1.0;
  for (Index i = 0; i < g.weights.size(); ++i) {
    const double w = g.weights[i] / remaining;  // recover W_i
    prod *= 1.0 - w;
    remaining -= g.weights[i];
  }
  CHECK(g.residual == doctest::Approx(prod).epsilon(1e-9));
}

TEST_CASE("first stick is exactly one beta draw") {
  const Params p = validate_params(1.5, 0.4);
  PhiloxRng a(12, 3);
  PhiloxRng b(12, 3);
  const GemDraw g = sample_gem(p, 0.5, a);
  const double w1 = draw_beta(b, 1.0 - p.alpha, p.theta + p.alpha);
  CHECK(g.weights[0] == w1);
}

TEST_CASE("mean of V1 is 1/2 for theta=1, alpha=0") {
  const Params p = validate_params(1.0, 0.0);
  PhiloxRng rng(13, 0);
  std::vector<double> v1;
  for (int i = 0; i < 20000; ++i) v1.push_back(sample_gem(p, 1e-3, rng).weights[0]);
  const McEstimate e = mc_estimate(v1);
  CHECK(within_3se(e, 0.5));
}

TEST_CASE("V1 marginal passes KS against Beta(1-alpha, theta+alpha)") {
  const Params p = validate_params(1.0, 0.1);
  PhiloxRng rng(14, 0);
  std::vector<double> v1;
  v1.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    v1.push_back(sample_gem(p, 1e-2, rng).weights[0]);
  }
  const double a = 1.0 - p.alpha;
  const double b = p.theta + p.alpha;
  const KsResult ks =
      ks_test(std::move(v1), [&](double x) { return inc_beta(a, b, x); });
  CHECK(ks.pass());
}

TEST_CASE("truncation overflow triggers at the stick cap") {
  const Params p = validate_params(1.0, 0.5);
  PhiloxRng rng(15, 0);
  CHECK_THROWS_AS(sample_gem(p, 1e-10, rng, 10000), TruncationOverflow);
}

TEST_CASE("pd draws are ranked and keep the phi2 moment") {
  const Params p = validate_params(0.5, 0.5);
  PhiloxRng rng(16, 0);
  std::vector<double> phi2;
  phi2.reserve(20000);
  for (int i = 0; i < 20000; ++i) {
    const OrderedPoint v = sample_pd(p, 1e-3, rng);
    if (i < 50) {
      for (Index j = 1; j < v.z.size(); ++j) REQUIRE(v.z[j] <= v.z[j - 1]);
    }
    phi2.push_back(phi_m(v, 2));
  }
  // Truncation bias on phi2 is below residual^2 = 1e-6, far inside 3 SE.
  const McEstimate e = mc_estimate(phi2);
  CHECK(within_3se(e, coincidence_moment(p)));  // = 1/3
}

TEST_CASE("urn transition probabilities") {
  const PartitionState first = urn_init();
  CHECK(first.n == 1);
  CHECK(first.k() == 1);
  CHECK(first.m1 == 1);

  CHECK(urn_new_block_prob(first, validate_params(0.5, 0.5)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(urn_new_block_prob(first, validate_params(1.0, 0.5)) ==
        doctest::Approx((1.0 + 0.5) / 2.0).epsilon(1e-15));

  // The block weights (n_j - alpha) plus the new-block weight
  // (theta + alpha K) always total theta + n.
  PhiloxRng rng(17, 0);
  const Params p = validate_params(0.7, 0.6);
  PartitionState s = urn_init();
  for (int i = 0; i < 200; ++i) {
    double total = p.theta + p.alpha * s.k();
    for (auto b : s.block_sizes) total += b - p.alpha;
    CHECK(total == doctest::Approx(p.theta + s.n).epsilon(1e-12));
    urn_next_inplace(s, p, rng);
  }
}

TEST_CASE("urn partition stays internally consistent") {
  PhiloxRng rng(18, 0);
  const Params p = validate_params(1.0, 0.5);
  const PartitionState s = urn_run(p, 5000, rng);
  CHECK(s.n == 5000);
  std::int64_t total = 0, singles = 0;
  for (auto b : s.block_sizes) {
    REQUIRE(b >= 1);
    total += b;
    singles += (b == 1);
  }
  CHECK(total == s.n);
  CHECK(singles == s.m1);
  CHECK(s.k() >= 1);
  CHECK(s.k() <= s.n);
}

TEST_CASE("alpha=0 growth picks blocks proportionally to size") {
  // With alpha = 0 a block of size 3 is three times likelier to grow
  // than a block of size 1.
  const Params p = validate_params(1.0, 0.0);
  PhiloxRng rng(19, 0);
  std::int64_t grew_big = 0, grew_small = 0;
  for (int rep = 0; rep < 20000; ++rep) {
    PartitionState s;
    s.block_sizes = {3, 1};
    s.n = 4;
    s.m1 = 1;
    urn_next_inplace(s, p, rng);
    if (s.block_sizes[0] == 4) ++grew_big;
    if (s.block_sizes.size() == 2 && s.block_sizes[1] == 2) ++grew_small;
  }
  CHECK(grew_big > 2.5 * grew_small);
  CHECK(grew_big < 3.5 * grew_small);
}

TEST_CASE("urn mean species count matches the recursion") {
  const Params p = validate_params(1.0, 0.3);
  PhiloxRng rng(20, 0);
  std::vector<double> ks;
  for (int rep = 0; rep < 20000; ++rep) {
    ks.push_back(static_cast<double>(urn_run(p, 200, rng).k()));
  }
  CHECK(within_3se(mc_estimate(ks), expected_k(p, 200)));
}
