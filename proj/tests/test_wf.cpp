#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "pdlab/gem.hpp"
#include "pdlab/stats.hpp"
#include "pdlab/wright_fisher.hpp"

using namespace pdlab;

namespace {

SimplexPoint random_interior_point(int n, double eps, PhiloxRng& rng,
                                   double shape = 1.0) {
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = draw_gamma(rng, shape);
  y /= y.sum();
  Vector z = (eps + (1.0 - n * eps) * y.array()).matrix();
  return make_simplex_point(std::move(z), eps);
}

}  // namespace

TEST_CASE("wf config validation") {
  const Params p = validate_params(1.0, 0.5);
  CHECK_NOTHROW(make_wf_config(5, 0.01, p, 1e-3));
  CHECK_THROWS_AS(make_wf_config(1, 0.01, p, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_wf_config(5, 0.25, p, 1e-3), ConfigError);  // >= 1/n
  CHECK_THROWS_AS(make_wf_config(5, 0.01, p, 0.0), ConfigError);
  CHECK_THROWS_AS(make_wf_config(5, 0.01, validate_params(-0.2, 0.5), 1e-3),
                  ConfigError);  // construction needs theta > 0
}

TEST_CASE("mutation rate values") {
  const Params p = validate_params(1.0, 0.5);
  const WfConfig cfg = make_wf_config(3, 0.01, p, 1e-3);

  // At the floor the state-dependent part vanishes exactly.
  Vector zf(3);
  zf << 0.01, 0.495, 0.495;
  const SimplexPoint at_floor = make_simplex_point(zf, 0.01);
  CHECK(mutation_rate(1, 2, at_floor, cfg) ==
        doctest::Approx(1.0 / 2.0).epsilon(1e-15));
  CHECK(mutation_rate(1, 3, at_floor, cfg) ==
        doctest::Approx(1.0 / 2.0).epsilon(1e-15));

  // Direct evaluation: theta/(n-1) + 2 alpha j / (z_i n (n+1)) * bracket
  // = 0.5 + (1/3)(1 - e^{-98}) at z_i = 0.5, j = 2.
  Vector z(3);
  z << 0.5, 0.3, 0.2;
  const SimplexPoint sp = make_simplex_point(z, 0.01);
  const double expected = 0.5 + (1.0 / 3.0) * (1.0 - std::exp(-98.0));
  CHECK(mutation_rate(1, 2, sp, cfg) ==
        doctest::Approx(expected).epsilon(1e-13));

  // alpha = 0 collapses to the symmetric one-parameter rate everywhere.
  const WfConfig one_par =
      make_wf_config(3, 0.01, validate_params(1.0, 0.0), 1e-3);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      CHECK(mutation_rate(i, j, sp, one_par) ==
            doctest::Approx(0.5).epsilon(1e-15));
    }
  }
}

TEST_CASE("rate matrix is a conservative generator") {
  const Params p = validate_params(0.8, 0.6);
  const WfConfig cfg = make_wf_config(6, 0.005, p, 1e-3);
  PhiloxRng rng(50, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const SimplexPoint z = random_interior_point(6, 0.005, rng);
    const Matrix q = build_rate_matrix(z, cfg);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(q.row(i).sum()) < 1e-12);
      for (int j = 0; j < 6; ++j) {
        if (i != j) CHECK(q(i, j) > 0.0);
      }
    }
  }
}

TEST_CASE("drift decomposition equals the closed form") {
  PhiloxRng rng(51, 0);
  for (int n : {5, 50}) {
    const double eps = default_epsilon(n);
    const WfConfig cfg = make_wf_config(n, eps, validate_params(1.0, 0.5), 1e-3);
    for (int rep = 0; rep < 20; ++rep) {
      const SimplexPoint z = random_interior_point(n, eps, rng, 0.8);
      const Vector a = drift_from_rates(z, cfg);
      const Vector b = drift_closed_form(z, cfg);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(b.sum()) < 1e-12);  // mutation flow conserves mass
    }
  }
}

TEST_CASE("alpha=0 drift reduces to the one-parameter form") {
  const int n = 7;
  const double eps = 1e-4;
  const WfConfig cfg = make_wf_config(n, eps, validate_params(1.3, 0.0), 1e-3);
  PhiloxRng rng(52, 0);
  const SimplexPoint z = random_interior_point(n, eps, rng);
  const Vector b = drift_closed_form(z, cfg);
  for (int i = 0; i < n; ++i) {
    const double expected = 1.3 * (1.0 - z.z[i]) / (n - 1) - 1.3 * z.z[i];
    CHECK(b[i] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("drift signs pin the state inside the floored simplex") {
  PhiloxRng rng(53, 0);
  for (double alpha : {0.0, 0.3, 0.9}) {
    const Params p = validate_params(1.0, alpha);
    const int n = 10;
    const double eps = default_epsilon(n);
    const WfConfig cfg = make_wf_config(n, eps, p, 1e-3);

    for (int rep = 0; rep < 10; ++rep) {
      Vector y(n - 1);
      for (int i = 0; i < n - 1; ++i) y[i] = draw_gamma(rng, 1.0);
      y /= y.sum();
      Vector z(n);
      z[3] = eps;
      int at = 0;
      for (int i = 0; i < n; ++i) {
        if (i != 3) z[i] = eps + (1.0 - n * eps) * y[at++];
      }
      const SimplexPoint floor_pt = make_simplex_point(std::move(z), eps);
      CHECK(drift_closed_form(floor_pt, cfg)[3] > 0.0);
    }

    Vector corner = Vector::Constant(n, eps);
    corner[2] = 1.0 - (n - 1) * eps;
    const SimplexPoint top = make_simplex_point(std::move(corner), eps);
    CHECK(drift_closed_form(top, cfg)[2] < 0.0);
  }
}

TEST_CASE("covariance structure") {
  const int n = 6;
  const double eps = 0.01;
  const WfConfig cfg = make_wf_config(n, eps, validate_params(1.0, 0.4), 1e-3);
  PhiloxRng rng(54, 0);

  // Row and column vanish for a coordinate at the floor.
  Vector z = Vector::Constant(n, eps);
  Vector y(n - 1);
  for (int i = 0; i < n - 1; ++i) y[i] = draw_gamma(rng, 1.0);
  y /= y.sum();
  for (int i = 1; i < n; ++i) z[i] = eps + (1.0 - n * eps) * y[i - 1];
  const SimplexPoint at_floor = make_simplex_point(std::move(z), eps);
  const Matrix a0 = covariance(at_floor, cfg);
  // The constructor's renormalization can move the pinned coordinate by
  // one ulp, so "vanishes" means at that scale.
  CHECK(a0.row(0).cwiseAbs().maxCoeff() < 1e-16);
  CHECK(a0.col(0).cwiseAbs().maxCoeff() < 1e-16);

  for (int rep = 0; rep < 100; ++rep) {
    const SimplexPoint sp = random_interior_point(n, eps, rng, 0.6);
    const Matrix a = covariance(sp, cfg);
    CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // Scaled Wright-Fisher identity: a = (1-n eps)^2 A_wf(y).
    const double scale = 1.0 - n * eps;
    Matrix awf(n, n);
    for (int i = 0; i < n; ++i) {
      const double yi = (sp.z[i] - eps) / scale;
      for (int j = 0; j < n; ++j) {
        const double yj = (sp.z[j] - eps) / scale;
        awf(i, j) = yi * ((i == j ? 1.0 : 0.0) - yj);
      }
    }
    CHECK((a - scale * scale * awf).cwiseAbs().maxCoeff() < 1e-14);

    const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }

  // eps -> 0 recovers the plain Wright-Fisher covariance.
  const WfConfig tiny = make_wf_config(n, 1e-13, validate_params(1.0, 0.4), 1e-3);
  const SimplexPoint sp = random_interior_point(n, 1e-13, rng);
  const Matrix a = covariance(sp, tiny);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double wf = sp.z[i] * ((i == j ? 1.0 : 0.0) - sp.z[j]);
      CHECK(a(i, j) == doctest::Approx(wf).epsilon(1e-9));
    }
  }
}

TEST_CASE("diffusion root reproduces the covariance") {
  PhiloxRng rng(55, 0);
  for (int n : {3, 8, 20}) {
    const double eps = default_epsilon(n) / 2.0;
    const WfConfig cfg = make_wf_config(n, eps, validate_params(1.0, 0.5), 1e-3);
    for (int rep = 0; rep < 30; ++rep) {
      const SimplexPoint sp = random_interior_point(n, eps, rng, 0.5);
      const Matrix root = diffusion_root(sp, cfg);
      const Matrix recon = root * root.transpose();
      CHECK((recon - covariance(sp, cfg)).cwiseAbs().maxCoeff() < 1e-13);
    }

    // A coordinate pinned at the floor keeps the factorization valid.
    Vector z = Vector::Constant(n, eps);
    Vector y(n - 1);
    for (int i = 0; i < n - 1; ++i) y[i] = draw_gamma(rng, 1.0);
    y /= y.sum();
    for (int i = 1; i < n; ++i) z[i] = eps + (1.0 - n * eps) * y[i - 1];
    const SimplexPoint pinned = make_simplex_point(std::move(z), eps);
    const Matrix root = diffusion_root(pinned, cfg);
    CHECK((root * root.transpose() - covariance(pinned, cfg))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("wf step never exits the floored simplex") {
  const int n = 8;
  const double eps = 0.005;
  const WfConfig cfg = make_wf_config(n, eps, validate_params(1.0, 0.5),
                                      5e-3);  // coarse dt to stress projection
  PhiloxRng rng(56, 0);
  SimplexPoint z = random_interior_point(n, eps, rng);
  for (int step = 0; step < 2000; ++step) {
    z = wf_step(z, cfg, rng);
    REQUIRE(z.z.minCoeff() >= eps - 1e-15);
    REQUIRE(z.z.maxCoeff() <= 1.0 - (n - 1) * eps + 1e-12);
    REQUIRE(std::abs(z.z.sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("wf step increments have the generator moments") {
  const int n = 5;
  const double eps = 1e-3;
  const double dt = 1e-3;
  const WfConfig cfg =
      make_wf_config(n, eps, validate_params(1.0, 0.5), dt, false);
  Vector z0v(n);
  z0v << 0.4, 0.25, 0.15, 0.12, 0.08;
  const SimplexPoint z0 = make_simplex_point(z0v, eps);
  const Vector b = drift_closed_form(z0, cfg);
  const Matrix a = covariance(z0, cfg);

  PhiloxRng rng(57, 0);
  const int reps = 100000;
  std::vector<std::vector<double>> inc(n);
  for (auto& v : inc) v.reserve(reps);
  for (int rep = 0; rep < reps; ++rep) {
    const SimplexPoint z1 = wf_step(z0, cfg, rng);
    for (int i = 0; i < n; ++i) inc[static_cast<std::size_t>(i)].push_back(z1.z[i] - z0.z[i]);
  }
  for (int i = 0; i < n; ++i) {
    const auto& v = inc[static_cast<std::size_t>(i)];
    CHECK(within_3se(mc_estimate(v), 0.5 * b[i] * dt));
    CHECK(std::abs(sample_variance(v) - a(i, i) * dt) <=
          3.0 * variance_std_error(v));
  }
}

TEST_CASE("limit drift gap diagnostics") {
  const Params p = validate_params(1.0, 0.5);
  {
    const WfConfig cfg = make_wf_config(5, 0.01, p, 1e-3);
    PhiloxRng rng(58, 0);
    const SimplexPoint z = random_interior_point(5, 0.01, rng);
    CHECK_THROWS_AS(limit_drift_gap(z, cfg, 2), MOutOfRange);
  }

  // Near-degenerate point lifted to the interior: finite, no NaN.
  {
    const int n = 6;
    const double eps = 1e-4;
    const WfConfig cfg = make_wf_config(n, eps, p, 1e-3);
    Vector v(1);
    v << 1.0;
    const SimplexPoint z = lift_to_simplex(OrderedPoint{v}, n, eps);
    const double gap = limit_drift_gap(z, cfg, 3);
    CHECK(std::isfinite(gap));
  }

  // One matched ranked profile across n: the gap shrinks as n grows.
  {
    Vector master(2000);
    for (int i = 0; i < 2000; ++i) {
      master[i] = 1.0 / ((i + 1.0) * (i + 1.0));  // ~ rank^{-1/alpha}
    }
    master /= master.sum();
    const OrderedPoint profile{master};
    double prev = 1e100;
    for (int n : {10, 100, 1000}) {
      const double eps = default_epsilon(n);
      const WfConfig cfg = make_wf_config(n, eps, p, 1e-3);
      const double gap =
          limit_drift_gap(lift_to_simplex(profile, n, eps), cfg, 3);
      CHECK(gap < prev);
      prev = gap;
    }
  }

  // alpha = 0: the gap is exactly theta m (phi_{m-1} - phi_m) / (n-1)
  // because only the one-parameter drift term survives.
  {
    PhiloxRng rng(59, 0);
    for (int n : {10, 100}) {
      const double eps = 1e-9;
      const WfConfig cfg = make_wf_config(n, eps, validate_params(0.7, 0.0), 1e-3);
      const SimplexPoint z = random_interior_point(n, eps, rng);
      const double expected =
          0.7 * 3.0 * (phi_m(z, 2) - phi_m(z, 3)) / (n - 1);
      CHECK(limit_drift_gap(z, cfg, 3) ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("wf run records ranked states and reproduces bit-for-bit") {
  const WfConfig cfg = make_wf_config(10, 1e-3, validate_params(1.0, 0.3), 1e-3);
  PhiloxRng rng1(60, 0);
  PhiloxRng rng2(60, 0);
  auto p1 = wf_run(cfg, 0.5, 0.05, rng1);
  auto p2 = wf_run(cfg, 0.5, 0.05, rng2);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1.values[i].z == p2.values[i].z);
    const auto& z = p1.values[i].z;
    double partial = 0.0;
    for (Index j = 0; j < z.size(); ++j) {
      if (j > 0) REQUIRE(z[j] <= z[j - 1]);
      partial += z[j];
      REQUIRE(partial <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("long-run phi2 of the finite-n diffusion nears the PD moment") {
  // The truncation scheme's boundary flux decays like dt^{(floor drift)/
  // (diffusion slope)}; that exponent shrinks with n, so each parameter
  // pair gets the largest n at which the sampler resolves the boundary
  // honestly at this dt. Exact small-n cross-check: at alpha = 0 the
  // stationary law is Dirichlet(theta/(n-1)) lifted onto the floor.
  struct Combo {
    double theta, alpha;
    int n;
  };
  PhiloxRng rng(61, 0);
  for (const Combo c : {Combo{1.0, 0.0, 10}, Combo{1.0, 0.3, 20}}) {
    const Params p = validate_params(c.theta, c.alpha);
    const double eps = 1e-4;
    const double dt = 2e-4;
    const WfConfig cfg = make_wf_config(c.n, eps, p, dt);
    SimplexPoint z = lift_to_simplex(sample_pd(p, 1e-6, rng), c.n, eps);
    const std::int64_t burn = static_cast<std::int64_t>(5.0 / dt);
    const std::int64_t run = static_cast<std::int64_t>(60.0 / dt);
    for (std::int64_t s = 0; s < burn; ++s) z = wf_step(z, cfg, rng);
    double acc = 0.0;
    for (std::int64_t s = 0; s < run; ++s) {
      z = wf_step(z, cfg, rng);
      acc += phi_m(z, 2);
    }
    const double avg = acc / static_cast<double>(run);
    const double target = coincidence_moment(p);
    CHECK(std::abs(avg - target) / target < 0.10);
  }
}

TEST_CASE("relabel flag changes the rate assignment but not validity") {
  const WfConfig ranked = make_wf_config(6, 1e-3, validate_params(1.0, 0.5),
                                         1e-3, true);
  const WfConfig fixed = make_wf_config(6, 1e-3, validate_params(1.0, 0.5),
                                        1e-3, false);
  PhiloxRng rng(62, 0);
  SimplexPoint a = random_interior_point(6, 1e-3, rng);
  SimplexPoint b = a;
  for (int i = 0; i < 500; ++i) {
    a = wf_step(a, ranked, rng);
    b = wf_step(b, fixed, rng);
    REQUIRE(a.z.minCoeff() >= a.eps - 1e-15);
    REQUIRE(b.z.minCoeff() >= b.eps - 1e-15);
  }
}
