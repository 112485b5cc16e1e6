#include "pdlab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

#include "pdlab/diversity_sde.hpp"
#include "pdlab/gem.hpp"
#include "pdlab/io.hpp"
#include "pdlab/kchain.hpp"
#include "pdlab/parallel.hpp"
#include "pdlab/special_functions.hpp"
#include "pdlab/stats.hpp"
#include "pdlab/urn.hpp"
#include "pdlab/wright_fisher.hpp"

namespace pdlab {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// Streams are partitioned per criterion so checks stay independent and a
// rerun of any subset is reproducible.
std::uint64_t check_stream(int criterion) {
  return static_cast<std::uint64_t>(criterion) << 32;
}

struct GridPoint {
  double theta;
  double alpha;
};

const std::vector<GridPoint>& acceptance_grid() {
  static const std::vector<GridPoint> g = [] {
    std::vector<GridPoint> v;
    for (double theta : {0.5, 1.0, 5.0}) {
      for (double alpha : {0.1, 0.5, 0.9}) v.push_back({theta, alpha});
    }
    return v;
  }();
  return g;
}

// ---------------------------------------------------------------------
// 1. Stick-break marginal: V_1 ~ Beta(1-alpha, theta+alpha), KS at 0.01.
// ---------------------------------------------------------------------
CheckResult check_stick_break(const CheckConfig& cfg) {
  CheckResult res{"stick-break-marginal", true, 0.0, {}};
  const std::int64_t draws = 100'000;
  int grid_index = 0;
  for (const auto& g : acceptance_grid()) {
    const Params p = validate_params(g.theta, g.alpha);
    const double a = 1.0 - p.alpha;
    const double b = p.theta + p.alpha;
    auto chunks = run_replicates<std::vector<double>>(
        100, cfg.seed, check_stream(1) + 1000 * grid_index, cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          std::vector<double> v(draws / 100);
          for (auto& x : v) x = draw_beta(rng, a, b);
          return v;
        });
    std::vector<double> v1;
    v1.reserve(draws);
    for (auto& c : chunks) v1.insert(v1.end(), c.begin(), c.end());
    const KsResult ks =
        ks_test(std::move(v1), [&](double x) { return inc_beta(a, b, x); });
    const bool ok = ks.pass();
    res.pass = res.pass && ok;
    res.lines.push_back(fmt("theta=%g alpha=%g: KS=%.5f threshold=%.5f [%s]",
                            g.theta, g.alpha, ks.statistic, ks.threshold,
                            ok ? "ok" : "FAIL"));
    ++grid_index;
  }
  return res;
}

// ---------------------------------------------------------------------
// 2. PD moment: mean phi_2 over 1e5 sample_pd draws at trunc 1e-10 vs
//    (1-alpha)/(1+theta) within 3 SE. The stick residual decays like
//    K^{-(1-alpha)/alpha}, so the pinned truncation is reachable only at
//    alpha = 0.1; larger alpha exhausts the stick cap and the point is
//    reported as failed rather than run at a looser truncation.
// ---------------------------------------------------------------------
CheckResult check_pd_moment(const CheckConfig& cfg) {
  CheckResult res{"pd-moment", true, 0.0, {}};
  const double trunc = 1e-10;
  const std::int64_t draws = 100'000;
  int grid_index = 0;
  for (const auto& g : acceptance_grid()) {
    const Params p = validate_params(g.theta, g.alpha);
    const std::uint64_t base = check_stream(2) + 1000 * grid_index;
    ++grid_index;
    // Probe feasibility once before fanning out.
    try {
      PhiloxRng probe(cfg.seed, base + 999);
      sample_pd(p, trunc, probe);
    } catch (const TruncationOverflow& e) {
      res.pass = false;
      res.lines.push_back(fmt("theta=%g alpha=%g: FAIL (%s)", g.theta,
                              g.alpha, e.what()));
      continue;
    }
    auto chunks = run_replicates<std::vector<double>>(
        100, cfg.seed, base, cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          std::vector<double> v(draws / 100);
          for (auto& x : v) x = phi_m(sample_pd(p, trunc, rng), 2);
          return v;
        });
    std::vector<double> phi2;
    phi2.reserve(draws);
    for (auto& c : chunks) phi2.insert(phi2.end(), c.begin(), c.end());
    const McEstimate e = mc_estimate(phi2);
    const double target = coincidence_moment(p);
    const bool ok = within_3se(e, target);
    res.pass = res.pass && ok;
    res.lines.push_back(
        fmt("theta=%g alpha=%g: mean=%.5f target=%.5f se=%.2e [%s]", g.theta,
            g.alpha, e.mean, target, e.std_error, ok ? "ok" : "FAIL"));
  }
  return res;
}

// ---------------------------------------------------------------------
// 3. Urn species count: mean K_n over 1e4 runs at n = 1000 vs the exact
//    recursion, within 3 SE.
// ---------------------------------------------------------------------
CheckResult check_urn_species(const CheckConfig& cfg) {
  CheckResult res{"urn-species-count", true, 0.0, {}};
  const std::int64_t n = 1000;
  const std::int64_t reps = 10'000;
  int grid_index = 0;
  for (const auto& g : acceptance_grid()) {
    const Params p = validate_params(g.theta, g.alpha);
    auto ks = run_replicates<double>(
        reps, cfg.seed, check_stream(3) + 100'000 * grid_index, cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          return static_cast<double>(urn_run(p, n, rng).k());
        });
    const McEstimate e = mc_estimate(ks);
    const double target = expected_k(p, n);
    const bool ok = within_3se(e, target);
    res.pass = res.pass && ok;
    res.lines.push_back(
        fmt("theta=%g alpha=%g: mean K=%.3f exact=%.3f se=%.3f [%s]", g.theta,
            g.alpha, e.mean, target, e.std_error, ok ? "ok" : "FAIL"));
    ++grid_index;
  }
  return res;
}

// ---------------------------------------------------------------------
// 4. alpha = 0 limits at n = 1e4: M1 against Poisson(theta) and
//    K_n / log n against the exact recursion.
// ---------------------------------------------------------------------
CheckResult check_alpha0_limits(const CheckConfig& cfg) {
  CheckResult res{"alpha0-limits", true, 0.0, {}};
  const std::int64_t n = 10'000;
  const std::int64_t reps = 10'000;
  int idx = 0;
  for (double theta : {0.5, 1.0, 2.0}) {
    const Params p = validate_params(theta, 0.0);
    struct KM {
      double k;
      std::int64_t m1;
    };
    auto samples = run_replicates<KM>(
        reps, cfg.seed, check_stream(4) + 100'000 * idx, cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          const PartitionState s = urn_run(p, n, rng);
          return KM{static_cast<double>(s.k()), s.m1};
        });
    std::vector<double> k_over_log;
    std::vector<std::int64_t> m1;
    k_over_log.reserve(reps);
    m1.reserve(reps);
    const double log_n = std::log(static_cast<double>(n));
    for (const auto& s : samples) {
      k_over_log.push_back(s.k / log_n);
      m1.push_back(s.m1);
    }
    const PoissonFit fit = poisson_fit(m1, theta);
    const McEstimate e = mc_estimate(k_over_log);
    const double target = expected_k(p, n) / log_n;
    const bool ok_fit = fit.pass;
    const bool ok_mean = within_3se(e, target);
    res.pass = res.pass && ok_fit && ok_mean;
    res.lines.push_back(
        fmt("theta=%g: M1 chi2=%.2f dof=%d p=%.4f [%s]; K/log n=%.4f "
            "oracle=%.4f se=%.2e [%s]",
            theta, fit.chi_square, fit.dof, fit.p_value,
            ok_fit ? "ok" : "FAIL", e.mean, target, e.std_error,
            ok_mean ? "ok" : "FAIL"));
    ++idx;
  }
  return res;
}

// ---------------------------------------------------------------------
// 5. Chain -> diffusion: terminal law of the rescaled markovized species
//    chain at n = 2000 vs the exact diversity transition, KS < 0.05.
// ---------------------------------------------------------------------
CheckResult check_chain_diffusion(const CheckConfig& cfg) {
  CheckResult res{"chain-diffusion", true, 0.0, {}};
  const Params p = validate_params(1.0, 0.5);
  const std::int64_t n = 2000;
  const double s0 = 0.5;
  const double horizon = 1.0;
  const std::int64_t reps = 5000;
  const double scale = std::pow(static_cast<double>(n), p.alpha);
  const std::int64_t k0 = static_cast<std::int64_t>(std::ceil(s0 * scale));
  const std::int64_t steps = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(n), 1.0 + p.alpha) * horizon));

  auto chain = run_replicates<double>(
      reps, cfg.seed, check_stream(5), cfg.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        KChainState s = k_init_markovized(n, k0);
        for (std::int64_t m = 0; m < steps; ++m) k_step_markovized(s, p, rng);
        return s.k / scale;
      });
  auto diffusion = run_replicates<double>(
      reps, cfg.seed, check_stream(5) + (1u << 20), cfg.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        return exact_transition(SState{s0, false}, p, horizon, rng).s;
      });
  const double ks = ks_two_sample_stat(chain, diffusion);
  res.pass = ks < 0.05;
  res.lines.push_back(fmt(
      "n=%lld k0=%lld: KS(chain terminal, exact S(1)) = %.4f (< 0.05) [%s]",
      static_cast<long long>(n), static_cast<long long>(k0), ks,
      res.pass ? "ok" : "FAIL"));
  return res;
}

// ---------------------------------------------------------------------
// 6. SDE internal consistency: exact transition vs full-truncation Euler
//    at dt = 1e-4, plus the first two moments of S(1).
// ---------------------------------------------------------------------
CheckResult check_sde_consistency(const CheckConfig& cfg) {
  CheckResult res{"sde-consistency", true, 0.0, {}};
  const Params p = validate_params(1.0, 0.5);
  const double s0 = 0.5;
  const double dt = 1e-4;
  const std::int64_t reps = 5000;
  const std::int64_t steps = static_cast<std::int64_t>(std::llround(1.0 / dt));

  auto exact = run_replicates<double>(
      reps, cfg.seed, check_stream(6), cfg.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        return exact_transition(SState{s0, false}, p, 1.0, rng).s;
      });
  auto euler = run_replicates<double>(
      reps, cfg.seed, check_stream(6) + (1u << 20), cfg.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        SState x{s0, false};
        for (std::int64_t m = 0; m < steps; ++m) x = euler_step(x, p, dt, rng);
        return x.s;
      });

  const double ks = ks_two_sample_stat(exact, euler);
  const bool ok_ks = ks < 0.03;
  res.lines.push_back(
      fmt("KS(exact, euler dt=1e-4) = %.4f (< 0.03) [%s]", ks,
          ok_ks ? "ok" : "FAIL"));

  const double mean_target = s0 + p.theta;                      // s0 + theta t
  const double var_target = 2 * p.alpha * s0 + p.alpha * p.theta;  // at t = 1
  bool ok_all = ok_ks;
  const std::pair<const char*, const std::vector<double>*> tagged[] = {
      {"exact", &exact}, {"euler", &euler}};
  for (const auto& [label, sample] : tagged) {
    const McEstimate e = mc_estimate(*sample);
    const double var = sample_variance(*sample);
    const double var_se = variance_std_error(*sample);
    const bool ok_mean = within_3se(e, mean_target);
    const bool ok_var = std::abs(var - var_target) <= 3.0 * var_se;
    ok_all = ok_all && ok_mean && ok_var;
    res.lines.push_back(
        fmt("%s: E[S1]=%.4f (target %.4f, se %.3g) [%s]; Var[S1]=%.4f "
            "(target %.4f, se %.3g) [%s]",
            label, e.mean, mean_target, e.std_error, ok_mean ? "ok" : "FAIL",
            var, var_target, var_se, ok_var ? "ok" : "FAIL"));
  }
  res.pass = ok_all;
  return res;
}

// ---------------------------------------------------------------------
// 7. Boundary behavior: absorption trap for theta <= 0; entrance for
//    theta >= alpha.
// ---------------------------------------------------------------------
CheckResult check_boundary_behavior(const CheckConfig& cfg) {
  CheckResult res{"boundary-behavior", true, 0.0, {}};
  const std::int64_t paths = 1000;

  {
    const Params p = validate_params(-0.1, 0.5);
    const double dt = 1e-3;
    const std::int64_t steps =
        static_cast<std::int64_t>(std::llround(50.0 / dt));
    auto outcome = run_replicates<int>(
        paths, cfg.seed, check_stream(7), cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          SState x{0.5, false};
          for (std::int64_t m = 0; m < steps; ++m) x = euler_step(x, p, dt, rng);
          if (!x.absorbed) return 0;
          // Frozen: the trap must hold under further stepping.
          for (int m = 0; m < 100; ++m) x = euler_step(x, p, dt, rng);
          return (x.absorbed && x.s == 0.0) ? 1 : 0;
        });
    std::int64_t good = 0;
    for (int v : outcome) good += v;
    const bool ok = good == paths;
    res.pass = res.pass && ok;
    res.lines.push_back(fmt(
        "theta=-0.1: %lld/%lld paths absorbed by t=50 and frozen [%s]",
        static_cast<long long>(good), static_cast<long long>(paths),
        ok ? "ok" : "FAIL"));
  }
  {
    const Params p = validate_params(0.6, 0.5);
    const double dt = 1e-4;
    const std::int64_t steps =
        static_cast<std::int64_t>(std::llround(1.0 / dt));
    auto dipped = run_replicates<int>(
        paths, cfg.seed, check_stream(7) + (1u << 20), cfg.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          SState x{0.5, false};
          double lo = x.s;
          for (std::int64_t m = 0; m < steps; ++m) {
            x = euler_step(x, p, dt, rng);
            lo = std::min(lo, x.s);
          }
          return lo < 1e-4 ? 1 : 0;
        });
    std::int64_t n_dip = 0;
    for (int v : dipped) n_dip += v;
    const bool ok = n_dip < paths / 100;
    res.pass = res.pass && ok;
    res.lines.push_back(
        fmt("theta=0.6 >= alpha=0.5: %lld/%lld paths dipped below 1e-4 on "
            "[0,1] (< 1%%) [%s]",
            static_cast<long long>(n_dip), static_cast<long long>(paths),
            ok ? "ok" : "FAIL"));
  }
  return res;
}

// ---------------------------------------------------------------------
// 8. Drift equivalence: decomposition vs closed form to 1e-10 at random
//    interior points, and the boundary sign conditions exactly.
// ---------------------------------------------------------------------
CheckResult check_drift_equivalence(const CheckConfig& cfg) {
  CheckResult res{"drift-equivalence", true, 0.0, {}};
  const Params p = validate_params(1.0, 0.5);
  for (int n : {5, 50, 500}) {
    const double eps = default_epsilon(n);
    const WfConfig wf = make_wf_config(n, eps, p, 1e-4);
    PhiloxRng rng(cfg.seed, check_stream(8) + n);
    double max_gap = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      Vector y(n);
      for (int i = 0; i < n; ++i) y[i] = draw_gamma(rng, 1.0);
      y /= y.sum();
      Vector z = (eps + (1.0 - n * eps) * y.array()).matrix();
      const SimplexPoint sp = make_simplex_point(std::move(z), eps);
      max_gap = std::max(
          max_gap, (drift_from_rates(sp, wf) - drift_closed_form(sp, wf))
                       .cwiseAbs()
                       .maxCoeff());
    }
    const bool ok_eq = max_gap <= 1e-10;

    // Boundary signs: coordinate pinned at the floor and at the ceiling.
    bool ok_sign = true;
    for (int rep = 0; rep < 10; ++rep) {
      Vector y(n - 1);
      for (int i = 0; i < n - 1; ++i) y[i] = draw_gamma(rng, 1.0);
      y /= y.sum();
      Vector z(n);
      z[0] = eps;
      for (int i = 1; i < n; ++i) z[i] = eps + (1.0 - n * eps) * y[i - 1];
      const SimplexPoint at_floor = make_simplex_point(std::move(z), eps);
      ok_sign = ok_sign && drift_closed_form(at_floor, wf)[0] > 0.0;
    }
    Vector corner = Vector::Constant(n, eps);
    corner[n / 2] = 1.0 - (n - 1) * eps;
    const SimplexPoint at_ceiling = make_simplex_point(std::move(corner), eps);
    ok_sign = ok_sign && drift_closed_form(at_ceiling, wf)[n / 2] < 0.0;

    res.pass = res.pass && ok_eq && ok_sign;
    res.lines.push_back(
        fmt("n=%d: max |decomposition - closed form| = %.3e (<= 1e-10) [%s]; "
            "boundary signs [%s]",
            n, max_gap, ok_eq ? "ok" : "FAIL", ok_sign ? "ok" : "FAIL"));
  }
  return res;
}

// ---------------------------------------------------------------------
// 9. Limit-drift diagnostic: the drift action gap on phi_3 shrinks as n
//    runs through 10, 100, 1000 at matched PD-sampled points.
// ---------------------------------------------------------------------
CheckResult check_limit_drift_gap(const CheckConfig& cfg) {
  CheckResult res{"limit-drift-gap", true, 0.0, {}};
  const Params p = validate_params(1.0, 0.5);
  const int reps = 20;
  const std::array<int, 3> ns{10, 100, 1000};
  // Matched points: one master stick sequence per replicate, truncated to
  // the top n ranks for each n. The stick truncation (1e-4 residual mass)
  // only limits how deep the rank prefix reaches; 3e4-odd sticks cover
  // n = 1000 comfortably.
  auto gaps = run_replicates<std::array<double, 3>>(
      reps, cfg.seed, check_stream(9), cfg.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        const OrderedPoint master = sample_pd(p, 1e-4, rng);
        std::array<double, 3> out{};
        for (std::size_t j = 0; j < ns.size(); ++j) {
          const int n = ns[j];
          const double eps = default_epsilon(n);
          const WfConfig wf = make_wf_config(n, eps, p, 1e-4);
          out[j] = limit_drift_gap(lift_to_simplex(master, n, eps), wf, 3);
        }
        return out;
      });
  std::array<double, 3> mean{};
  for (const auto& g : gaps) {
    for (std::size_t j = 0; j < 3; ++j) mean[j] += g[j] / reps;
  }
  const bool ok = mean[0] > mean[1] && mean[1] > mean[2];
  res.pass = ok;
  res.lines.push_back(fmt(
      "mean gap over %d matched PD points: n=10: %.5f, n=100: %.5f, "
      "n=1000: %.5f (strictly decreasing) [%s]",
      reps, mean[0], mean[1], mean[2], ok ? "ok" : "FAIL"));
  return res;
}

// ---------------------------------------------------------------------
// 10. Stationarity proxy for the finite-n construction: long-run time
//     average of phi_2 against (1-alpha)/(1+theta) within 10% relative,
//     at the pinned setup n=50, eps=50^{-1.2}, dt=1e-4.
// ---------------------------------------------------------------------
CheckResult check_wf_stationarity(const CheckConfig& cfg) {
  CheckResult res{"wf-stationarity", true, 0.0, {}};
  const int n = 50;
  const double eps = std::pow(50.0, -1.2);
  const double dt = 1e-4;
  const double burn_in = 10.0;
  const double horizon = 100.0;
  const std::vector<GridPoint> combos{{1.0, 0.0}, {1.0, 0.3}, {2.0, 0.5}};

  // The three combos are independent; use the replicate machinery to run
  // them in parallel while keeping per-combo streams fixed.
  auto outcomes = run_replicates<std::string>(
      static_cast<std::int64_t>(combos.size()), cfg.seed, check_stream(10),
      cfg.threads, [&](std::int64_t idx, PhiloxRng& rng) {
        const GridPoint g = combos[static_cast<std::size_t>(idx)];
        const Params p = validate_params(g.theta, g.alpha);
        const WfConfig wf = make_wf_config(n, eps, p, dt);
        SimplexPoint z =
            lift_to_simplex(sample_pd(p, 1e-6, rng), n, eps);
        const std::int64_t burn_steps =
            static_cast<std::int64_t>(std::llround(burn_in / dt));
        const std::int64_t run_steps =
            static_cast<std::int64_t>(std::llround(horizon / dt));
        for (std::int64_t s = 0; s < burn_steps; ++s) z = wf_step(z, wf, rng);
        double acc = 0.0;
        for (std::int64_t s = 0; s < run_steps; ++s) {
          z = wf_step(z, wf, rng);
          acc += phi_m(z, 2);
        }
        const double avg = acc / static_cast<double>(run_steps);
        const double target = coincidence_moment(p);
        const double rel = std::abs(avg - target) / target;
        const bool ok = rel <= 0.10;
        // The floored state space caps phi_2 at its concentrated corner;
        // report that cap so an unattainable target is visible.
        const double cap = std::pow(1.0 - (n - 1) * eps, 2.0) +
                           (n - 1) * eps * eps;
        return fmt(
            "theta=%g alpha=%g: time-avg phi2=%.4f target=%.4f rel-err=%.1f%% "
            "(state-space max phi2=%.4f) [%s]",
            g.theta, g.alpha, avg, target, 100.0 * rel, cap,
            ok ? "ok" : "FAIL");
      });
  for (const auto& line : outcomes) {
    res.lines.push_back(line);
    if (line.find("[FAIL]") != std::string::npos) res.pass = false;
  }
  return res;
}

// ---------------------------------------------------------------------
// 11. Determinism: identical seed means byte-identical results, at any
//     thread count.
// ---------------------------------------------------------------------
CheckResult check_determinism(const CheckConfig& cfg) {
  CheckResult res{"determinism", true, 0.0, {}};

  auto sde_endpoints = [&](unsigned threads) {
    const Params p = validate_params(1.0, 0.5);
    auto vals = run_replicates<double>(
        500, cfg.seed, check_stream(11), threads,
        [&](std::int64_t, PhiloxRng& rng) {
          SState x{0.5, false};
          for (int m = 0; m < 100; ++m) x = euler_step(x, p, 1e-2, rng);
          return x.s;
        });
    std::string s;
    for (double v : vals) s += format_double(v) + "\n";
    return s;
  };
  const std::string serial = sde_endpoints(1);
  const std::string fanned = sde_endpoints(4);
  const bool ok_threads = serial == fanned;
  res.lines.push_back(fmt("500 SDE endpoints, 1 thread vs 4 threads: %s",
                          ok_threads ? "byte-identical [ok]" : "DIFFER [FAIL]"));

  auto wf_digest = [&]() {
    const Params p = validate_params(1.0, 0.3);
    const WfConfig wf = make_wf_config(10, 1e-3, p, 1e-3);
    PhiloxRng rng(cfg.seed, check_stream(11) + 7);
    auto path = wf_run(wf, 1.0, 0.1, rng);
    std::string s;
    for (const auto& v : path.values) s += format_double(phi_m(v, 2)) + ",";
    return s;
  };
  const bool ok_wf = wf_digest() == wf_digest();
  res.lines.push_back(fmt("wf_run rerun: %s",
                          ok_wf ? "byte-identical [ok]" : "DIFFER [FAIL]"));

  auto urn_digest = [&]() {
    const Params p = validate_params(5.0, 0.9);
    PhiloxRng rng(cfg.seed, check_stream(11) + 8);
    const PartitionState s = urn_run(p, 2000, rng);
    std::string out;
    for (auto b : s.block_sizes) out += std::to_string(b) + ",";
    return out;
  };
  const bool ok_urn = urn_digest() == urn_digest();
  res.lines.push_back(fmt("urn_run rerun: %s",
                          ok_urn ? "byte-identical [ok]" : "DIFFER [FAIL]"));

  res.pass = ok_threads && ok_wf && ok_urn;
  return res;
}

CheckResult timed(CheckResult (*fn)(const CheckConfig&),
                  const CheckConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult res = fn(cfg);
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

}  // namespace

std::string CheckResult::summary() const {
  std::ostringstream os;
  os << (pass ? "[PASS] " : "[FAIL] ") << id << fmt(" (%.1fs)", seconds);
  for (const auto& l : lines) os << "\n    " << l;
  return os.str();
}

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = [] {
    std::vector<CheckSpec> r;
    auto add = [&](std::string id, bool slow, std::string title,
                   CheckResult (*fn)(const CheckConfig&)) {
      r.push_back(CheckSpec{std::move(id), slow, std::move(title),
                            [fn](const CheckConfig& c) { return timed(fn, c); }});
    };
    add("stick-break-marginal", false,
        "V1 marginal is Beta(1-alpha, theta+alpha)", check_stick_break);
    add("pd-moment", false, "E[phi2] of PD draws matches (1-a)/(1+t)",
        check_pd_moment);
    add("urn-species-count", false, "urn K_n matches the exact recursion",
        check_urn_species);
    add("alpha0-limits", false, "alpha=0: M1 Poisson fit and K/log n",
        check_alpha0_limits);
    add("chain-diffusion", true, "rescaled species chain matches exact S",
        check_chain_diffusion);
    add("sde-consistency", false, "exact transition agrees with Euler",
        check_sde_consistency);
    add("boundary-behavior", false, "absorption trap and entrance boundary",
        check_boundary_behavior);
    add("drift-equivalence", false, "rate decomposition equals closed form",
        check_drift_equivalence);
    add("limit-drift-gap", false, "drift action gap on phi3 shrinks in n",
        check_limit_drift_gap);
    add("wf-stationarity", true, "long-run phi2 of the finite-n diffusion",
        check_wf_stationarity);
    add("determinism", false, "same seed, same bytes, any thread count",
        check_determinism);
    return r;
  }();
  return registry;
}

const CheckSpec* find_check(const std::string& id) {
  for (const auto& spec : check_registry()) {
    if (spec.id == id) return &spec;
  }
  return nullptr;
}

CheckResult run_check(const std::string& id, const CheckConfig& cfg) {
  const CheckSpec* spec = find_check(id);
  if (!spec) throw ConfigError("unknown check id '" + id + "'");
  return spec->fn(cfg);
}

}  // namespace pdlab
