// pdlab: experiment runner for the simulation library. Every subcommand
// writes CSV or JSON with the resolved config embedded, and reruns with
// the same seed are byte-identical at any --threads value.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pdlab/acceptance.hpp"
#include "pdlab/diversity_sde.hpp"
#include "pdlab/gem.hpp"
#include "pdlab/io.hpp"
#include "pdlab/kchain.hpp"
#include "pdlab/parallel.hpp"
#include "pdlab/particle.hpp"
#include "pdlab/stats.hpp"
#include "pdlab/urn.hpp"
#include "pdlab/version.hpp"
#include "pdlab/wright_fisher.hpp"

namespace {

using namespace pdlab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PDLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("PDLAB_SEED is not a valid integer: ") +
                        env);
    }
  }
  return kDefaultSeed;
}

struct CommonOpts {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string out = "-";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "master RNG seed")
      ->default_val(opts.seed);
  cmd->add_option("--threads", opts.threads,
                  "replica-parallel worker threads (0 = all cores)");
  cmd->add_option("-o,--out", opts.out, "output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->set_config("--config", "", "read options from a key=value file");
}

void emit(const CommonOpts& opts, const Table& table, OutputMeta meta) {
  meta.seed = opts.seed;
  meta.version = kVersion;
  std::ostringstream buffer;
  write_table(buffer, opts.format, table, meta);
  if (opts.out == "-") {
    std::cout << buffer.str();
  } else {
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output path " + opts.out);
    f << buffer.str();
  }
}

std::string fmt_kv(double v) { return format_double(v); }

// Echo the resolved configuration: flags beat config-file values beat
// defaults, and what ran is exactly what is printed.
void echo_config(const OutputMeta& meta) {
  std::cerr << "resolved config:";
  for (const auto& [k, v] : meta.config) std::cerr << " " << k << "=" << v;
  std::cerr << "\n";
}

int cmd_sample_gem(const CommonOpts& opts, double theta, double alpha,
                   double trunc, std::int64_t draws, bool long_format) {
  const Params p = validate_params(theta, alpha);
  OutputMeta meta;
  meta.config = {{"command", "sample-gem"},   {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)},    {"trunc", fmt_kv(trunc)},
                 {"draws", std::to_string(draws)},
                 {"format", opts.format}};
  echo_config(meta);
  auto rows = run_replicates<GemDraw>(
      draws, opts.seed, 0, opts.threads,
      [&](std::int64_t, PhiloxRng& rng) { return sample_gem(p, trunc, rng); });
  Table t;
  if (long_format) {
    t.columns = {"draw", "rank", "weight"};
    for (std::int64_t d = 0; d < draws; ++d) {
      const auto& g = rows[static_cast<std::size_t>(d)];
      for (Index r = 0; r < g.weights.size(); ++r) {
        t.rows.push_back({d, static_cast<std::int64_t>(r + 1), g.weights[r]});
      }
    }
  } else {
    t.columns = {"draw", "k", "residual", "v1", "phi2"};
    for (std::int64_t d = 0; d < draws; ++d) {
      const auto& g = rows[static_cast<std::size_t>(d)];
      t.rows.push_back({d, static_cast<std::int64_t>(g.weights.size()),
                        g.residual, g.weights[0], phi_m(g.weights, 2)});
    }
  }
  emit(opts, t, meta);
  return kExitOk;
}

int cmd_sample_urn(const CommonOpts& opts, double theta, double alpha,
                   std::int64_t n, std::int64_t replicates, bool long_format) {
  const Params p = validate_params(theta, alpha);
  OutputMeta meta;
  meta.config = {{"command", "sample-urn"}, {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)},  {"n", std::to_string(n)},
                 {"replicates", std::to_string(replicates)},
                 {"format", opts.format}};
  echo_config(meta);
  auto rows = run_replicates<PartitionState>(
      replicates, opts.seed, 0, opts.threads,
      [&](std::int64_t, PhiloxRng& rng) { return urn_run(p, n, rng); });
  Table t;
  if (long_format) {
    t.columns = {"replicate", "block", "size"};
    for (std::int64_t r = 0; r < replicates; ++r) {
      const auto& s = rows[static_cast<std::size_t>(r)];
      for (std::size_t b = 0; b < s.block_sizes.size(); ++b) {
        t.rows.push_back({r, static_cast<std::int64_t>(b + 1),
                          s.block_sizes[b]});
      }
    }
  } else {
    t.columns = {"replicate", "n", "k", "m1"};
    for (std::int64_t r = 0; r < replicates; ++r) {
      const auto& s = rows[static_cast<std::size_t>(r)];
      t.rows.push_back({r, s.n, s.k(), s.m1});
    }
  }
  emit(opts, t, meta);
  return kExitOk;
}

void append_ordered_rows(Table& t, const PathRecord<OrderedPoint>& path,
                         std::int64_t path_id) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& v = path.values[i];
    std::vector<Cell> row{path_id, path.times[i],
                          static_cast<std::int64_t>(v.z.size()),
                          phi_m(v, 2), phi_m(v, 3)};
    for (Index j = 0; j < 5; ++j) {
      row.push_back(j < v.z.size() ? v.z[j] : 0.0);
    }
    t.rows.push_back(std::move(row));
  }
}

int cmd_run_particle(const CommonOpts& opts, double theta, double alpha,
                     std::int64_t n, double t_horizon, double record_dt,
                     const std::string& init, std::int64_t paths) {
  const Params p = validate_params(theta, alpha);
  OutputMeta meta;
  meta.config = {{"command", "run-particle"}, {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)},    {"n", std::to_string(n)},
                 {"t", fmt_kv(t_horizon)},    {"record_dt", fmt_kv(record_dt)},
                 {"init", init},              {"paths", std::to_string(paths)},
                 {"format", opts.format}};
  echo_config(meta);
  auto records = run_replicates<PathRecord<OrderedPoint>>(
      paths, opts.seed, 0, opts.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        ParticleSystem sys = (init == "mono")
                                 ? particle_init_monomorphic(n)
                                 : particle_init_from_urn(p, n, rng);
        return particle_run_rescaled(std::move(sys), p, t_horizon, record_dt,
                                     rng);
      });
  Table t;
  t.columns = {"path", "time", "k", "phi2", "phi3", "z1", "z2", "z3", "z4",
               "z5"};
  for (std::int64_t ipath = 0; ipath < paths; ++ipath) {
    append_ordered_rows(t, records[static_cast<std::size_t>(ipath)], ipath);
  }
  emit(opts, t, meta);
  return kExitOk;
}

int cmd_run_kchain(const CommonOpts& opts, double theta, double alpha,
                   std::int64_t n, double t_horizon, double record_dt,
                   std::string variant, double s0, std::int64_t k0,
                   std::int64_t paths) {
  const Params p = validate_params(theta, alpha);
  if (variant == "auto") variant = (alpha == 0.0) ? "exact" : "markovized";
  const KVariant kv =
      (variant == "exact") ? KVariant::exact : KVariant::markovized;
  if (k0 < 1 && kv == KVariant::markovized) {
    const double scale = (alpha > 0.0)
                             ? std::pow(static_cast<double>(n), alpha)
                             : std::log(static_cast<double>(n));
    k0 = static_cast<std::int64_t>(std::ceil(s0 * scale));
  }
  OutputMeta meta;
  meta.config = {{"command", "run-kchain"}, {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)},  {"n", std::to_string(n)},
                 {"t", fmt_kv(t_horizon)},  {"record_dt", fmt_kv(record_dt)},
                 {"variant", variant},      {"k0", std::to_string(k0)},
                 {"paths", std::to_string(paths)},
                 {"format", opts.format}};
  echo_config(meta);
  auto records = run_replicates<PathRecord<double>>(
      paths, opts.seed, 0, opts.threads,
      [&](std::int64_t, PhiloxRng& rng) {
        return k_run_rescaled(p, n, t_horizon, kv, rng, k0, record_dt);
      });
  Table t;
  t.columns = {"path", "time", "value"};
  for (std::int64_t ipath = 0; ipath < paths; ++ipath) {
    const auto& rec = records[static_cast<std::size_t>(ipath)];
    for (std::size_t i = 0; i < rec.size(); ++i) {
      t.rows.push_back({ipath, rec.times[i], rec.values[i]});
    }
  }
  emit(opts, t, meta);
  return kExitOk;
}

int cmd_run_sde(const CommonOpts& opts, double theta, double alpha, double s0,
                double t_horizon, double dt, std::int64_t paths,
                const std::string& method, double record_dt) {
  const Params p = validate_params(theta, alpha);
  OutputMeta meta;
  meta.config = {{"command", "run-sde"},  {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)}, {"s0", fmt_kv(s0)},
                 {"t", fmt_kv(t_horizon)}, {"dt", fmt_kv(dt)},
                 {"paths", std::to_string(paths)},
                 {"method", method},       {"record_dt", fmt_kv(record_dt)},
                 {"format", opts.format}};
  echo_config(meta);

  Table t;
  if (record_dt > 0.0 && method == "euler") {
    auto records = run_replicates<PathRecord<double>>(
        paths, opts.seed, 0, opts.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          PathRecord<double> rec;
          SState x{s0, false};
          const std::int64_t steps =
              static_cast<std::int64_t>(std::floor(t_horizon / dt));
          const std::int64_t stride = std::max<std::int64_t>(
              1, static_cast<std::int64_t>(std::llround(record_dt / dt)));
          rec.times.push_back(0.0);
          rec.values.push_back(x.s);
          for (std::int64_t m = 1; m <= steps; ++m) {
            x = euler_step(x, p, dt, rng);
            if (m % stride == 0 || m == steps) {
              rec.times.push_back(m * dt);
              rec.values.push_back(x.s);
            }
          }
          return rec;
        });
    t.columns = {"path", "time", "s"};
    for (std::int64_t ipath = 0; ipath < paths; ++ipath) {
      const auto& rec = records[static_cast<std::size_t>(ipath)];
      for (std::size_t i = 0; i < rec.size(); ++i) {
        t.rows.push_back({ipath, rec.times[i], rec.values[i]});
      }
    }
  } else {
    auto endpoints = run_replicates<SState>(
        paths, opts.seed, 0, opts.threads,
        [&](std::int64_t, PhiloxRng& rng) {
          if (method == "exact") {
            return exact_transition(SState{s0, false}, p, t_horizon, rng);
          }
          SState x{s0, false};
          const std::int64_t steps =
              static_cast<std::int64_t>(std::floor(t_horizon / dt));
          for (std::int64_t m = 0; m < steps; ++m) {
            x = euler_step(x, p, dt, rng);
          }
          return x;
        });
    t.columns = {"path", "s", "absorbed"};
    for (std::int64_t ipath = 0; ipath < paths; ++ipath) {
      const auto& x = endpoints[static_cast<std::size_t>(ipath)];
      t.rows.push_back({ipath, x.s, static_cast<std::int64_t>(x.absorbed)});
    }
  }
  emit(opts, t, meta);
  return kExitOk;
}

int cmd_run_wf(const CommonOpts& opts, double theta, double alpha,
               std::int64_t n, double eps, double dt, double t_horizon,
               double record_dt, bool no_relabel, double init_trunc) {
  const Params p = validate_params(theta, alpha);
  if (eps <= 0.0) eps = default_epsilon(static_cast<int>(n));
  const WfConfig wf =
      make_wf_config(static_cast<int>(n), eps, p, dt, !no_relabel);
  OutputMeta meta;
  meta.config = {{"command", "run-wf"},   {"theta", fmt_kv(theta)},
                 {"alpha", fmt_kv(alpha)}, {"n", std::to_string(n)},
                 {"eps", fmt_kv(eps)},     {"dt", fmt_kv(dt)},
                 {"t", fmt_kv(t_horizon)}, {"record_dt", fmt_kv(record_dt)},
                 {"relabel", no_relabel ? "false" : "true"},
                 {"init_trunc", fmt_kv(init_trunc)},
                 {"format", opts.format}};
  echo_config(meta);
  PhiloxRng rng(opts.seed, 0);
  auto path = wf_run(wf, t_horizon, record_dt, rng, init_trunc);
  Table t;
  t.columns = {"path", "time", "k", "phi2", "phi3", "z1", "z2", "z3", "z4",
               "z5"};
  append_ordered_rows(t, path, 0);
  emit(opts, t, meta);
  return kExitOk;
}

int cmd_check(const std::string& id, double theta, double alpha,
              const CheckConfig& cfg) {
  if (id == "boundary-class") {
    const Params p = validate_params(theta, alpha);
    const BoundaryReport r = classify_boundary(p);
    std::cout << to_string(r.at_zero) << "\n";
    std::cerr << "at_infinity=" << to_string(r.at_infinity)
              << " recurrence=" << to_string(r.recurrence) << "\n";
    return kExitOk;
  }
  const CheckResult res = run_check(id, cfg);
  std::cout << res.summary() << "\n";
  return res.pass ? kExitOk : kExitCheckFailed;
}

int cmd_all_checks(const std::string& profile, const CheckConfig& cfg,
                   const CommonOpts& opts) {
  bool all_pass = true;
  Table report;
  report.columns = {"id", "pass", "seconds", "detail"};
  for (const auto& spec : check_registry()) {
    if (profile == "desk" && spec.slow) continue;
    if (profile == "slow" && !spec.slow) continue;
    const CheckResult res = spec.fn(cfg);
    std::cout << res.summary() << "\n";
    std::string detail;
    for (const auto& l : res.lines) {
      if (!detail.empty()) detail += " | ";
      detail += l;
    }
    report.rows.push_back({std::string(res.id),
                           static_cast<std::int64_t>(res.pass), res.seconds,
                           detail});
    all_pass = all_pass && res.pass;
  }
  std::cout << (all_pass ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED")
            << "\n";
  if (opts.out != "-") {
    OutputMeta meta;
    meta.config = {{"command", "all-checks"}, {"profile", profile}};
    CommonOpts json_opts = opts;
    json_opts.format = "json";
    emit(json_opts, report, meta);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdlab: Poisson-Dirichlet population dynamics simulator"};
  app.set_version_flag("--version", std::string(pdlab::kVersion));
  app.require_subcommand(1);

  try {
    CommonOpts opts;
    opts.seed = default_seed();

    double theta = 1.0, alpha = 0.0, trunc = 1e-10, s0 = 0.5;
    double t_horizon = 1.0, dt = 1e-4, record_dt = 0.0, eps = 0.0;
    double init_trunc = 1e-6;
    std::int64_t n = 100, draws = 100, replicates = 100, paths = 1, k0 = -1;
    bool long_format = false, no_relabel = false;
    std::string init = "urn", variant = "auto", method = "euler";
    std::string check_id, profile = "desk";

    auto* gem = app.add_subcommand("sample-gem", "stick-breaking draws");
    gem->add_option("--theta", theta)->required();
    gem->add_option("--alpha", alpha)->required();
    gem->add_option("--trunc", trunc, "residual mass to stop at");
    gem->add_option("--draws", draws);
    gem->add_flag("--long", long_format, "one row per (draw, rank, weight)");
    add_common(gem, opts);

    auto* urn = app.add_subcommand("sample-urn", "urn partition draws");
    urn->add_option("--theta", theta)->required();
    urn->add_option("--alpha", alpha)->required();
    urn->add_option("-n,--n", n)->required();
    urn->add_option("--replicates", replicates);
    urn->add_flag("--long", long_format, "one row per (replicate, block)");
    add_common(urn, opts);

    auto* particle =
        app.add_subcommand("run-particle", "rescaled Moran particle chain");
    particle->add_option("--theta", theta)->required();
    particle->add_option("--alpha", alpha)->required();
    particle->add_option("-n,--n", n)->required();
    particle->add_option("-t,--t", t_horizon, "horizon in rescaled time");
    particle->add_option("--record-dt", record_dt)->default_val(0.01);
    particle->add_option("--init", init, "urn or mono")
        ->check(CLI::IsMember({"urn", "mono"}));
    particle->add_option("--paths", paths);
    add_common(particle, opts);

    auto* kchain =
        app.add_subcommand("run-kchain", "rescaled species-count chain");
    kchain->add_option("--theta", theta)->required();
    kchain->add_option("--alpha", alpha)->required();
    kchain->add_option("-n,--n", n)->required();
    kchain->add_option("-t,--t", t_horizon, "horizon in rescaled time");
    kchain->add_option("--record-dt", record_dt)
        ->default_val(0.0);  // 0: endpoints only
    kchain->add_option("--variant", variant, "exact, markovized or auto")
        ->check(CLI::IsMember({"exact", "markovized", "auto"}));
    kchain->add_option("--s0", s0, "target initial diversity");
    kchain->add_option("--k0", k0, "explicit initial block count");
    kchain->add_option("--paths", paths);
    add_common(kchain, opts);

    auto* sde = app.add_subcommand("run-sde", "diversity diffusion");
    sde->add_option("--theta", theta)->required();
    sde->add_option("--alpha", alpha)->required();
    sde->add_option("--s0", s0);
    sde->add_option("-t,--t", t_horizon);
    sde->add_option("--dt", dt);
    sde->add_option("--paths", paths)->default_val(100);
    sde->add_option("--method", method, "euler or exact")
        ->check(CLI::IsMember({"euler", "exact"}));
    sde->add_option("--record-dt", record_dt,
                    "record full paths (euler only); 0 = endpoints");
    add_common(sde, opts);

    auto* wf = app.add_subcommand("run-wf", "finite-n Wright-Fisher diffusion");
    wf->add_option("--theta", theta)->required();
    wf->add_option("--alpha", alpha)->required();
    wf->add_option("-n,--n", n)->required();
    wf->add_option("--eps", eps, "floor (default n^-1.1)");
    wf->add_option("--dt", dt);
    wf->add_option("-t,--t", t_horizon);
    wf->add_option("--record-dt", record_dt)->default_val(0.1);
    wf->add_flag("--no-relabel", no_relabel,
                 "keep labels fixed instead of rank-ordering each step");
    wf->add_option("--init-trunc", init_trunc,
                   "stick residual for the initial PD draw");
    add_common(wf, opts);

    auto* check = app.add_subcommand("check", "run one acceptance check");
    check->add_option("id", check_id, "check id or 'boundary-class'")
        ->required();
    check->add_option("--theta", theta);
    check->add_option("--alpha", alpha);
    add_common(check, opts);

    auto* all = app.add_subcommand("all-checks", "run the acceptance suite");
    all->add_option("--profile", profile, "desk, slow or full")
        ->check(CLI::IsMember({"desk", "slow", "full"}));
    add_common(all, opts);

    auto* list = app.add_subcommand("list-checks", "list acceptance checks");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kExitOk : kExitConfigError;
    }

    if (gem->parsed()) {
      return cmd_sample_gem(opts, theta, alpha, trunc, draws, long_format);
    }
    if (urn->parsed()) {
      return cmd_sample_urn(opts, theta, alpha, n, replicates, long_format);
    }
    if (particle->parsed()) {
      return cmd_run_particle(opts, theta, alpha, n, t_horizon, record_dt,
                              init, paths);
    }
    if (kchain->parsed()) {
      return cmd_run_kchain(opts, theta, alpha, n, t_horizon, record_dt,
                            variant, s0, k0, paths);
    }
    if (sde->parsed()) {
      return cmd_run_sde(opts, theta, alpha, s0, t_horizon, dt, paths, method,
                         record_dt);
    }
    if (wf->parsed()) {
      return cmd_run_wf(opts, theta, alpha, n, eps, dt, t_horizon, record_dt,
                        no_relabel, init_trunc);
    }
    if (check->parsed()) {
      return cmd_check(check_id, theta, alpha,
                       CheckConfig{opts.seed, opts.threads});
    }
    if (all->parsed()) {
      return cmd_all_checks(profile, CheckConfig{opts.seed, opts.threads},
                            opts);
    }
    if (list->parsed()) {
      for (const auto& spec : pdlab::check_registry()) {
        std::cout << spec.id << (spec.slow ? " [slow] " : " ") << "- "
                  << spec.title << "\n";
      }
      return kExitOk;
    }
  } catch (const pdlab::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
