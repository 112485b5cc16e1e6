#include "pdlab/wright_fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdlab/gem.hpp"

namespace pdlab {

namespace {

// 1 - exp(-2 (z - eps)/eps), computed through expm1 so it is exact for
// the huge exponents the interior produces and for z at the floor.
inline double boundary_bracket(double z, double eps) {
  return -std::expm1(-2.0 * (z - eps) / eps);
}

Vector drift_closed_form_impl(const Vector& z, const WfConfig& cfg) {
  const int n = cfg.n;
  const double theta = cfg.params.theta;
  const double alpha = cfg.params.alpha;
  Vector bracket(n);
  for (int i = 0; i < n; ++i) bracket[i] = boundary_bracket(z[i], cfg.eps);
  const double bracket_sum = bracket.sum();
  const double rank_coef = 2.0 * alpha / (static_cast<double>(n) * (n + 1));
  Vector b(n);
  for (int i = 0; i < n; ++i) {
    b[i] = theta * (1.0 - z[i]) / (n - 1) - theta * z[i] +
           rank_coef * (i + 1) * bracket_sum - alpha * bracket[i];
  }
  return b;
}

// Lower-triangular root of the standard Wright-Fisher covariance
// y_i (delta_ij - y_j) for y on the unit simplex:
//   L_jj = sqrt(y_j Q_j / Q_{j-1}),   L_ij = -y_i sqrt(y_j / (Q_j Q_{j-1}))
// with Q_j = 1 - y_1 - ... - y_j. Exhausted tails produce zero columns.
Matrix wf_unit_root(const Vector& y) {
  const Index n = y.size();
  Matrix L = Matrix::Zero(n, n);
  double q_prev = 1.0;
  for (Index j = 0; j < n; ++j) {
    const double yj = std::max(y[j], 0.0);
    if (q_prev <= 1e-14) break;
    const double qj = std::max(q_prev - yj, 0.0);
    L(j, j) = std::sqrt(yj * qj / q_prev);
    if (yj > 0.0 && qj > 1e-14) {
      const double c = std::sqrt(yj / (qj * q_prev));
      for (Index i = j + 1; i < n; ++i) {
        L(i, j) = -std::max(y[i], 0.0) * c;
      }
    }
    q_prev = qj;
  }
  return L;
}

Matrix diffusion_root_impl(const Vector& z, const WfConfig& cfg) {
  const double scale = 1.0 - cfg.n * cfg.eps;
  const Vector y = (z.array() - cfg.eps).matrix() / scale;
  return scale * wf_unit_root(y);
}

// Clamp to [eps, 1-(n-1)eps] and spread the defect over the coordinates
// that still have slack, proportionally to that slack. One proportional
// pass is exact when the box is feasible; the loop only mops up rounding.
Vector project_to_floor(Vector z, int n, double eps) {
  const double lo = eps;
  const double hi = 1.0 - (n - 1) * eps;
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < n; ++i) z[i] = std::min(std::max(z[i], lo), hi);
    const double defect = 1.0 - z.sum();
    if (std::abs(defect) < 1e-15) return z;
    double slack_total = 0.0;
    Vector slack(n);
    for (int i = 0; i < n; ++i) {
      slack[i] = (defect > 0.0) ? hi - z[i] : z[i] - lo;
      slack_total += slack[i];
    }
    if (slack_total < std::abs(defect) - 1e-9) {
      throw ProjectionFailure("no feasible projection: defect " +
                              std::to_string(defect) + " exceeds slack " +
                              std::to_string(slack_total));
    }
    if (slack_total <= 0.0) {
      throw ProjectionFailure("projection ran out of free coordinates");
    }
    z += (defect / slack_total) * slack;
  }
  return z;
}

}  // namespace

WfConfig make_wf_config(int n, double eps, const Params& p, double dt,
                        bool relabel) {
  if (n < 2) throw ConfigError("wf diffusion needs n >= 2");
  if (!(eps > 0.0) || !(eps < 1.0 / n)) {
    throw ConfigError("wf diffusion needs 0 < eps < 1/n, got eps = " +
                      std::to_string(eps) + " at n = " + std::to_string(n));
  }
  if (!(dt > 0.0)) throw ConfigError("wf diffusion needs dt > 0");
  if (!(p.theta > 0.0)) {
    throw ConfigError("the finite-n construction needs theta > 0 (the "
                      "boundary drift signs rely on it)");
  }
  validate_params(p.theta, p.alpha);
  return WfConfig{n, eps, p, dt, relabel};
}

double mutation_rate(int i, int j, const SimplexPoint& z, const WfConfig& cfg) {
  if (i == j || i < 1 || j < 1 || i > cfg.n || j > cfg.n) {
    throw ConfigError("mutation_rate needs distinct 1-based types in [1,n]");
  }
  const double zi = z.z[i - 1];
  return cfg.params.theta / (cfg.n - 1) +
         2.0 * cfg.params.alpha * j /
             (zi * static_cast<double>(cfg.n) * (cfg.n + 1)) *
             boundary_bracket(zi, cfg.eps);
}

Matrix build_rate_matrix(const SimplexPoint& z, const WfConfig& cfg) {
  const int n = cfg.n;
  Matrix q(n, n);
  for (int i = 1; i <= n; ++i) {
    double row = 0.0;
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double r = mutation_rate(i, j, z, cfg);
      q(i - 1, j - 1) = r;
      row += r;
    }
    q(i - 1, i - 1) = -row;
  }
  return q;
}

Vector drift_from_rates(const SimplexPoint& z, const WfConfig& cfg) {
  const Matrix q = build_rate_matrix(z, cfg);
  const int n = cfg.n;
  Vector b = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      b[i] += q(j, i) * z.z[j] - q(i, j) * z.z[i];
    }
  }
  return b;
}

Vector drift_closed_form(const Vector& z, const WfConfig& cfg) {
  return drift_closed_form_impl(z, cfg);
}

Vector drift_closed_form(const SimplexPoint& z, const WfConfig& cfg) {
  return drift_closed_form_impl(z.z, cfg);
}

Matrix covariance(const SimplexPoint& z, const WfConfig& cfg) {
  const int n = cfg.n;
  const double scale = 1.0 - n * cfg.eps;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = z.z[i] - cfg.eps;
    for (int j = 0; j < n; ++j) {
      const double xj = z.z[j] - cfg.eps;
      a(i, j) = xi * ((i == j ? scale : 0.0) - xj);
    }
  }
  return a;
}

Matrix diffusion_root(const Vector& z, const WfConfig& cfg) {
  return diffusion_root_impl(z, cfg);
}

Matrix diffusion_root(const SimplexPoint& z, const WfConfig& cfg) {
  return diffusion_root_impl(z.z, cfg);
}

SimplexPoint wf_step(const SimplexPoint& z, const WfConfig& cfg,
                     PhiloxRng& rng) {
  Vector x = z.z;
  if (cfg.relabel) {
    std::sort(x.data(), x.data() + x.size(), std::greater<double>());
  }
  const Vector b = drift_closed_form_impl(x, cfg);
  const Matrix root = diffusion_root_impl(x, cfg);
  Vector noise(cfg.n);
  for (int i = 0; i < cfg.n; ++i) noise[i] = draw_normal(rng);
  const Vector diffusion = root.triangularView<Eigen::Lower>() * noise;
  x += 0.5 * cfg.dt * b + std::sqrt(cfg.dt) * diffusion;
  return make_simplex_point(project_to_floor(std::move(x), cfg.n, cfg.eps),
                            cfg.eps);
}

double limit_drift_gap(const SimplexPoint& z, const WfConfig& cfg, int m) {
  if (m < 3) {
    throw MOutOfRange("limit_drift_gap needs m >= 3, got " +
                      std::to_string(m));
  }
  const Vector b = drift_closed_form_impl(z.z, cfg);
  double finite_n = 0.0;
  double limit = 0.0;
  for (int i = 0; i < cfg.n; ++i) {
    const double dphi = m * std::pow(z.z[i], m - 1);
    finite_n += b[i] * dphi;
    limit += -(cfg.params.theta * z.z[i] + cfg.params.alpha) * dphi;
  }
  return std::abs(finite_n - limit);
}

PathRecord<OrderedPoint> wf_run(SimplexPoint z0, const WfConfig& cfg,
                                double horizon, double record_dt,
                                PhiloxRng& rng) {
  if (!(horizon >= 0.0) || !(record_dt > 0.0)) {
    throw ConfigError("wf_run needs horizon >= 0 and record_dt > 0");
  }
  const std::int64_t steps =
      static_cast<std::int64_t>(std::floor(horizon / cfg.dt));
  const std::int64_t stride = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(record_dt / cfg.dt)));

  PathRecord<OrderedPoint> path;
  path.times.push_back(0.0);
  path.values.push_back(order_map(z0));
  for (std::int64_t s = 1; s <= steps; ++s) {
    z0 = wf_step(z0, cfg, rng);
    if (s % stride == 0 || s == steps) {
      path.times.push_back(s * cfg.dt);
      path.values.push_back(order_map(z0));
    }
  }
  return path;
}

PathRecord<OrderedPoint> wf_run(const WfConfig& cfg, double horizon,
                                double record_dt, PhiloxRng& rng,
                                double init_trunc) {
  OrderedPoint start = sample_pd(cfg.params, init_trunc, rng);
  return wf_run(lift_to_simplex(start, cfg.n, cfg.eps), cfg, horizon,
                record_dt, rng);
}

}  // namespace pdlab
