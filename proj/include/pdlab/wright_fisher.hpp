#pragma once

#include "pdlab/params.hpp"
#include "pdlab/path_record.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/simplex.hpp"

namespace pdlab {

// Configuration of the n-type diffusion on the floored simplex.
// relabel controls whether coordinates are sorted into decreasing order
// before rates are built at each step; the rank-dependent factor j in the
// mutation rates is meaningful for ranked frequencies, so this defaults
// to on (disable it only for sensitivity studies).
struct WfConfig {
  int n = 2;
  double eps = 0.0;
  Params params;
  double dt = 1e-4;
  bool relabel = true;
};

WfConfig make_wf_config(int n, double eps, const Params& p, double dt,
                        bool relabel = true);

// State-dependent mutation rate from type i to type j (1-based, i != j):
//   q_ij(z) = theta/(n-1)
//           + 2 alpha j / (z_i n (n+1)) * [1 - exp(-2 (z_i - eps)/eps)].
// At z_i = eps the bracket vanishes and the rate equals the symmetric
// one-parameter rate theta/(n-1).
double mutation_rate(int i, int j, const SimplexPoint& z, const WfConfig& cfg);

// Conservative generator of type changes: off-diagonals from
// mutation_rate, diagonals the negative row sums.
Matrix build_rate_matrix(const SimplexPoint& z, const WfConfig& cfg);

// Drift through the mutation-flow decomposition
//   b_i = sum_{j != i} q_ji z_j - sum_{j != i} q_ij z_i,
// and its closed form; the two agree to 1e-10 on the whole state space.
Vector drift_from_rates(const SimplexPoint& z, const WfConfig& cfg);
Vector drift_closed_form(const SimplexPoint& z, const WfConfig& cfg);
Vector drift_closed_form(const Vector& z, const WfConfig& cfg);

// Diffusion matrix a_ij = (z_i - eps)(delta_ij (1 - n eps) - (z_j - eps)),
// the Wright-Fisher covariance of y = (z - eps)/(1 - n eps) scaled by
// (1 - n eps)^2. It vanishes on the faces z_i = eps.
Matrix covariance(const SimplexPoint& z, const WfConfig& cfg);

// Lower-triangular root: diffusion_root(z) * transpose = covariance(z).
// Closed form in y-coordinates, O(n^2), no eigendecomposition.
Matrix diffusion_root(const SimplexPoint& z, const WfConfig& cfg);
Matrix diffusion_root(const Vector& z, const WfConfig& cfg);

// Euler-Maruyama step z' = z + b/2 dt + sigma sqrt(dt) xi followed by a
// deterministic projection back onto the floored simplex (clamp to
// [eps, 1-(n-1)eps], then spread the excess over the coordinates with
// slack, proportionally to their slack).
SimplexPoint wf_step(const SimplexPoint& z, const WfConfig& cfg,
                     PhiloxRng& rng);

// |sum_i b_i dphi_m/dz_i + sum_i (theta z_i + alpha) dphi_m/dz_i|:
// the distance between the finite-n drift action and the limiting drift
// action on the power sum phi_m, m >= 3. Decays as n grows.
double limit_drift_gap(const SimplexPoint& z, const WfConfig& cfg, int m);

// Iterate wf_step from a PD(theta,alpha)-distributed start (ordered stick
// weights truncated at init_trunc, renormalized onto the first n ranks and
// lifted into the floored simplex), recording ranked frequencies every
// record_dt time units.
PathRecord<OrderedPoint> wf_run(const WfConfig& cfg, double horizon,
                                double record_dt, PhiloxRng& rng,
                                double init_trunc = 1e-6);
PathRecord<OrderedPoint> wf_run(SimplexPoint z0, const WfConfig& cfg,
                                double horizon, double record_dt,
                                PhiloxRng& rng);

}  // namespace pdlab
