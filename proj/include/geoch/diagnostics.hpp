#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "geoch/eulerian.hpp"
#include "geoch/geometry.hpp"
#include "geoch/initial_conditions.hpp"
#include "geoch/lagrangian.hpp"

namespace geoch {

/// Conserved-quantity series and termination status of one run.
///
/// `energy` is 1/2 <u,u> in the run's metric (the H1 energy for Camassa-Holm,
/// 1/2 int u^2 for the L2 kinds); `mean_momentum` is int (u - u_xx) dx.
struct RunReport {
  std::string run_id;
  MetricKind metric = MetricKind::H1RightInvariant;
  std::size_t n = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> mean_momentum;
  std::vector<double> l2_norm;
  std::vector<double> max_norm;
  std::map<std::string, double> residuals;
  RunStatus status;
};

RunReport make_report(std::string run_id, MetricKind metric, double dt,
                      const std::vector<double>& times, const std::vector<Field>& states,
                      const RunStatus& status);
RunReport make_report(std::string run_id, MetricKind metric, double dt,
                      const EulerianTrajectory& traj);

/// max_t |s(t) - s(0)| / |s(0)| (absolute drift when s(0) == 0).
double relative_drift(const std::vector<double>& series);
/// max_t |s(t) - s(0)|.
double absolute_drift(const std::vector<double>& series);

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> max_error;
  std::vector<double> l2_error;
};

/// Per-sample max-norm and L2 differences. Throws ValidationError unless
/// both trajectories share grid and sample times (to 1e-12).
ErrorSeries compare_trajectories(const EulerianTrajectory& a, const EulerianTrajectory& b);

/// Eulerian view u = V o eta^{-1} of a Lagrangian run.
EulerianTrajectory reconstruct_eulerian(const LagrangianTrajectory& traj);

struct ConvergenceProblem {
  InitialCondition ic;
  EulerianModel model;
  std::size_t n = 64;
  double length = kTwoPi;
  double t_final = 0.5;
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;  ///< used by spatial studies
};

struct ConvergenceResult {
  std::vector<double> resolutions;  ///< dt values or grid sizes, reference excluded
  std::vector<double> errors;       ///< max-norm error against the reference run
  double reference = 0.0;           ///< finest dt or largest n
  /// Least-squares slope of log(error) against log(resolution); positive
  /// for errors shrinking as dt decreases or as 1/n decreases.
  double observed_order = 0.0;
  /// False if some error failed to decrease under refinement (flagged, not fatal).
  bool monotone = true;
};

/// Runs the problem at each dt (at least three); the smallest dt is the truth.
/// Member runs execute concurrently. Throws if a member run does not complete.
ConvergenceResult temporal_convergence(const ConvergenceProblem& problem, std::vector<double> dts);

/// Runs the problem at each grid size (at least three); the largest is the truth,
/// compared on the coarse grid's points.
ConvergenceResult spatial_convergence(const ConvergenceProblem& problem, std::vector<std::size_t> ns);

/// Smooth random field: Fourier modes 0 <= k <= k_max with coefficients
/// uniform in [-1, 1] scaled by 1 / max(k, 1)^2, normalized to max|f| = 1.
Field random_band_limited(const Grid& grid, std::mt19937_64& rng, std::size_t k_max);

struct IdentityReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  ProductRule rule = ProductRule::pointwise;
  /// |<B(w,u),v>_1 - <w,[u,v]>_1| / (|u|_1 |v|_1 |w|_1 + 1)
  double max_adjoint_residual = 0.0;
  /// max |ch_rhs(u) - ch_rhs_integral_form(u)|
  double max_form_difference = 0.0;
  /// max |helmholtz_inverse(helmholtz(u)) - u|
  double max_helmholtz_roundtrip = 0.0;
  /// max |[u,v] + [v,u]|
  double max_antisymmetry = 0.0;
  /// max |[[u,v],w] + [[v,w],u] + [[w,u],v]|
  double max_jacobi = 0.0;
};

/// Seeded identity checks on random band-limited fields with k <= n/8.
IdentityReport identity_suite(const Grid& grid, std::size_t trials, std::uint64_t seed,
                              ProductRule rule = ProductRule::pointwise);

}  // namespace geoch
