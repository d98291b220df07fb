#include <cmath>

#include "doctest.h"
#include "geoch/diagnostics.hpp"
#include "geoch/errors.hpp"
#include "oracles.hpp"

using namespace geoch;

namespace {

EulerianTrajectory cosine_run(std::size_t n, EulerianEquation eq, double t_final) {
  const Grid g(n);
  return integrate(Field::sample(g, [](double x) { return std::cos(x); }), EulerianModel{eq},
                   StepOptions{1e-2, t_final, Scheme::rk4, 5});
}

}  // namespace

TEST_CASE("drift helpers") {
  CHECK(absolute_drift({2.0, 2.5, 1.0}) == 1.0);
  CHECK(relative_drift({2.0, 2.5, 1.0}) == 0.5);
  CHECK(relative_drift({0.0, 0.1}) == 0.1);
  CHECK(relative_drift({}) == 0.0);
}

TEST_CASE("report series match the trajectory") {
  const auto traj = cosine_run(64, EulerianEquation::camassa_holm, 0.2);
  const auto rep = make_report("r", MetricKind::H1RightInvariant, 1e-2, traj);
  CHECK(rep.n == 64);
  CHECK(rep.times.size() == traj.times.size());
  CHECK(rep.energy.size() == traj.times.size());
  CHECK(rep.mean_momentum.size() == traj.times.size());
  CHECK(rep.l2_norm.size() == traj.times.size());
  CHECK(rep.max_norm.size() == traj.times.size());
  CHECK(rep.energy.front() == doctest::Approx(energy(traj.states.front())));
  CHECK(rep.l2_norm.front() == doctest::Approx(std::sqrt(oracle::kPi)).epsilon(1e-12));
  CHECK(rep.max_norm.front() == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_report("bad", MetricKind::L2Flat, 1e-2, {0.0, 1.0}, traj.states, {}),
                  ValidationError);
}

TEST_CASE("comparing a trajectory with itself gives zero error") {
  const auto a = cosine_run(64, EulerianEquation::camassa_holm, 0.2);
  const auto err = compare_trajectories(a, a);
  CHECK(err.times == a.times);
  for (double e : err.max_error) CHECK(e == 0.0);
  for (double e : err.l2_error) CHECK(e == 0.0);
}

TEST_CASE("comparison rejects mismatched sampling") {
  const auto a = cosine_run(64, EulerianEquation::camassa_holm, 0.2);
  const auto shorter = cosine_run(64, EulerianEquation::camassa_holm, 0.1);
  CHECK_THROWS_AS(compare_trajectories(a, shorter), ValidationError);
  auto shifted = a;
  shifted.times[1] += 1e-6;
  CHECK_THROWS_AS(compare_trajectories(a, shifted), ValidationError);
  CHECK_THROWS_AS(compare_trajectories(a, cosine_run(32, EulerianEquation::camassa_holm, 0.2)),
                  GridMismatch);
}

TEST_CASE("different equations from the same data drift apart") {
  const auto ch = cosine_run(64, EulerianEquation::camassa_holm, 0.2);
  const auto b3 = cosine_run(64, EulerianEquation::burgers3, 0.2);
  const auto err = compare_trajectories(ch, b3);
  CHECK(err.max_error.front() == 0.0);
  for (std::size_t i = 1; i < err.max_error.size(); ++i) CHECK(err.max_error[i] > err.max_error[i - 1]);
}

TEST_CASE("RK4 temporal order") {
  ConvergenceProblem p;  // u0 = cos x, n = 64, t = 0.5
  const auto r = temporal_convergence(p, {0.01, 0.02, 0.005, 0.0025});
  CHECK(r.reference == 0.0025);
  CHECK(r.resolutions == std::vector<double>{0.02, 0.01, 0.005});
  CHECK(r.monotone);
  CHECK(r.observed_order >= 3.8);
  CHECK(r.observed_order <= 4.2);
}

TEST_CASE("forward Euler temporal order") {
  ConvergenceProblem p;
  p.scheme = Scheme::euler;
  // A reference far finer than the members keeps its own O(dt) error out of the slope.
  const auto r = temporal_convergence(p, {4e-3, 2e-3, 1e-3, 1e-3 / 64.0});
  CHECK(r.monotone);
  CHECK(r.observed_order == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("spatial refinement reaches the round-off plateau") {
  ConvergenceProblem p;
  p.t_final = 0.3;
  p.dt = 2e-3;
  const auto r = spatial_convergence(p, {16, 32, 64, 128, 256, 512});
  REQUIRE(r.errors.size() == 5);
  CHECK(r.errors[0] > 1e-6);
  CHECK(r.errors[0] > 1e3 * r.errors[2]);
  // Plateau: n = 128 and 256 both sit at round-off.
  CHECK(r.errors[3] < 1e-11);
  CHECK(r.errors[4] < 1e-11);
}

TEST_CASE("convergence studies need three resolutions and completed runs") {
  ConvergenceProblem p;
  CHECK_THROWS_AS(temporal_convergence(p, {0.01, 0.005}), ValidationError);
  CHECK_THROWS_AS(spatial_convergence(p, {32, 64}), ValidationError);
  p.model.equation = EulerianEquation::burgers3;
  p.t_final = 1.0;
  CHECK_THROWS(temporal_convergence(p, {0.01, 0.005, 0.0025}));
}

TEST_CASE("random band-limited fields") {
  std::mt19937_64 a(9), b(9);
  const Grid g(128);
  const Field fa = random_band_limited(g, a, 16);
  const Field fb = random_band_limited(g, b, 16);
  CHECK(max_difference(fa, fb) == 0.0);
  CHECK(fa.max_abs() == doctest::Approx(1.0));
  CHECK(spectral_tail_fraction(fa) < 1e-28);
}

TEST_CASE("identity suite") {
  const Grid g(256);
  const auto empty = identity_suite(g, 0, 1);
  CHECK(empty.max_adjoint_residual == 0.0);
  CHECK(empty.max_jacobi == 0.0);

  // Zero fields satisfy every identity exactly.
  const Field z = Field::zeros(g);
  CHECK(inner_product(b_operator(z, z), z, MetricKind::H1RightInvariant) == 0.0);
  CHECK(max_difference(ch_rhs(z), ch_rhs_integral_form(z)) == 0.0);

  const auto r = identity_suite(g, 20, 7);
  CHECK(r.trials == 20);
  CHECK(r.max_adjoint_residual <= 1e-10);
  CHECK(r.max_form_difference <= 1e-11);
  CHECK(r.max_helmholtz_roundtrip <= 1e-12);
  CHECK(r.max_antisymmetry <= 1e-12);
  CHECK(r.max_jacobi <= 1e-10);

  // Determinism.
  const auto again = identity_suite(g, 20, 7);
  CHECK(again.max_adjoint_residual == r.max_adjoint_residual);
  CHECK(again.max_form_difference == r.max_form_difference);
  CHECK(again.max_jacobi == r.max_jacobi);

  // Ablation: with k <= n/8 the products are resolved, so dealiasing changes only round-off.
  const auto d = identity_suite(g, 20, 7, ProductRule::dealias_3_2);
  CHECK(d.max_adjoint_residual <= 1e-10);
  CHECK(std::abs(d.max_adjoint_residual - r.max_adjoint_residual) < 1e-12);
  CHECK(d.max_form_difference <= 1e-11);
}
