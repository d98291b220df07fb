#include <cmath>
#include <random>

#include "doctest.h"
#include "geoch/diagnostics.hpp"
#include "geoch/errors.hpp"
#include "geoch/eulerian.hpp"
#include "geoch/lagrangian.hpp"
#include "oracles.hpp"

using namespace geoch;

namespace {

double cosx(double x) { return std::cos(x); }
double relabel(double x) { return x + 0.3 * std::sin(x); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
  return e;
}

}  // namespace

TEST_CASE("diffeo state validation") {
  const Grid g(16);
  CHECK_THROWS_AS(DiffeoState(g, std::vector<double>(15, 0.0), std::vector<double>(16, 0.0)),
                  ValidationError);
  std::vector<double> bad(16, 0.0);
  bad[2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DiffeoState(g, std::vector<double>(16, 0.0), bad), NonFiniteValue);

  const auto folded = DiffeoState::from_functions(g, [](double x) { return x + 1.5 * std::sin(x); }, cosx);
  CHECK_THROWS_AS(folded.check_diffeo(), DiffeoLoss);
  CHECK_THROWS_AS(eulerian_velocity(folded), DiffeoLoss);
  const auto shifted = DiffeoState::from_functions(g, [](double x) { return x + 0.4; }, cosx);
  CHECK_NOTHROW(shifted.check_diffeo());
  for (double j : shifted.jacobian()) CHECK(j == doctest::Approx(1.0));
}

TEST_CASE("eulerian velocity: identity and constants") {
  const Grid g(64);
  const Field v = Field::sample(g, [](double x) { return std::sin(x) + 0.2 * std::cos(4.0 * x); });
  CHECK(max_difference(eulerian_velocity(DiffeoState::at_identity(v)), v) < 1e-15);
  const auto s = DiffeoState::from_functions(g, relabel, [](double) { return -0.7; });
  CHECK(max_difference(eulerian_velocity(s), Field::constant(g, -0.7)) < 1e-14);
}

TEST_CASE("eulerian velocity round trip is fourth order") {
  auto u = [](double x) { return std::cos(x) + 0.3 * std::sin(2.0 * x); };
  auto err_at = [&](std::size_t n) {
    const Grid g(n);
    return max_difference(eulerian_velocity(DiffeoState::from_functions(g, relabel, u)), Field::sample(g, u));
  };
  const double e64 = err_at(64), e128 = err_at(128), e256 = err_at(256);
  CHECK(e64 < 1e-5);
  CHECK(e64 / e128 > 12.0);
  CHECK(e128 / e256 > 12.0);
}

TEST_CASE("compose and inverse map") {
  const Grid g(128);
  const auto s = DiffeoState::from_functions(g, relabel, cosx);
  // f o eta against the closed form.
  const Field f = Field::sample(g, [](double x) { return std::sin(2.0 * x); });
  std::vector<double> exact;
  for (double x : g.points()) exact.push_back(std::sin(2.0 * relabel(x)));
  CHECK(max_diff(compose(f, s), exact) < 1e-6);
  // eta^{-1}(eta(X)) = X, including points outside one period.
  const auto eta = s.positions();
  CHECK(max_diff(inverse_map(s, eta), g.points()) < 1e-12);
  std::vector<double> far{eta[3] + 2.0 * kTwoPi, eta[5] - kTwoPi};
  const auto back = inverse_map(s, far);
  CHECK(back[0] == doctest::Approx(g.point(3) + 2.0 * kTwoPi).epsilon(1e-12));
  CHECK(back[1] == doctest::Approx(g.point(5) - kTwoPi).epsilon(1e-12));
  CHECK_THROWS_AS(compose(Field::zeros(Grid(64)), s), GridMismatch);
}

TEST_CASE("spray examples") {
  const Grid g(64);
  const auto c = DiffeoState::at_identity(Field::sample(g, cosx));
  const auto sn = DiffeoState::at_identity(Field::sample(g, [](double x) { return std::sin(x); }));
  const Field tenth = Field::sample(g, [](double x) { return std::sin(2.0 * x) / 10.0; });
  CHECK(max_difference(Field(g, spray(c, MetricKind::H1RightInvariant)), tenth) < 1e-13);
  const Field minus = Field::sample(g, [](double x) { return -std::sin(2.0 * x); });
  CHECK(max_difference(Field(g, spray(sn, MetricKind::L2RightInvariant)), minus) < 1e-13);
  const auto bent = DiffeoState::from_functions(g, relabel, cosx);
  for (double a : spray(bent, MetricKind::L2Flat)) CHECK(a == 0.0);
}

TEST_CASE("H1 spray pulled back equals the CH acceleration") {
  // spray o eta^{-1} = u_t + u u_x, i.e. spray o eta^{-1} - u u_x = ch_rhs(u).
  // Composition and inversion are O(h^4), so the grid is fine enough for 1e-8.
  std::mt19937_64 rng(43);
  const Grid g(512);
  for (int t = 0; t < 5; ++t) {
    const auto p = oracle::random_trig(rng, 4);
    const Field u(g, p.sample(g.n()));
    const auto s = DiffeoState::from_functions(g, [](double x) { return x + 0.05 * std::sin(x); }, p);
    const Field pulled = push_forward(spray(s, MetricKind::H1RightInvariant), s);
    const Field lhs = pulled - multiply(u, derivative(u, 1));
    CHECK(max_difference(lhs, ch_rhs(u)) <= 1e-8);
  }
}

TEST_CASE("flat L2 geodesics are straight lines") {
  const Grid g(64);
  const auto s0 = DiffeoState::from_functions(g, relabel, [](double x) { return 0.2 * std::cos(x); });
  const auto traj = integrate_geodesic(s0, MetricKind::L2Flat, StepOptions{0.01, 1.0, Scheme::rk4, 10});
  REQUIRE(traj.status.completed());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    CHECK(max_diff(s.velocity(), s0.velocity()) <= 1e-14);
    std::vector<double> line = s0.positions();
    for (std::size_t j = 0; j < line.size(); ++j) line[j] += traj.times[i] * s0.velocity()[j];
    CHECK(max_diff(s.positions(), line) < 1e-13);
  }
}

TEST_CASE("H1 geodesic reproduces the Eulerian CH run") {
  const Grid g(256);
  const Field u0 = Field::sample(g, cosx);
  const StepOptions opts{1e-3, 0.5, Scheme::rk4, 100};
  const auto lag = integrate_geodesic(DiffeoState::at_identity(u0), MetricKind::H1RightInvariant, opts);
  const auto eul = integrate(u0, EulerianModel{}, opts);
  REQUIRE(lag.status.completed());
  REQUIRE(eul.status.completed());
  const auto err = compare_trajectories(reconstruct_eulerian(lag), eul);
  for (double e : err.max_error) CHECK(e <= 1e-6);

  // Metric speed along the geodesic.
  const auto rec = reconstruct_eulerian(lag);
  std::vector<double> speed;
  for (const auto& u : rec.states) speed.push_back(inner_product(u, u, MetricKind::H1RightInvariant));
  CHECK(relative_drift(speed) <= 1e-6);
}

TEST_CASE("right-invariant L2 geodesic follows u_t + 3uu_x = 0") {
  const Grid g(256);
  const double t_final = 0.15;
  const auto lag = integrate_geodesic(DiffeoState::at_identity(Field::sample(g, cosx)),
                                      MetricKind::L2RightInvariant, StepOptions{1e-3, t_final, Scheme::rk4, 50});
  REQUIRE(lag.status.completed());
  const auto rec = reconstruct_eulerian(lag);
  const Field exact = Field::sample(g, [&](double x) {
    return oracle::characteristics(cosx, [](double y) { return -std::sin(y); }, 3.0, t_final, x);
  });
  CHECK(max_difference(rec.states.back(), exact) <= 1e-4);
  std::vector<double> speed;
  for (const auto& u : rec.states) speed.push_back(inner_product(u, u, MetricKind::L2RightInvariant));
  CHECK(relative_drift(speed) <= 1e-6);
}

TEST_CASE("right-invariant L2 step limit") {
  const Grid g(256);
  CHECK_THROWS_AS(integrate_geodesic(DiffeoState::at_identity(Field::sample(g, cosx)),
                                     MetricKind::L2RightInvariant, StepOptions{0.01, 0.1}),
                  ValidationError);
}

TEST_CASE("particle crossing ends the run with diffeo loss") {
  // Flat geodesic eta = X + 2t sin X folds when 1 + 2t cos X hits 0, at t = 1/2.
  const Grid g(64);
  const auto traj = integrate_geodesic(DiffeoState::at_identity(Field::sample(g, [](double x) {
                                         return 2.0 * std::sin(x);
                                       })),
                                       MetricKind::L2Flat, StepOptions{0.01, 1.0});
  CHECK(traj.status.kind == Termination::diffeo_loss);
  CHECK(traj.status.last_valid_time < 0.5);
  CHECK(traj.status.last_valid_time >= 0.48);
  for (const auto& s : traj.states) CHECK_NOTHROW(s.check_diffeo());
  CHECK(traj.times.back() == doctest::Approx(traj.status.last_valid_time));
}

TEST_CASE("relabeling leaves right-invariant evolutions unchanged") {
  const Grid g(256);
  for (auto kind : {MetricKind::H1RightInvariant, MetricKind::L2RightInvariant}) {
    const StepOptions opts{5e-3, 0.2, Scheme::rk4, 10};
    const auto plain = reconstruct_eulerian(
        integrate_geodesic(DiffeoState::at_identity(Field::sample(g, cosx)), kind, opts));
    const auto moved = reconstruct_eulerian(
        integrate_geodesic(DiffeoState::from_functions(g, relabel, cosx), kind, opts));
    REQUIRE(plain.status.completed());
    REQUIRE(moved.status.completed());
    for (double e : compare_trajectories(plain, moved).max_error) CHECK(e <= 1e-3);
  }
}

TEST_CASE("flat L2 metric is not relabeling invariant") {
  // int V^2 dX for (phi, v o phi) differs from int v^2 dx.
  const Grid g(256);
  const auto a = DiffeoState::at_identity(Field::sample(g, cosx));
  const auto b = DiffeoState::from_functions(g, relabel, cosx);
  const double ea = inner_product(Field(g, a.velocity()), Field(g, a.velocity()), MetricKind::L2Flat);
  const double eb = inner_product(Field(g, b.velocity()), Field(g, b.velocity()), MetricKind::L2Flat);
  CHECK(std::abs(ea - eb) > 0.1);
  // ... while along a flat geodesic int V^2 dX is exactly constant.
  const auto traj = integrate_geodesic(b, MetricKind::L2Flat, StepOptions{0.01, 0.5});
  for (const auto& s : traj.states) {
    CHECK(inner_product(Field(g, s.velocity()), Field(g, s.velocity()), MetricKind::L2Flat) == eb);
  }
}
