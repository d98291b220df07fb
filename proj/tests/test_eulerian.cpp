#include <cmath>
#include <random>

#include "doctest.h"
#include "geoch/diagnostics.hpp"
#include "geoch/errors.hpp"
#include "geoch/eulerian.hpp"
#include "oracles.hpp"

using namespace geoch;

namespace {

Field cos_field(const Grid& g) { return Field::sample(g, [](double x) { return std::cos(x); }); }

}  // namespace

TEST_CASE("CH right-hand side in both forms") {
  const Grid g(64);
  const Field c = cos_field(g);
  // 3uu_x - 2u_x u_xx - u u_xxx = -3 sin 2x, and mode 2 is divided by 5.
  const Field expected = Field::sample(g, [](double x) { return 0.6 * std::sin(2.0 * x); });
  CHECK(max_difference(ch_rhs(c), expected) < 1e-13);
  // -u u_x = sin(2x)/2 and -(1-d^2)^{-1} d(3/4 + cos(2x)/4) = sin(2x)/10.
  CHECK(max_difference(ch_rhs_integral_form(c), expected) < 1e-13);
  CHECK(ch_rhs(Field::constant(g, 0.8)).max_abs() < 1e-14);
  CHECK(ch_rhs_integral_form(Field::constant(g, 0.8)).max_abs() < 1e-14);
}

TEST_CASE("CH forms agree on random band-limited fields") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {64u, 256u}) {
    const Grid g(n);
    for (int t = 0; t < 10; ++t) {
      const Field u = random_band_limited(g, rng, n / 8);
      CHECK(max_difference(ch_rhs(u), ch_rhs_integral_form(u)) < 1e-11);
      CHECK(max_difference(ch_rhs(u, ProductRule::dealias_3_2),
                           ch_rhs_integral_form(u, ProductRule::dealias_3_2)) < 1e-11);
    }
  }
}

TEST_CASE("Burgers right-hand sides") {
  const Grid g(64);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const Field expected = Field::sample(g, [](double x) { return -1.5 * std::sin(2.0 * x); });
  CHECK(max_difference(burgers_rhs(s, 3.0), expected) < 1e-13);
  CHECK(max_difference(burgers_rhs(s, 1.0), expected * (1.0 / 3.0)) < 1e-13);
  CHECK(burgers_rhs(Field::constant(g, 2.0), 3.0).max_abs() < 1e-14);
  CHECK_THROWS_AS(burgers_rhs(s, 2.0), ValidationError);
}

TEST_CASE("constants are steady states of every equation") {
  const Grid g(32);
  const Field c = Field::constant(g, 0.4);
  for (auto eq : {EulerianEquation::camassa_holm, EulerianEquation::camassa_holm_explicit,
                  EulerianEquation::burgers3, EulerianEquation::burgers1}) {
    const auto traj = integrate(c, EulerianModel{eq}, StepOptions{0.01, 0.5});
    CHECK(traj.status.completed());
    CHECK(traj.times.size() == 51);
    for (const auto& u : traj.states) CHECK(max_difference(u, c) < 1e-14);
  }
}

TEST_CASE("trajectory sampling") {
  const Grid g(32);
  const auto traj = integrate(cos_field(g), EulerianModel{}, StepOptions{0.03, 0.1, Scheme::rk4, 2});
  // Steps end at 0.03, 0.06, 0.09, 0.1; stride 2 keeps 0.06 and the final 0.1.
  REQUIRE(traj.times.size() == 3);
  CHECK(traj.times[1] == doctest::Approx(0.06));
  CHECK(traj.times[2] == 0.1);
}

TEST_CASE("step options and step limit are validated") {
  const Grid g(256);
  const Field u = cos_field(g);
  CHECK_THROWS_AS(integrate(u, EulerianModel{}, StepOptions{0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(integrate(u, EulerianModel{}, StepOptions{2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(integrate(u, EulerianModel{}, StepOptions{0.05, 1.0}), ValidationError);
  CHECK_THROWS_AS(integrate(u, EulerianModel{EulerianEquation::burgers3}, StepOptions{0.01, 1.0}),
                  ValidationError);
}

TEST_CASE("RK4 self-convergence: halving dt cuts the error by ~16") {
  const Grid g(64);
  const Field u0 = cos_field(g);
  auto final_at = [&](double dt) {
    return integrate(u0, EulerianModel{}, StepOptions{dt, 0.5, Scheme::rk4, 1000000}).states.back();
  };
  const Field ref = final_at(0.01 / 16.0);
  const double e1 = max_difference(final_at(0.01), ref);
  const double e2 = max_difference(final_at(0.005), ref);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("CH conserves energy and mean momentum") {
  const Grid g(256);
  const auto traj = integrate(cos_field(g), EulerianModel{}, StepOptions{1e-3, 1.0, Scheme::rk4, 50});
  REQUIRE(traj.status.completed());
  const auto rep = make_report("ch", MetricKind::H1RightInvariant, 1e-3, traj);
  CHECK(relative_drift(rep.energy) <= 1e-8);
  CHECK(absolute_drift(rep.mean_momentum) <= 1e-10);
  std::vector<double> mean;
  for (const auto& u : traj.states) mean.push_back(quadrature(u));
  CHECK(absolute_drift(mean) <= 1e-10);
}

TEST_CASE("Burgers-3 matches the characteristics solution before the shock") {
  const Grid g(512);
  auto u0 = [](double x) { return std::cos(x); };
  auto u0p = [](double x) { return -std::sin(x); };
  const double t_final = 0.15;  // the shock forms at t = 1/3
  const auto traj = integrate(Field::sample(g, u0), EulerianModel{EulerianEquation::burgers3},
                              StepOptions{1e-3, t_final, Scheme::rk4, 1000});
  REQUIRE(traj.status.completed());
  const Field exact = Field::sample(g, [&](double x) { return oracle::characteristics(u0, u0p, 3.0, t_final, x); });
  CHECK(max_difference(traj.states.back(), exact) <= 1e-6);
}

TEST_CASE("Burgers-3 steepening is reported as blow-up before the shock time") {
  const Grid g(256);
  const auto traj = integrate(cos_field(g), EulerianModel{EulerianEquation::burgers3},
                              StepOptions{1e-3, 1.0, Scheme::rk4, 10});
  CHECK(traj.status.kind == Termination::blowup);
  CHECK(traj.status.last_valid_time < 1.0 / 3.0);
  CHECK(traj.status.last_valid_time > 0.2);
  CHECK(traj.times.back() == doctest::Approx(traj.status.last_valid_time));
}

TEST_CASE("non-finite right-hand sides abort with the last valid time") {
  int calls = 0;
  const FlatRhs rhs = [&](double, const FlatState& y) {
    ++calls;
    FlatState dy(y.size(), 1.0);
    if (calls > 8) dy[0] = std::nan("");
    return dy;
  };
  const auto traj = integrate_fixed(FlatState{0.0, 0.0}, rhs, StepOptions{0.1, 1.0});
  CHECK(traj.status.kind == Termination::blowup);
  CHECK(traj.status.last_valid_time == doctest::Approx(0.2));
  CHECK(traj.times.back() == doctest::Approx(0.2));
}
