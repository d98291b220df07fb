#include "geoch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "geoch/errors.hpp"

namespace geoch {

RunReport make_report(std::string run_id, MetricKind metric, double dt,
                      const std::vector<double>& times, const std::vector<Field>& states,
                      const RunStatus& status) {
  if (times.size() != states.size()) throw ValidationError("times and states differ in length");
  RunReport r;
  r.run_id = std::move(run_id);
  r.metric = metric;
  r.n = states.empty() ? 0 : states.front().size();
  r.dt = dt;
  r.times = times;
  r.status = status;
  for (const Field& u : states) {
    r.energy.push_back(0.5 * inner_product(u, u, metric));
    r.mean_momentum.push_back(quadrature(momentum(u)));
    r.l2_norm.push_back(std::sqrt(inner_product(u, u, MetricKind::L2Flat)));
    r.max_norm.push_back(u.max_abs());
  }
  return r;
}

RunReport make_report(std::string run_id, MetricKind metric, double dt,
                      const EulerianTrajectory& traj) {
  return make_report(std::move(run_id), metric, dt, traj.times, traj.states, traj.status);
}

double absolute_drift(const std::vector<double>& series) {
  double d = 0.0;
  for (double v : series) d = std::max(d, std::abs(v - series.front()));
  return d;
}

double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double scale = std::abs(series.front());
  const double d = absolute_drift(series);
  return scale > 0.0 ? d / scale : d;
}

ErrorSeries compare_trajectories(const EulerianTrajectory& a, const EulerianTrajectory& b) {
  if (a.times.size() != b.times.size()) {
    throw ValidationError("trajectories have different numbers of samples");
  }
  ErrorSeries out;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) {
      std::ostringstream msg;
      msg << "sample " << i << " is at t=" << a.times[i] << " vs t=" << b.times[i];
      throw ValidationError(msg.str());
    }
    const Field diff = a.states[i] - b.states[i];
    out.times.push_back(a.times[i]);
    out.max_error.push_back(diff.max_abs());
    out.l2_error.push_back(std::sqrt(inner_product(diff, diff, MetricKind::L2Flat)));
  }
  return out;
}

EulerianTrajectory reconstruct_eulerian(const LagrangianTrajectory& traj) {
  EulerianTrajectory out;
  out.times = traj.times;
  out.status = traj.status;
  out.states.reserve(traj.states.size());
  for (const auto& s : traj.states) out.states.push_back(eulerian_velocity(s));
  return out;
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Field final_state(const ConvergenceProblem& p, std::size_t n, double dt) {
  const Grid grid(n, p.length);
  const Field u0 = make_initial_field(p.ic, grid);
  StepOptions opts{dt, p.t_final, p.scheme, std::numeric_limits<std::size_t>::max()};
  auto traj = integrate(u0, p.model, opts);
  if (!traj.status.completed()) {
    std::ostringstream msg;
    msg << "convergence member run (n=" << n << ", dt=" << dt << ") ended with "
        << to_string(traj.status.kind) << " at t=" << traj.status.last_valid_time;
    throw std::runtime_error(msg.str());
  }
  return traj.states.back();
}

void fill_order(ConvergenceResult& r, const std::vector<double>& log_resolution) {
  std::vector<double> log_err;
  for (double e : r.errors) log_err.push_back(std::log(std::max(e, 1e-300)));
  r.observed_order = least_squares_slope(log_resolution, log_err);
}

}  // namespace

ConvergenceResult temporal_convergence(const ConvergenceProblem& problem, std::vector<double> dts) {
  if (dts.size() < 3) throw ValidationError("a convergence study needs at least three resolutions");
  std::sort(dts.begin(), dts.end(), std::greater<>());

  std::vector<std::future<Field>> runs;
  for (double dt : dts) {
    runs.push_back(std::async(std::launch::async, [&problem, dt] {
      return final_state(problem, problem.n, dt);
    }));
  }
  std::vector<Field> finals;
  for (auto& f : runs) finals.push_back(f.get());

  ConvergenceResult r;
  r.reference = dts.back();
  std::vector<double> log_dt;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    r.resolutions.push_back(dts[i]);
    r.errors.push_back(max_difference(finals[i], finals.back()));
    log_dt.push_back(std::log(dts[i]));
  }
  for (std::size_t i = 0; i + 1 < r.errors.size(); ++i) {
    if (!(r.errors[i + 1] < r.errors[i])) r.monotone = false;
  }
  fill_order(r, log_dt);
  return r;
}

ConvergenceResult spatial_convergence(const ConvergenceProblem& problem, std::vector<std::size_t> ns) {
  if (ns.size() < 3) throw ValidationError("a convergence study needs at least three resolutions");
  std::sort(ns.begin(), ns.end());

  std::vector<std::future<Field>> runs;
  for (std::size_t n : ns) {
    runs.push_back(std::async(std::launch::async, [&problem, n] {
      return final_state(problem, n, problem.dt);
    }));
  }
  std::vector<Field> finals;
  for (auto& f : runs) finals.push_back(f.get());

  const Field& truth = finals.back();
  ConvergenceResult r;
  r.reference = static_cast<double>(ns.back());
  std::vector<double> log_h;
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    const std::size_t stride = ns.back() / ns[i];
    double err = 0.0;
    for (std::size_t j = 0; j < ns[i]; ++j) err = std::max(err, std::abs(finals[i][j] - truth[j * stride]));
    r.resolutions.push_back(static_cast<double>(ns[i]));
    r.errors.push_back(err);
    log_h.push_back(std::log(problem.length / static_cast<double>(ns[i])));
  }
  for (std::size_t i = 0; i + 1 < r.errors.size(); ++i) {
    if (!(r.errors[i + 1] < r.errors[i])) r.monotone = false;
  }
  fill_order(r, log_h);
  return r;
}

Field random_band_limited(const Grid& grid, std::mt19937_64& rng, std::size_t k_max) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(k_max + 1), b(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double decay = 1.0 / std::pow(static_cast<double>(std::max<std::size_t>(k, 1)), 2);
    a[k] = coef(rng) * decay;
    b[k] = k == 0 ? 0.0 : coef(rng) * decay;
  }
  std::vector<double> v(grid.n(), 0.0);
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.point(j);
    for (std::size_t k = 0; k <= k_max; ++k) {
      const double kx = grid.wavenumber(static_cast<long>(k)) * x;
      v[j] += a[k] * std::cos(kx) + b[k] * std::sin(kx);
    }
  }
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak > 0.0) {
    for (double& x : v) x /= peak;
  }
  return Field(grid, std::move(v));
}

IdentityReport identity_suite(const Grid& grid, std::size_t trials, std::uint64_t seed,
                              ProductRule rule) {
  IdentityReport r;
  r.trials = trials;
  r.seed = seed;
  r.rule = rule;
  std::mt19937_64 rng(seed);
  const std::size_t k_max = grid.n() / 8;
  for (std::size_t t = 0; t < trials; ++t) {
    const Field u = random_band_limited(grid, rng, k_max);
    const Field v = random_band_limited(grid, rng, k_max);
    const Field w = random_band_limited(grid, rng, k_max);

    const double lhs = inner_product(b_operator(w, u, rule), v, MetricKind::H1RightInvariant);
    const double rhs = inner_product(w, lie_bracket(u, v, rule), MetricKind::H1RightInvariant);
    const double scale = h1_norm(u) * h1_norm(v) * h1_norm(w) + 1.0;
    r.max_adjoint_residual = std::max(r.max_adjoint_residual, std::abs(lhs - rhs) / scale);

    r.max_form_difference =
        std::max(r.max_form_difference, max_difference(ch_rhs(u, rule), ch_rhs_integral_form(u, rule)));
    r.max_helmholtz_roundtrip =
        std::max(r.max_helmholtz_roundtrip, max_difference(helmholtz_inverse(helmholtz(u)), u));
    r.max_antisymmetry =
        std::max(r.max_antisymmetry, (lie_bracket(u, v, rule) + lie_bracket(v, u, rule)).max_abs());
    const Field jacobi = lie_bracket(lie_bracket(u, v, rule), w, rule) +
                         lie_bracket(lie_bracket(v, w, rule), u, rule) +
                         lie_bracket(lie_bracket(w, u, rule), v, rule);
    r.max_jacobi = std::max(r.max_jacobi, jacobi.max_abs());
  }
  return r;
}

}  // namespace geoch
