#include "geoch/eulerian.hpp"

#include <sstream>

#include "geoch/errors.hpp"

namespace geoch {

Field ch_rhs(const Field& u, ProductRule rule) { return -b_operator(u, u, rule); }

Field ch_rhs_integral_form(const Field& u, ProductRule rule) {
  const Field ux = derivative(u, 1);
  const Field flux = multiply(u, u, rule) + 0.5 * multiply(ux, ux, rule);
  return -multiply(u, ux, rule) - helmholtz_inverse(derivative(flux, 1));
}

Field burgers_rhs(const Field& u, double coefficient, ProductRule rule) {
  if (coefficient != 1.0 && coefficient != 3.0) {
    std::ostringstream msg;
    msg << "burgers coefficient must be 1 or 3, got " << coefficient;
    throw ValidationError(msg.str());
  }
  return -coefficient * multiply(u, derivative(u, 1), rule);
}

EulerianEquation equation_for(MetricKind kind) {
  switch (kind) {
    case MetricKind::H1RightInvariant: return EulerianEquation::camassa_holm;
    case MetricKind::L2RightInvariant: return EulerianEquation::burgers3;
    case MetricKind::L2Flat: return EulerianEquation::burgers1;
  }
  return EulerianEquation::camassa_holm;
}

Field EulerianModel::rhs(const Field& u) const {
  switch (equation) {
    case EulerianEquation::camassa_holm: return ch_rhs_integral_form(u, products);
    case EulerianEquation::camassa_holm_explicit: return ch_rhs(u, products);
    case EulerianEquation::burgers3: return burgers_rhs(u, 3.0, products);
    case EulerianEquation::burgers1: return burgers_rhs(u, 1.0, products);
  }
  return Field::zeros(u.grid());
}

double EulerianModel::speed_factor() const {
  return equation == EulerianEquation::burgers3 ? 3.0 : 1.0;
}

EulerianTrajectory integrate(const Field& u0, const EulerianModel& model, const StepOptions& options,
                             double tail_tolerance) {
  validate(options);
  const Grid grid = u0.grid();
  const double speed = model.speed_factor() * u0.max_abs();
  if (speed > 0.0) {
    const double limit = courant_limit(options.scheme) * grid.spacing() / speed;
    if (options.dt > limit) {
      std::ostringstream msg;
      msg << "dt=" << options.dt << " exceeds the " << to_string(options.scheme)
          << " step limit " << limit << " for this grid and initial data";
      throw ValidationError(msg.str());
    }
  }

  const FlatRhs rhs = [&](double, const FlatState& y) {
    return model.rhs(Field(grid, y)).data();
  };
  const StateMonitor monitor = [&](double t, const FlatState& y) -> std::optional<RunStatus> {
    const double tail = spectral_tail_fraction(Field(grid, y));
    if (tail > tail_tolerance) {
      std::ostringstream msg;
      msg << "solution under-resolved at t=" << t << " (spectral tail fraction " << tail << ")";
      return RunStatus{Termination::blowup, t, msg.str()};
    }
    return std::nullopt;
  };

  FlatTrajectory flat = integrate_fixed(u0.data(), rhs, options, monitor);
  EulerianTrajectory traj;
  traj.times = std::move(flat.times);
  traj.states.reserve(flat.states.size());
  for (auto& s : flat.states) traj.states.emplace_back(grid, std::move(s));
  traj.status = std::move(flat.status);
  return traj;
}

}  // namespace geoch
