#include "geoch/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geoch/errors.hpp"
#include "geoch/interpolation.hpp"

namespace geoch {
namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NonFiniteValue(std::string("non-finite ") + what);
  }
}

}  // namespace

DiffeoState::DiffeoState(Grid grid, std::vector<double> displacement, std::vector<double> velocity)
    : grid_(grid), displacement_(std::move(displacement)), velocity_(std::move(velocity)) {
  if (displacement_.size() != grid_.n() || velocity_.size() != grid_.n()) {
    throw ValidationError("diffeo state needs n displacements and n velocities");
  }
  require_finite(displacement_, "displacement");
  require_finite(velocity_, "velocity");
}

DiffeoState DiffeoState::at_identity(const Field& velocity) {
  return DiffeoState(velocity.grid(), std::vector<double>(velocity.size(), 0.0), velocity.data());
}

DiffeoState DiffeoState::from_functions(const Grid& grid, const std::function<double(double)>& phi,
                                        const std::function<double(double)>& v) {
  std::vector<double> disp(grid.n());
  std::vector<double> vel(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.point(j);
    const double y = phi(x);
    disp[j] = y - x;
    vel[j] = v(y);
  }
  return DiffeoState(grid, std::move(disp), std::move(vel));
}

std::vector<double> DiffeoState::positions() const {
  std::vector<double> eta(displacement_);
  for (std::size_t j = 0; j < eta.size(); ++j) eta[j] += grid_.point(j);
  return eta;
}

std::vector<double> DiffeoState::jacobian() const {
  auto jac = spectral::derivative(displacement_, grid_.length(), 1);
  for (double& v : jac) v += 1.0;
  return jac;
}

void DiffeoState::check_diffeo() const {
  const auto jac = jacobian();
  const auto low = std::min_element(jac.begin(), jac.end());
  if (!(*low > 0.0)) {
    std::ostringstream msg;
    msg << "eta_X = " << *low << " <= 0 at label index " << (low - jac.begin());
    throw DiffeoLoss(msg.str());
  }
  const auto eta = positions();
  for (std::size_t j = 0; j + 1 < eta.size(); ++j) {
    if (!(eta[j + 1] > eta[j])) {
      throw DiffeoLoss("particle samples out of order at label index " + std::to_string(j));
    }
  }
  if (!(eta.front() + grid_.length() > eta.back())) {
    throw DiffeoLoss("particle samples wrap past one period");
  }
}

std::vector<double> inverse_map(const DiffeoState& s, std::span<const double> points) {
  s.check_diffeo();
  const Grid& g = s.grid();
  const double length = g.length();
  auto eta = s.positions();
  const auto jac = s.jacobian();

  // Graph of eta^{-1} over one period [eta_0, eta_0 + L].
  std::vector<double> knots(eta);
  knots.push_back(eta.front() + length);
  std::vector<double> labels = g.points();
  labels.push_back(length);
  std::vector<double> slopes(g.n() + 1);
  for (std::size_t j = 0; j < g.n(); ++j) slopes[j] = 1.0 / jac[j];
  slopes.back() = slopes.front();
  const MonotoneCubic inverse(std::move(knots), std::move(labels), std::move(slopes),
                              SlopeLimiter::fritsch_carlson);

  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double shift = std::floor((points[i] - eta.front()) / length) * length;
    out[i] = inverse(points[i] - shift) + shift;
  }
  return out;
}

std::vector<double> compose(const Field& f, const DiffeoState& s) {
  if (!(f.grid() == s.grid())) throw GridMismatch("field and particle map live on different grids");
  const PeriodicInterpolant interp(f);
  const auto eta = s.positions();
  std::vector<double> out(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) out[j] = interp(eta[j]);
  return out;
}

Field push_forward(std::span<const double> label_values, const DiffeoState& s) {
  const Grid& g = s.grid();
  std::vector<double> values(label_values.begin(), label_values.end());
  auto slopes = spectral::derivative(values, g.length(), 1);
  const PeriodicInterpolant interp(g, values, slopes);
  const auto x = g.points();
  const auto labels = inverse_map(s, x);
  std::vector<double> out(g.n());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = interp(labels[j]);
  return Field(g, std::move(out));
}

Field eulerian_velocity(const DiffeoState& s) { return push_forward(s.velocity(), s); }

std::vector<double> spray(const DiffeoState& s, MetricKind kind, ProductRule rule) {
  const Grid& g = s.grid();
  switch (kind) {
    case MetricKind::L2Flat:
      return std::vector<double>(g.n(), 0.0);
    case MetricKind::L2RightInvariant: {
      const auto jac = s.jacobian();
      const auto vx = spectral::derivative(s.velocity(), g.length(), 1);
      std::vector<double> out(g.n());
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (!(jac[j] > 0.0)) throw DiffeoLoss("eta_X <= 0 in right-invariant L2 spray");
        out[j] = -2.0 * s.velocity()[j] * vx[j] / jac[j];
      }
      return out;
    }
    case MetricKind::H1RightInvariant: {
      const Field u = eulerian_velocity(s);
      const Field ux = derivative(u, 1);
      const Field flux = multiply(u, u, rule) + 0.5 * multiply(ux, ux, rule);
      const Field accel = -helmholtz_inverse(derivative(flux, 1));
      return compose(accel, s);
    }
  }
  return {};
}

LagrangianTrajectory integrate_geodesic(const DiffeoState& s0, MetricKind kind,
                                        const StepOptions& options, ProductRule rule) {
  validate(options);
  s0.check_diffeo();
  const Grid grid = s0.grid();
  const std::size_t n = grid.n();

  if (kind == MetricKind::L2RightInvariant) {
    double vmax = 0.0;
    for (double v : s0.velocity()) vmax = std::max(vmax, std::abs(v));
    if (vmax > 0.0) {
      const double limit = courant_limit(options.scheme) * grid.spacing() / (2.0 * vmax);
      if (options.dt > limit) {
        std::ostringstream msg;
        msg << "dt=" << options.dt << " exceeds the step limit " << limit
            << " of the right-invariant L2 spray";
        throw ValidationError(msg.str());
      }
    }
  }

  auto unpack = [&](const FlatState& y) {
    return DiffeoState(grid, std::vector<double>(y.begin(), y.begin() + static_cast<long>(n)),
                       std::vector<double>(y.begin() + static_cast<long>(n), y.end()));
  };
  const FlatRhs rhs = [&](double, const FlatState& y) {
    const DiffeoState s = unpack(y);
    const auto accel = spray(s, kind, rule);
    FlatState dy(2 * n);
    std::copy(s.velocity().begin(), s.velocity().end(), dy.begin());
    std::copy(accel.begin(), accel.end(), dy.begin() + static_cast<long>(n));
    return dy;
  };
  const StateMonitor monitor = [&](double t, const FlatState& y) -> std::optional<RunStatus> {
    try {
      unpack(y).check_diffeo();
    } catch (const DiffeoLoss& e) {
      return RunStatus{Termination::diffeo_loss, t, e.what()};
    }
    return std::nullopt;
  };

  FlatState y0(2 * n);
  std::copy(s0.displacement().begin(), s0.displacement().end(), y0.begin());
  std::copy(s0.velocity().begin(), s0.velocity().end(), y0.begin() + static_cast<long>(n));

  FlatTrajectory flat = integrate_fixed(std::move(y0), rhs, options, monitor);
  LagrangianTrajectory traj;
  traj.times = std::move(flat.times);
  traj.states.reserve(flat.states.size());
  for (const auto& y : flat.states) traj.states.push_back(unpack(y));
  traj.status = std::move(flat.status);
  return traj;
}

}  // namespace geoch
