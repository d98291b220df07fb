#include "geoch/time_stepping.hpp"

#include <cmath>

#include "geoch/errors.hpp"

namespace geoch {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::rk4 ? "rk4" : "euler";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "euler") return Scheme::euler;
  return std::nullopt;
}

double courant_limit(Scheme scheme) { return scheme == Scheme::rk4 ? 0.8 : 0.1; }

void validate(const StepOptions& options) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw ValidationError("dt must be positive");
  if (!(options.t_final > 0.0) || !std::isfinite(options.t_final)) {
    throw ValidationError("t_final must be positive");
  }
  if (options.dt > options.t_final) throw ValidationError("dt must not exceed t_final");
  if (options.sample_every == 0) throw ValidationError("sample stride must be at least 1");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup: return "blowup";
    case Termination::diffeo_loss: return "diffeo_loss";
  }
  return "unknown";
}

namespace {

bool all_finite(const FlatState& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

FlatState axpy(const FlatState& y, double a, const FlatState& k) {
  FlatState out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

FlatState step(const FlatRhs& rhs, Scheme scheme, double t, const FlatState& y, double h) {
  if (scheme == Scheme::euler) return axpy(y, h, rhs(t, y));
  const FlatState k1 = rhs(t, y);
  const FlatState k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const FlatState k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const FlatState k4 = rhs(t + h, axpy(y, h, k3));
  FlatState out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

FlatTrajectory integrate_fixed(FlatState y0, const FlatRhs& rhs, const StepOptions& options,
                               const StateMonitor& monitor) {
  validate(options);
  FlatTrajectory traj;
  traj.status.kind = Termination::completed;
  if (!all_finite(y0)) throw NonFiniteValue("initial state is not finite");

  const auto steps = static_cast<std::size_t>(std::ceil(options.t_final / options.dt - 1e-9));
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  FlatState y = std::move(y0);
  double t = 0.0;
  // On early termination keep the last valid state even if the stride skipped it.
  auto stop_with = [&](RunStatus status) {
    if (traj.times.back() != t) {
      traj.times.push_back(t);
      traj.states.push_back(y);
    }
    traj.status = std::move(status);
    return std::move(traj);
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_next = (s == steps) ? options.t_final : static_cast<double>(s) * options.dt;
    FlatState next;
    try {
      next = step(rhs, options.scheme, t, y, t_next - t);
    } catch (const NonFiniteValue& e) {
      return stop_with({Termination::blowup, t, e.what()});
    } catch (const DiffeoLoss& e) {
      return stop_with({Termination::diffeo_loss, t, e.what()});
    }
    if (!all_finite(next)) {
      return stop_with({Termination::blowup, t, "non-finite state after step"});
    }
    if (monitor) {
      if (auto stop = monitor(t_next, next)) {
        stop->last_valid_time = t;
        return stop_with(*stop);
      }
    }
    y = std::move(next);
    t = t_next;
    if (s % options.sample_every == 0 || s == steps) {
      traj.times.push_back(t);
      traj.states.push_back(y);
    }
  }
  traj.status.last_valid_time = t;
  return traj;
}

}  // namespace geoch
