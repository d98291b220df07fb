#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoch {

enum class Scheme { rk4, euler };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Courant number c in the step restriction dt <= c * h / max|wave speed|.
/// RK4 covers a segment of the imaginary axis of length 2.83 and the largest
/// resolved wavenumber is pi/h, so c = 0.8 stays inside it. Forward Euler is
/// unstable for purely imaginary spectra; c = 0.1 bounds the growth over the
/// short runs it is used for (order checks).
double courant_limit(Scheme scheme);

struct StepOptions {
  double dt = 1e-3;
  double t_final = 1.0;
  Scheme scheme = Scheme::rk4;
  /// Record every k-th step. The initial and final states are always recorded.
  std::size_t sample_every = 1;
};

/// Throws ValidationError on dt <= 0, t_final <= 0, dt > t_final or a zero stride.
void validate(const StepOptions& options);

enum class Termination { completed, blowup, diffeo_loss };

std::string_view to_string(Termination t);

struct RunStatus {
  Termination kind = Termination::completed;
  /// Time of the last state that passed all checks.
  double last_valid_time = 0.0;
  std::string message;

  bool completed() const { return kind == Termination::completed; }
};

using FlatState = std::vector<double>;
using FlatRhs = std::function<FlatState(double t, const FlatState& y)>;
/// Inspects an accepted state; returns a termination to stop the run.
using StateMonitor = std::function<std::optional<RunStatus>(double t, const FlatState& y)>;

struct FlatTrajectory {
  std::vector<double> times;
  std::vector<FlatState> states;
  RunStatus status;
};

/// Advances y' = rhs(t, y) with fixed steps of `dt`; the last step is shortened
/// to land exactly on t_final. Non-finite values abort with a blow-up status,
/// a thrown DiffeoLoss aborts with a diffeo-loss status. Either way the
/// trajectory holds every valid state recorded so far.
FlatTrajectory integrate_fixed(FlatState y0, const FlatRhs& rhs, const StepOptions& options,
                               const StateMonitor& monitor = {});

}  // namespace geoch
