#pragma once

#include <vector>

#include "geoch/geometry.hpp"
#include "geoch/grid.hpp"
#include "geoch/spectral.hpp"
#include "geoch/time_stepping.hpp"

namespace geoch {

/// Camassa-Holm right-hand side -B(u,u) = -(1 - d^2)^{-1}(3 u u_x - 2 u_x u_xx - u u_xxx).
Field ch_rhs(const Field& u, ProductRule rule = ProductRule::pointwise);

/// The same vector field written without third derivatives:
///   -u u_x - (1 - d^2)^{-1} d(u^2 + u_x^2 / 2).
Field ch_rhs_integral_form(const Field& u, ProductRule rule = ProductRule::pointwise);

/// -coefficient * u * u_x; coefficient must be 1 (Burgers) or 3.
Field burgers_rhs(const Field& u, double coefficient, ProductRule rule = ProductRule::pointwise);

enum class EulerianEquation {
  camassa_holm,           ///< integral form, the default CH right-hand side
  camassa_holm_explicit,  ///< third-derivative form -B(u,u)
  burgers3,               ///< u_t + 3 u u_x = 0 (right-invariant L2)
  burgers1,               ///< u_t + u u_x = 0 (flat L2)
};

/// Eulerian equation of the geodesic flow for a metric (CH in integral form for H1).
EulerianEquation equation_for(MetricKind kind);

/// Solver runs dealias quadratic products by default: without it the
/// aliasing error alone drifts the CH energy by ~1e-7 over unit time at n = 256.
struct EulerianModel {
  EulerianEquation equation = EulerianEquation::camassa_holm;
  ProductRule products = ProductRule::dealias_3_2;

  Field rhs(const Field& u) const;
  /// Characteristic speed per unit |u|, used in the step restriction.
  double speed_factor() const;
};

struct EulerianTrajectory {
  std::vector<double> times;
  std::vector<Field> states;
  RunStatus status;
};

/// Default under-resolution threshold for the spectral tail monitor.
inline constexpr double kDefaultTailTolerance = 1e-6;

/// Method-of-lines integration of u_t = model.rhs(u). Besides NaN/Inf the run
/// is stopped as a blow-up once the fraction of spectral energy in the top
/// third of modes exceeds `tail_tolerance` (the solution has steepened beyond
/// what the grid resolves). Throws ValidationError if dt violates
/// dt <= courant_limit(scheme) * h / (speed_factor * max|u0|).
EulerianTrajectory integrate(const Field& u0, const EulerianModel& model, const StepOptions& options,
                             double tail_tolerance = kDefaultTailTolerance);

}  // namespace geoch
