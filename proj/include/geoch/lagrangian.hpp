#pragma once

#include <functional>
#include <span>
#include <vector>

#include "geoch/geometry.hpp"
#include "geoch/grid.hpp"
#include "geoch/spectral.hpp"
#include "geoch/time_stepping.hpp"

namespace geoch {

/// Point (eta, V) of the tangent bundle of Diff(S^1), sampled at the labels
/// X_j of a uniform grid. eta is stored as X + displacement with a periodic
/// displacement, so eta(X + L) = eta(X) + L holds by construction and label
/// derivatives of eta reduce to spectral derivatives of the displacement.
class DiffeoState {
 public:
  /// Throws ValidationError on size mismatch, NonFiniteValue on NaN/Inf.
  /// The diffeomorphism property itself is checked by check_diffeo().
  DiffeoState(Grid grid, std::vector<double> displacement, std::vector<double> velocity);

  /// (id, V): particles start at their labels.
  static DiffeoState at_identity(const Field& velocity);

  /// (phi, v o phi) built from closed-form phi and v.
  static DiffeoState from_functions(const Grid& grid, const std::function<double(double)>& phi,
                                    const std::function<double(double)>& v);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& displacement() const { return displacement_; }
  const std::vector<double>& velocity() const { return velocity_; }

  /// eta_j = X_j + displacement_j.
  std::vector<double> positions() const;
  /// Label-space Jacobian eta_X = 1 + d(displacement)/dX.
  std::vector<double> jacobian() const;

  /// Throws DiffeoLoss unless eta_X > 0 at every label and the samples
  /// eta_0 < eta_1 < ... < eta_{n-1} < eta_0 + L.
  void check_diffeo() const;

 private:
  Grid grid_;
  std::vector<double> displacement_;
  std::vector<double> velocity_;
};

/// Labels eta^{-1}(x) for the given spatial points, by monotone cubic
/// interpolation of the inverse graph with slopes 1/eta_X.
std::vector<double> inverse_map(const DiffeoState& s, std::span<const double> points);

/// Samples f o eta at the labels (f periodic on the spatial grid).
std::vector<double> compose(const Field& f, const DiffeoState& s);

/// Pulls label-space samples a back to the spatial grid: a o eta^{-1}.
Field push_forward(std::span<const double> label_values, const DiffeoState& s);

/// Eulerian velocity u = V o eta^{-1} on the spatial grid.
Field eulerian_velocity(const DiffeoState& s);

/// Material acceleration (geodesic spray) for the chosen metric:
///   H1RightInvariant  a o eta with a = -(1 - d^2)^{-1} d(u^2 + u_x^2 / 2), u = V o eta^{-1}
///   L2RightInvariant  -2 V V_X / eta_X
///   L2Flat            0
std::vector<double> spray(const DiffeoState& s, MetricKind kind,
                          ProductRule rule = ProductRule::pointwise);

struct LagrangianTrajectory {
  std::vector<double> times;
  std::vector<DiffeoState> states;
  RunStatus status;
};

/// Integrates eta' = V, V' = spray(eta, V). Each recorded state is a valid
/// circle diffeomorphism; crossing particles end the run with diffeo_loss.
LagrangianTrajectory integrate_geodesic(const DiffeoState& s0, MetricKind kind,
                                        const StepOptions& options,
                                        ProductRule rule = ProductRule::dealias_3_2);

}  // namespace geoch
