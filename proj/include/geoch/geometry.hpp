#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "geoch/grid.hpp"
#include "geoch/spectral.hpp"

namespace geoch {

/// Metric placed on the diffeomorphism group of the circle.
///
///   H1RightInvariant  <u,v> = int (u v + u_x v_x) dx at the identity,
///                     right-translated; geodesics give Camassa-Holm.
///   L2RightInvariant  <u,v> = int u v dx at the identity, right-translated;
///                     Eulerian velocity obeys u_t + 3 u u_x = 0.
///   L2Flat            int V W dX on every fibre (not right-invariant);
///                     zero spray, Eulerian velocity obeys Burgers.
enum class MetricKind { H1RightInvariant, L2RightInvariant, L2Flat };

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> parse_metric_kind(std::string_view name);

/// Inner product at the identity: H1 gives int(uv + u_x v_x), both L2 kinds int uv.
double inner_product(const Field& u, const Field& v, MetricKind kind);

/// H1 norm sqrt(<u,u>_1).
double h1_norm(const Field& u);

/// Right Lie-algebra bracket [u,v] = u_x v - u v_x.
///
/// Note the sign: this is minus the usual Jacobi-Lie bracket of vector fields,
/// the convention under which du/dt = -B(u,u) is the geodesic equation of a
/// right-invariant metric.
Field lie_bracket(const Field& u, const Field& v, ProductRule rule = ProductRule::pointwise);

/// The operator B of the H1 metric, characterized by <B(w,u),v>_1 = <w,[u,v]>_1
/// and evaluated in closed form:
///   B(w,u) = (1 - d^2)^{-1} ( 2 u_x (1 - d^2) w + u (1 - d^2) w_x ).
Field b_operator(const Field& w, const Field& u, ProductRule rule = ProductRule::pointwise);

/// Momentum density m = u - u_xx.
Field momentum(const Field& u);

/// Lagrangian l(u) = 1/2 int (u^2 + u_x^2) dx.
double energy(const Field& u);

}  // namespace geoch
