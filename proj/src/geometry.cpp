#include "geoch/geometry.hpp"

#include <cmath>

namespace geoch {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::H1RightInvariant: return "h1-right";
    case MetricKind::L2RightInvariant: return "l2-right";
    case MetricKind::L2Flat: return "l2-flat";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  if (name == "h1-right") return MetricKind::H1RightInvariant;
  if (name == "l2-right") return MetricKind::L2RightInvariant;
  if (name == "l2-flat") return MetricKind::L2Flat;
  return std::nullopt;
}

double inner_product(const Field& u, const Field& v, MetricKind kind) {
  require_same_grid(u, v);
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) sum += u[j] * v[j];
  if (kind == MetricKind::H1RightInvariant) {
    const Field ux = derivative(u, 1);
    const Field vx = derivative(v, 1);
    for (std::size_t j = 0; j < u.size(); ++j) sum += ux[j] * vx[j];
  }
  return sum * u.grid().spacing();
}

double h1_norm(const Field& u) {
  return std::sqrt(inner_product(u, u, MetricKind::H1RightInvariant));
}

Field lie_bracket(const Field& u, const Field& v, ProductRule rule) {
  require_same_grid(u, v);
  return multiply(derivative(u, 1), v, rule) - multiply(u, derivative(v, 1), rule);
}

Field b_operator(const Field& w, const Field& u, ProductRule rule) {
  require_same_grid(w, u);
  const Field lw = helmholtz(w);
  const Field lwx = helmholtz(derivative(w, 1));
  const Field ux = derivative(u, 1);
  return helmholtz_inverse(2.0 * multiply(ux, lw, rule) + multiply(u, lwx, rule));
}

Field momentum(const Field& u) { return helmholtz(u); }

double energy(const Field& u) {
  return 0.5 * inner_product(u, u, MetricKind::H1RightInvariant);
}

}  // namespace geoch
