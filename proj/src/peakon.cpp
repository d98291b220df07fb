#include "geoch/peakon.hpp"

#include <cmath>
#include <string>

#include "geoch/errors.hpp"

namespace geoch {

PeakonDomain PeakonDomain::circle(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ValidationError("circle length must be positive");
  return {Kind::circle, length};
}

namespace {

double wrap(double x, double length) {
  double r = std::fmod(x, length);
  if (r < 0.0) r += length;
  return r < length ? r : 0.0;
}

}  // namespace

// On the circle, cosh(d - L/2) / (2 sinh(L/2)) is rewritten as
// (e^{-d} + e^{d-L}) / (2 (1 - e^{-L})), which does not overflow for large L.
double green_kernel(double x, const PeakonDomain& domain) {
  if (!domain.is_circle()) return 0.5 * std::exp(-std::abs(x));
  const double L = domain.length;
  const double d = wrap(x, L);
  return (std::exp(-d) + std::exp(d - L)) / (2.0 * -std::expm1(-L));
}

double green_kernel_derivative(double x, const PeakonDomain& domain) {
  if (!domain.is_circle()) {
    if (x == 0.0) return 0.0;
    return x > 0.0 ? -0.5 * std::exp(-x) : 0.5 * std::exp(x);
  }
  const double L = domain.length;
  const double d = wrap(x, L);
  if (d == 0.0) return 0.0;
  return (-std::exp(-d) + std::exp(d - L)) / (2.0 * -std::expm1(-L));
}

void validate(const PeakonState& s) {
  if (s.q.empty() || s.q.size() != s.p.size()) {
    throw ValidationError("peakon state needs N >= 1 positions and as many momenta");
  }
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    if (!std::isfinite(s.q[i]) || !std::isfinite(s.p[i])) {
      throw ValidationError("peakon " + std::to_string(i) + " has a non-finite entry");
    }
    if (s.domain.is_circle() && (s.q[i] < 0.0 || s.q[i] >= s.domain.length)) {
      throw ValidationError("peakon position outside [0, L) on the circle");
    }
  }
}

double peakon_hamiltonian(const PeakonState& s) {
  double h = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      h += s.p[i] * s.p[j] * 2.0 * green_kernel(s.q[i] - s.q[j], s.domain);
    }
  }
  return 0.5 * h;
}

PeakonRates peakon_rhs(const PeakonState& s) {
  const std::size_t n = s.size();
  PeakonRates r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = s.q[i] - s.q[j];
      r.dq[i] += s.p[j] * 2.0 * green_kernel(dx, s.domain);
      if (j != i) r.dp[i] -= s.p[i] * s.p[j] * 2.0 * green_kernel_derivative(dx, s.domain);
    }
  }
  return r;
}

Field peakon_field(const PeakonState& s, const Grid& grid) {
  if (!s.q.empty() && (!s.domain.is_circle() || s.domain.length != grid.length())) {
    throw ValidationError("peakon field needs a circle domain matching the grid circumference");
  }
  if (s.q.size() != s.p.size()) throw ValidationError("peakon positions and momenta differ in count");
  std::vector<double> u(grid.n(), 0.0);
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.point(j);
    for (std::size_t i = 0; i < s.size(); ++i) u[j] += s.p[i] * 2.0 * green_kernel(x - s.q[i], s.domain);
  }
  return Field(grid, std::move(u));
}

PeakonTrajectory integrate_peakons(const PeakonState& s0, const StepOptions& options) {
  validate(s0);
  const std::size_t n = s0.size();
  const PeakonDomain domain = s0.domain;

  auto unpack = [&](const FlatState& y) {
    PeakonState s{std::vector<double>(y.begin(), y.begin() + static_cast<long>(n)),
                  std::vector<double>(y.begin() + static_cast<long>(n), y.end()), domain};
    return s;
  };
  const FlatRhs rhs = [&](double, const FlatState& y) {
    const auto rates = peakon_rhs(unpack(y));
    FlatState dy(rates.dq);
    dy.insert(dy.end(), rates.dp.begin(), rates.dp.end());
    return dy;
  };

  FlatState y0(s0.q);
  y0.insert(y0.end(), s0.p.begin(), s0.p.end());
  FlatTrajectory flat = integrate_fixed(std::move(y0), rhs, options);

  PeakonTrajectory traj;
  traj.times = std::move(flat.times);
  traj.status = std::move(flat.status);
  traj.states.reserve(flat.states.size());
  for (const auto& y : flat.states) {
    PeakonState s = unpack(y);
    if (domain.is_circle()) {
      for (double& q : s.q) q = wrap(q, domain.length);
    }
    traj.states.push_back(std::move(s));
  }
  return traj;
}

}  // namespace geoch
