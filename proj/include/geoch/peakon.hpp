#pragma once

#include <vector>

#include "geoch/grid.hpp"
#include "geoch/time_stepping.hpp"

namespace geoch {

/// Where the peakons live: the real line or a circle of circumference length.
struct PeakonDomain {
  enum class Kind { line, circle };
  Kind kind = Kind::line;
  double length = 0.0;

  static PeakonDomain line() { return {Kind::line, 0.0}; }
  static PeakonDomain circle(double length);
  bool is_circle() const { return kind == Kind::circle; }
};

/// Green's function of 1 - d^2 with (1 - d^2) G = delta.
///   line:       G(x) = exp(-|x|) / 2
///   circle(L):  G(x) = cosh(d - L/2) / (2 sinh(L/2)), d = x mod L in [0, L)
double green_kernel(double x, const PeakonDomain& domain);

/// G'(x), with the one-sided limits averaged at the kink (so G'(0) = 0).
double green_kernel_derivative(double x, const PeakonDomain& domain);

/// Positions and momenta of N peakons. The velocity field they carry is
///   u(x) = sum_i p_i * 2 G(x - q_i),
/// i.e. momentum density m = u - u_xx = sum_i 2 p_i delta(x - q_i), so an
/// isolated peakon on the line has height p_i and travels at speed p_i.
struct PeakonState {
  std::vector<double> q;
  std::vector<double> p;
  PeakonDomain domain;

  std::size_t size() const { return q.size(); }
};

/// Throws ValidationError unless q and p have equal nonzero length and finite
/// entries (and, on a circle, q lies in [0, L)).
void validate(const PeakonState& s);

/// H = 1/2 sum_ij p_i p_j 2G(q_i - q_j); the H1 energy of the field is 2H.
double peakon_hamiltonian(const PeakonState& s);

struct PeakonRates {
  std::vector<double> dq;
  std::vector<double> dp;
};

/// Canonical equations dq_i = dH/dp_i = u(q_i),
/// dp_i = -dH/dq_i = -p_i sum_j p_j 2G'(q_i - q_j) (the j = i term vanishes).
PeakonRates peakon_rhs(const PeakonState& s);

/// Samples u = sum_i p_i 2G(x - q_i) on a grid; the domain must be the
/// circle of the grid's circumference. An empty state gives the zero field.
Field peakon_field(const PeakonState& s, const Grid& grid);

struct PeakonTrajectory {
  std::vector<double> times;
  std::vector<PeakonState> states;
  RunStatus status;
};

/// Integrates the canonical system. On a circle the recorded positions are
/// wrapped into [0, L); the integration itself uses unwrapped positions.
PeakonTrajectory integrate_peakons(const PeakonState& s0, const StepOptions& options);

}  // namespace geoch
