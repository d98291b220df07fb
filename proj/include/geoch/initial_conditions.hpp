#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoch/grid.hpp"

namespace geoch {

/// Named smooth initial velocity profiles on a circle of circumference L.
///
///   cosine           A cos(m k x)
///   sine             A sin(m k x)
///   two-cosine       A (cos(m k x) + 0.5 cos(2 m k x))
///   gaussian         A sum_images exp(-(x - c)^2 / (2 w^2))
///   smoothed-peakon  A (2G * rho_w)(x - c): the circle peakon of momentum A,
///                    mollified by a Gaussian of width w so it is smooth
///
/// with k = 2 pi / L. A true peakon is only Lipschitz and rings under a
/// spectral method; the mollified one is resolved once w spans a few cells.
struct InitialCondition {
  std::string name = "cosine";
  double amplitude = 1.0;
  int mode = 1;
  std::optional<double> center;  ///< defaults to L/2
  std::optional<double> width;   ///< defaults: gaussian 0.5, smoothed-peakon 0.1
};

const std::vector<std::string>& initial_condition_names();

/// Throws ValidationError for unknown names or bad parameters.
void validate(const InitialCondition& ic);

/// Closed-form profile x -> u0(x) for a domain of circumference `length`.
std::function<double(double)> initial_profile(const InitialCondition& ic, double length);

Field make_initial_field(const InitialCondition& ic, const Grid& grid);

}  // namespace geoch
