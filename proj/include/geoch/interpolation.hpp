#pragma once

#include <vector>

#include "geoch/grid.hpp"

namespace geoch {

enum class SlopeLimiter {
  none,             ///< plain cubic Hermite; O(h^4) when slopes are exact
  fritsch_carlson,  ///< slopes clipped so monotone data gives a monotone curve
};

/// Piecewise cubic Hermite interpolation through (x_i, y_i) with strictly
/// increasing knots. With the Fritsch-Carlson limiter, each cubic stays inside
/// the box spanned by its two data points whenever the data are monotone.
/// Outside [x_0, x_last] the end cubics are extended.
class MonotoneCubic {
 public:
  /// Slopes estimated from the data (three-point harmonic-mean formula).
  MonotoneCubic(std::vector<double> x, std::vector<double> y,
                SlopeLimiter limiter = SlopeLimiter::fritsch_carlson);

  /// Caller-supplied slopes, e.g. exact derivatives at the knots.
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes,
                SlopeLimiter limiter);

  double operator()(double t) const;

  const std::vector<double>& slopes() const { return d_; }

 private:
  void check_knots() const;
  void limit_slopes();

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// Cubic Hermite interpolant of a periodic field, using its spectral
/// derivative as knot slopes. Accepts any real abscissa (wrapped mod L).
class PeriodicInterpolant {
 public:
  explicit PeriodicInterpolant(const Field& f);
  PeriodicInterpolant(const Grid& grid, const std::vector<double>& values,
                      const std::vector<double>& slopes);

  double operator()(double x) const;

 private:
  double length_;
  MonotoneCubic cubic_;
};

}  // namespace geoch
