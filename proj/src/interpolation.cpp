#include "geoch/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "geoch/errors.hpp"
#include "geoch/spectral.hpp"

namespace geoch {
namespace {

std::vector<double> secants(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> s(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  return s;
}

// Fritsch-Butland slopes: weighted harmonic mean of the neighbouring secants,
// zero at local extrema; one-sided secants at the ends.
std::vector<double> estimate_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const auto s = secants(x, y);
  std::vector<double> d(n);
  d.front() = s.front();
  d.back() = s.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d[i] = 0.0;
      continue;
    }
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    const double w0 = 2.0 * h1 + h0;
    const double w1 = h1 + 2.0 * h0;
    d[i] = (w0 + w1) / (w0 / s[i - 1] + w1 / s[i]);
  }
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, SlopeLimiter limiter)
    : x_(std::move(x)), y_(std::move(y)) {
  check_knots();
  d_ = estimate_slopes(x_, y_);
  if (limiter == SlopeLimiter::fritsch_carlson) limit_slopes();
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slopes, SlopeLimiter limiter)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slopes)) {
  check_knots();
  if (d_.size() != x_.size()) throw ValidationError("one slope per knot required");
  if (limiter == SlopeLimiter::fritsch_carlson) limit_slopes();
}

void MonotoneCubic::check_knots() const {
  if (x_.size() < 2 || x_.size() != y_.size()) {
    throw ValidationError("cubic interpolation needs at least two (x, y) pairs of equal length");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i + 1] > x_[i])) throw ValidationError("interpolation knots are not strictly increasing");
  }
}

void MonotoneCubic::limit_slopes() {
  const auto s = secants(x_, y_);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0.0) {
      d_[i] = 0.0;
      d_[i + 1] = 0.0;
      continue;
    }
    // Slopes must share the sign of every secant they touch.
    if (d_[i] * s[i] < 0.0) d_[i] = 0.0;
    if (d_[i + 1] * s[i] < 0.0) d_[i + 1] = 0.0;
    const double a = d_[i] / s[i];
    const double b = d_[i + 1] / s[i];
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d_[i] = tau * a * s[i];
      d_[i + 1] = tau * b * s[i];
    }
  }
}

double MonotoneCubic::operator()(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

namespace {

MonotoneCubic periodic_cubic(const Grid& grid, const std::vector<double>& values,
                             const std::vector<double>& slopes) {
  if (values.size() != grid.n() || slopes.size() != grid.n()) {
    throw ValidationError("periodic interpolant needs n values and n slopes");
  }
  auto x = grid.points();
  x.push_back(grid.length());
  auto y = values;
  y.push_back(values.front());
  auto d = slopes;
  d.push_back(slopes.front());
  return MonotoneCubic(std::move(x), std::move(y), std::move(d), SlopeLimiter::none);
}

}  // namespace

PeriodicInterpolant::PeriodicInterpolant(const Field& f)
    : PeriodicInterpolant(f.grid(), f.data(),
                          spectral::derivative(f.values(), f.grid().length(), 1)) {}

PeriodicInterpolant::PeriodicInterpolant(const Grid& grid, const std::vector<double>& values,
                                         const std::vector<double>& slopes)
    : length_(grid.length()), cubic_(periodic_cubic(grid, values, slopes)) {}

double PeriodicInterpolant::operator()(double x) const {
  double r = std::fmod(x, length_);
  if (r < 0.0) r += length_;
  return cubic_(r);
}

}  // namespace geoch
