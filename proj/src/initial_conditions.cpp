#include "geoch/initial_conditions.hpp"

#include <algorithm>
#include <cmath>

#include "geoch/errors.hpp"

namespace geoch {

const std::vector<std::string>& initial_condition_names() {
  static const std::vector<std::string> names = {"cosine", "sine", "two-cosine", "gaussian",
                                                 "smoothed-peakon"};
  return names;
}

namespace {

double default_width(const std::string& name) { return name == "gaussian" ? 0.5 : 0.1; }

}  // namespace

void validate(const InitialCondition& ic) {
  const auto& names = initial_condition_names();
  if (std::find(names.begin(), names.end(), ic.name) == names.end()) {
    throw ValidationError("unknown initial condition '" + ic.name + "'");
  }
  if (!std::isfinite(ic.amplitude)) throw ValidationError("amplitude must be finite");
  if (ic.mode < 1) throw ValidationError("mode must be a positive integer");
  if (ic.width && !(*ic.width > 0.0)) throw ValidationError("width must be positive");
  if (ic.center && !std::isfinite(*ic.center)) throw ValidationError("center must be finite");
}

std::function<double(double)> initial_profile(const InitialCondition& ic, double length) {
  validate(ic);
  const double a = ic.amplitude;
  const double k = kTwoPi * ic.mode / length;
  const double c = ic.center.value_or(0.5 * length);
  const double w = ic.width.value_or(default_width(ic.name));

  if (ic.name == "cosine") return [=](double x) { return a * std::cos(k * x); };
  if (ic.name == "sine") return [=](double x) { return a * std::sin(k * x); };
  if (ic.name == "two-cosine") {
    return [=](double x) { return a * (std::cos(k * x) + 0.5 * std::cos(2.0 * k * x)); };
  }
  if (ic.name == "gaussian") {
    // Images beyond 40 widths contribute below double precision.
    const int images = static_cast<int>(std::ceil(40.0 * w / length)) + 1;
    return [=](double x) {
      double sum = 0.0;
      for (int m = -images; m <= images; ++m) {
        const double d = x - c + m * length;
        sum += std::exp(-d * d / (2.0 * w * w));
      }
      return a * sum;
    };
  }
  // smoothed-peakon: Fourier series of 2G mollified by exp(-w^2 k^2 / 2),
  // truncated once the Gaussian factor drops below 1e-20.
  const long modes = static_cast<long>(std::ceil(std::sqrt(2.0 * 46.0) / w / (kTwoPi / length))) + 1;
  return [=](double x) {
    double sum = 2.0;  // mode 0: 2 / (1 + 0)
    for (long m = 1; m <= modes; ++m) {
      const double km = kTwoPi * static_cast<double>(m) / length;
      sum += 2.0 * 2.0 * std::exp(-0.5 * w * w * km * km) / (1.0 + km * km) * std::cos(km * (x - c));
    }
    return a * sum / length;
  };
}

Field make_initial_field(const InitialCondition& ic, const Grid& grid) {
  return Field::sample(grid, initial_profile(ic, grid.length()));
}

}  // namespace geoch
