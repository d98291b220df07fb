#include "geoch/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "geoch/errors.hpp"

namespace geoch {

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {
  if (n < 8 || !std::has_single_bit(n)) {
    throw ValidationError("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("grid length must be positive and finite");
  }
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " samples, grid has " +
                          std::to_string(grid_.n()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw NonFiniteValue("non-finite field sample at index " + std::to_string(j));
    }
  }
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.n(), 0.0)); }

Field Field::constant(const Grid& grid, double c) {
  return Field(grid, std::vector<double>(grid.n(), c));
}

Field Field::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.n());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.point(j));
  return Field(grid, std::move(v));
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw GridMismatch("fields live on different grids (n=" + std::to_string(a.grid().n()) +
                       " vs n=" + std::to_string(b.grid().n()) + ")");
  }
}

namespace {

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(a[j], b[j]);
  return Field(a.grid(), std::move(out));
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Field operator-(const Field& a) { return -1.0 * a; }

Field operator*(double s, const Field& a) {
  std::vector<double> out(a.data());
  for (double& v : out) v *= s;
  return Field(a.grid(), std::move(out));
}

double max_difference(const Field& a, const Field& b) { return (a - b).max_abs(); }

}  // namespace geoch
