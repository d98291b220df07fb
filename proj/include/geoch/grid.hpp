#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace geoch {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic discretization of a circle of circumference `length`:
/// x_j = j * length / n for j = 0..n-1. n must be a power of two, n >= 8.
class Grid {
 public:
  explicit Grid(std::size_t n, double length = kTwoPi);

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double point(std::size_t j) const { return static_cast<double>(j) * spacing(); }
  std::vector<double> points() const;

  /// Angular wavenumber 2*pi*m/L of the signed Fourier mode m.
  double wavenumber(long m) const { return kTwoPi * static_cast<double>(m) / length_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_;
  double length_;
};

/// Real-valued periodic grid function. Immutable after construction; all
/// samples are finite.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);
  static Field constant(const Grid& grid, double c);
  static Field sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& data() const { return values_; }

  double max_abs() const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator-(const Field& a);
  friend Field operator*(double s, const Field& a);
  friend Field operator*(const Field& a, double s) { return s * a; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Throws GridMismatch unless both fields share a grid.
void require_same_grid(const Field& a, const Field& b);

/// Max-norm of a - b.
double max_difference(const Field& a, const Field& b);

}  // namespace geoch
