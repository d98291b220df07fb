#pragma once

#include <complex>
#include <span>
#include <vector>

#include "geoch/grid.hpp"

namespace geoch {

/// How quadratic products of fields are formed. `dealias_3_2` pads both
/// spectra to 3n/2 modes before multiplying and truncates back, which removes
/// aliasing of quadratic terms; `pointwise` multiplies grid samples.
enum class ProductRule { pointwise, dealias_3_2 };

namespace spectral {

/// Half-spectrum (n/2 + 1 complex coefficients) of real samples, unnormalized.
std::vector<std::complex<double>> forward(std::span<const double> samples);

/// Inverse of `forward` including the 1/n normalization.
std::vector<double> inverse(std::vector<std::complex<double>> half_spectrum, std::size_t n);

/// Spectral derivative of raw periodic samples over a period of `length`.
std::vector<double> derivative(std::span<const double> samples, double length, int order);

}  // namespace spectral

/// Spectral derivative of order 1, 2 or 3. Odd orders zero the Nyquist mode,
/// whose derivative has no real-valued representative on the grid.
Field derivative(const Field& f, int order);

/// f - f_xx.
Field helmholtz(const Field& f);

/// The unique periodic u with u - u_xx = f (mode-wise division by 1 + k^2).
Field helmholtz_inverse(const Field& f);

/// Trapezoid rule (L/n) * sum f_j; spectrally accurate for smooth periodic f.
double quadrature(const Field& f);

/// Pointwise product a*b under the given product rule.
Field multiply(const Field& a, const Field& b, ProductRule rule = ProductRule::pointwise);

/// Fraction of spectral energy carried by modes with |m| > n/3, in [0, 1].
/// Used as an under-resolution indicator.
double spectral_tail_fraction(const Field& f);

}  // namespace geoch
