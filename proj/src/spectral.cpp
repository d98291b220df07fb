#include "geoch/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "geoch/errors.hpp"

namespace geoch::spectral {
namespace {

// FFTW planning is not thread-safe, execution is. Plans are created once per
// size under a lock and then shared; FFTW_UNALIGNED lets them run on any
// std::vector storage through the new-array execute interface.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~PlanPair() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[n];
  if (!slot) {
    auto plans = std::make_unique<PlanPair>();
    const int size = static_cast<int>(n);
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->r2c = fftw_plan_dft_r2c_1d(size, real, cplx, flags);
    plans->c2r = fftw_plan_dft_c2r_1d(size, cplx, real, flags | FFTW_DESTROY_INPUT);
    fftw_free(cplx);
    fftw_free(real);
    if (!plans->r2c || !plans->c2r) {
      throw std::runtime_error("FFTW failed to plan a transform of size " + std::to_string(n));
    }
    slot = std::move(plans);
  }
  return *slot;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plans_for(n).r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(std::vector<std::complex<double>> half_spectrum, std::size_t n) {
  if (half_spectrum.size() != n / 2 + 1) {
    throw ValidationError("half spectrum size does not match transform length");
  }
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(half_spectrum.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> derivative(std::span<const double> samples, double length, int order) {
  if (order < 1 || order > 3) {
    throw ValidationError("derivative order must be 1, 2 or 3, got " + std::to_string(order));
  }
  const std::size_t n = samples.size();
  auto coeffs = forward(samples);
  const std::size_t nyquist = n / 2;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const double k = kTwoPi * static_cast<double>(m) / length;
    std::complex<double> symbol(1.0, 0.0);
    for (int i = 0; i < order; ++i) symbol *= std::complex<double>(0.0, k);
    coeffs[m] *= symbol;
  }
  if (order % 2 == 1) coeffs[nyquist] = 0.0;
  return inverse(std::move(coeffs), n);
}

}  // namespace geoch::spectral

namespace geoch {
namespace {

// Multiplies every mode by a real, even symbol of the wavenumber.
template <class Symbol>
Field apply_even_multiplier(const Field& f, Symbol symbol) {
  const Grid& g = f.grid();
  auto coeffs = spectral::forward(f.values());
  for (std::size_t m = 0; m < coeffs.size(); ++m) coeffs[m] *= symbol(g.wavenumber(static_cast<long>(m)));
  return Field(g, spectral::inverse(std::move(coeffs), g.n()));
}

}  // namespace

Field derivative(const Field& f, int order) {
  return Field(f.grid(), spectral::derivative(f.values(), f.grid().length(), order));
}

Field helmholtz(const Field& f) {
  return apply_even_multiplier(f, [](double k) { return 1.0 + k * k; });
}

Field helmholtz_inverse(const Field& f) {
  return apply_even_multiplier(f, [](double k) { return 1.0 / (1.0 + k * k); });
}

double quadrature(const Field& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().spacing();
}

Field multiply(const Field& a, const Field& b, ProductRule rule) {
  require_same_grid(a, b);
  const std::size_t n = a.size();
  if (rule == ProductRule::pointwise) {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * b[j];
    return Field(a.grid(), std::move(out));
  }

  // 3/2-rule: zero-pad to m = 3n/2 points, multiply, truncate back to n.
  // The Nyquist mode of the inputs is dropped so the padded signal stays real.
  const std::size_t m = 3 * n / 2;
  auto pad = [&](const Field& f) {
    auto coeffs = spectral::forward(f.values());
    std::vector<std::complex<double>> padded(m / 2 + 1, 0.0);
    const double scale = static_cast<double>(m) / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) padded[k] = coeffs[k] * scale;
    return spectral::inverse(std::move(padded), m);
  };
  const auto fa = pad(a);
  const auto fb = pad(b);
  std::vector<double> prod(m);
  for (std::size_t j = 0; j < m; ++j) prod[j] = fa[j] * fb[j];
  auto coeffs = spectral::forward(prod);
  std::vector<std::complex<double>> truncated(n / 2 + 1, 0.0);
  const double scale = static_cast<double>(n) / static_cast<double>(m);
  for (std::size_t k = 0; k < n / 2; ++k) truncated[k] = coeffs[k] * scale;
  return Field(a.grid(), spectral::inverse(std::move(truncated), n));
}

double spectral_tail_fraction(const Field& f) {
  const auto coeffs = spectral::forward(f.values());
  const std::size_t cutoff = f.size() / 3;
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    // Interior modes stand for the +m and -m pair.
    const double weight = (m == 0 || m == coeffs.size() - 1) ? 1.0 : 2.0;
    const double e = weight * std::norm(coeffs[m]);
    total += e;
    if (m > cutoff) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace geoch
