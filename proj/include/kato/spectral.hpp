#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kato/params.hpp"

namespace kato {

/// Physical-space samples phi(x_j) on a line grid.
struct SampledField {
  std::vector<cplx> values;
  GridSpec grid;

  void validate() const;
  /// Continuum L2 norm squared, sum |f|^2 dx.
  double norm_sq() const;
};

/// Frequency samples phi_hat(xi_k), xi ordered from -xi_max upward.
struct SpectralField {
  std::vector<cplx> values;
  GridSpec grid;

  void validate() const;
  /// Continuum L2 norm squared, sum |f_hat|^2 dxi.
  double norm_sq() const;
};

/// Shared FFTW plan pair for one transform length. Plans are created under
/// a global lock and never mutated afterwards, so one engine can be used
/// from any number of threads.
class SpectralEngine {
 public:
  explicit SpectralEngine(std::size_t n);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  std::size_t size() const { return n_; }

  /// Unnormalized DFT, out_m = sum_j e^{-2 pi i j m / n} in_j.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// Unnormalized inverse DFT, out_j = sum_m e^{+2 pi i j m / n} in_m.
  void backward(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t n_;
  void* forward_plan_;
  void* backward_plan_;
};

/// Engine for transform length n, shared by all callers.
std::shared_ptr<const SpectralEngine> engine_for(std::size_t n);

/// Samples f on the grid.
template <typename F>
SampledField sample(const GridSpec& grid, F&& f) {
  grid.validate();
  SampledField out{std::vector<cplx>(grid.points), grid};
  for (std::size_t j = 0; j < grid.points; ++j) out.values[j] = f(grid.position(j));
  return out;
}

/// f_hat(xi) = int e^{-i x xi} f(x) dx, discretized with weight dx.
SpectralField forward_transform(const SampledField& field);

/// f(x) = (1/2pi) int e^{i x xi} f_hat(xi) dxi, discretized with weight dxi.
SampledField inverse_transform(const SpectralField& spectral);

/// Multiplies by e^{-i |xi|^beta t}. For beta <= 0 the xi = 0 mode is left
/// unchanged.
SpectralField evolve(const SpectralField& spectral0, double t, double beta);

/// Multiplies by |xi|^alpha; the xi = 0 mode keeps weight 1 only when
/// alpha = 0.
SpectralField fractional_derivative(const SpectralField& spectral, double alpha);

/// Free Schrodinger (beta = 2) solution from phi_0 = exp(-x^2/2):
/// (1 + 2it)^{-1/2} exp(-x^2 / (2 (1 + 2it))).
cplx gaussian_oracle(double x, double t);

}  // namespace kato
