#include "kato/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "kato/errors.hpp"

namespace kato {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

void check_line_field(std::size_t size, const GridSpec& grid) {
  if (grid.kind != GridKind::line) throw GridError("spectral fields need a line grid");
  grid.validate();
  if (size != grid.points) {
    throw GridError("field has " + std::to_string(size) + " samples, grid declares " +
                    std::to_string(grid.points));
  }
}

// Sign (-1)^{k - N/2} that converts between the monotone frequency layout
// and the DFT layout for grids starting at x = -L.
double shift_sign(std::size_t k, std::size_t n) { return ((k + n / 2) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

void SampledField::validate() const { check_line_field(values.size(), grid); }

double SampledField::norm_sq() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * grid.spacing();
}

void SpectralField::validate() const { check_line_field(values.size(), grid); }

double SpectralField::norm_sq() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * grid.frequency_spacing();
}

SpectralEngine::SpectralEngine(std::size_t n) : n_(n) {
  std::vector<cplx> a(n), b(n);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  if (!forward_plan_ || !backward_plan_) throw GridError("FFTW could not plan length " + std::to_string(n));
}

SpectralEngine::~SpectralEngine() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void SpectralEngine::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw GridError("transform length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in.data()), as_fftw(out.data()));
}

void SpectralEngine::backward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw GridError("transform length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(in.data()), as_fftw(out.data()));
}

std::shared_ptr<const SpectralEngine> engine_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const SpectralEngine>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_shared<const SpectralEngine>(n)).first;
  return it->second;
}

SpectralField forward_transform(const SampledField& field) {
  field.validate();
  const std::size_t n = field.grid.points;
  const double dx = field.grid.spacing();
  std::vector<cplx> dft(n);
  engine_for(n)->forward(field.values, dft);
  SpectralField out{std::vector<cplx>(n), field.grid};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = shift_sign(k, n) * dx * dft[(k + n / 2) % n];
  }
  return out;
}

SampledField inverse_transform(const SpectralField& spectral) {
  spectral.validate();
  const std::size_t n = spectral.grid.points;
  std::vector<cplx> dft(n);
  for (std::size_t k = 0; k < n; ++k) dft[(k + n / 2) % n] = shift_sign(k, n) * spectral.values[k];
  SampledField out{std::vector<cplx>(n), spectral.grid};
  engine_for(n)->backward(dft, out.values);
  // dxi / (2 pi) = 1 / (N dx)
  const double scale = 1.0 / (static_cast<double>(n) * spectral.grid.spacing());
  for (auto& v : out.values) v *= scale;
  return out;
}

SpectralField evolve(const SpectralField& spectral0, double t, double beta) {
  spectral0.validate();
  SpectralField out = spectral0;
  const std::size_t n = out.values.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = std::abs(out.grid.frequency(k));
    if (xi == 0.0 && beta <= 0.0) continue;
    const double phase = -std::pow(xi, beta) * t;
    out.values[k] *= std::polar(1.0, phase);
  }
  return out;
}

SpectralField fractional_derivative(const SpectralField& spectral, double alpha) {
  spectral.validate();
  if (alpha < 0.0 || !std::isfinite(alpha)) throw RangeError("fractional derivative order must be >= 0");
  SpectralField out = spectral;
  if (alpha == 0.0) return out;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] *= std::pow(std::abs(out.grid.frequency(k)), alpha);
  }
  return out;
}

cplx gaussian_oracle(double x, double t) {
  const cplx z(1.0, 2.0 * t);
  return std::exp(-x * x / (2.0 * z)) / std::sqrt(z);
}

}  // namespace kato
