#include "doctest.h"

#include <cmath>

#include "kato/errors.hpp"
#include "kato/spectral.hpp"

using namespace kato;

namespace {

const GridSpec grid{80.0, 2048, GridKind::line};

SampledField gaussian() {
  return sample(grid, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("gaussian transform matches sqrt(2 pi) e^{-xi^2/2}") {
  const SpectralField f = forward_transform(gaussian());
  double err = 0.0;
  for (std::size_t k = 0; k < grid.points; ++k) {
    const double xi = grid.frequency(k);
    err = std::max(err, std::abs(f.values[k] - std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi)));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("transform of x e^{-x^2} is -i (sqrt(pi)/2) xi e^{-xi^2/4}") {
  const SampledField odd = sample(grid, [](double x) { return cplx(x * std::exp(-x * x), 0.0); });
  const SpectralField f = forward_transform(odd);
  double err = 0.0;
  for (std::size_t k = 0; k < grid.points; ++k) {
    const double xi = grid.frequency(k);
    const cplx expect(0.0, -0.5 * std::sqrt(M_PI) * xi * std::exp(-0.25 * xi * xi));
    err = std::max(err, std::abs(f.values[k] - expect));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("plancherel and round trip") {
  const SampledField f = sample(grid, [](double x) { return cplx(std::exp(-0.3 * x * x), x * std::exp(-x * x)); });
  const SpectralField F = forward_transform(f);
  CHECK(std::abs(F.norm_sq() - 2.0 * M_PI * f.norm_sq()) <= 1e-10 * F.norm_sq());
  const SampledField back = inverse_transform(F);
  CHECK(max_diff(back.values, f.values) < 1e-12);
}

TEST_CASE("evolution is unitary and satisfies the group law") {
  const SpectralField F = forward_transform(gaussian());
  for (double beta : {0.5, 1.5, 2.0, 3.0}) {
    const SpectralField a = evolve(F, 3.7, beta);
    for (std::size_t k = 0; k < F.values.size(); ++k) {
      CHECK(std::abs(std::abs(a.values[k]) - std::abs(F.values[k])) <= 4e-16 * std::abs(F.values[k]));
    }
    const SpectralField two_steps = evolve(evolve(F, 1.25, beta), 0.5, beta);
    const SpectralField one_step = evolve(F, 1.75, beta);
    CHECK(max_diff(two_steps.values, one_step.values) < 1e-13);
  }
}

TEST_CASE("free evolution matches the gaussian oracle") {
  const SpectralField F = forward_transform(gaussian());
  for (double t : {0.5, 1.0, 3.0}) {
    const SampledField phi = inverse_transform(evolve(F, t, 2.0));
    double err = 0.0;
    for (std::size_t j = 0; j < grid.points; ++j) {
      err = std::max(err, std::abs(phi.values[j] - gaussian_oracle(grid.position(j), t)));
    }
    CHECK(err < 1e-8);
  }
  CHECK(std::abs(gaussian_oracle(0.0, 0.0) - 1.0) == 0.0);
}

TEST_CASE("fractional derivative of order 2 is minus the second derivative") {
  const SampledField d2 = inverse_transform(fractional_derivative(forward_transform(gaussian()), 2.0));
  double err = 0.0;
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double x = grid.position(j);
    err = std::max(err, std::abs(d2.values[j] - (1.0 - x * x) * std::exp(-0.5 * x * x)));
  }
  CHECK(err < 1e-10);
  const SpectralField F = forward_transform(gaussian());
  CHECK(max_diff(fractional_derivative(F, 0.0).values, F.values) == 0.0);
  CHECK_THROWS_AS(fractional_derivative(F, -0.5), RangeError);
}

TEST_CASE("field validation") {
  SampledField bad{std::vector<cplx>(10), grid};
  CHECK_THROWS_AS(bad.validate(), GridError);
  CHECK_THROWS_AS(forward_transform(bad), GridError);
}
