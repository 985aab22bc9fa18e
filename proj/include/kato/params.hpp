#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kato {

using cplx = std::complex<double>;

/// Which published inequality a parameter triple is checked against.
///   thm1: 1 < s < n (any dimension)
///   thm2: n = 1, 1 < s <= 2 (odd data identity)
///   thm3: n = 1, alpha = (beta - 1)/2, beta > -1 (sup-in-x bound)
enum class Mode { thm1, thm2, thm3 };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& text);

/// Dimension, derivative order and dispersion order. The weight exponent
/// s = beta - 2 alpha and the kernel exponent gamma = n - s are always
/// derived from the triple.
struct DispersionParams {
  int n = 1;
  double alpha = 0.0;
  double beta = 2.0;

  double s() const { return beta - 2.0 * alpha; }
  double gamma() const { return static_cast<double>(n) - s(); }
};

DispersionParams validate_params(int n, double alpha, double beta, Mode mode);

enum class GridKind { line, radial };

/// Uniform sampling grid.
///
/// Line grids hold x_j = -L + j dx, j = 0..N-1, dx = 2L/N, so x = 0 is the
/// sample j = N/2 and the mirror of sample j is sample (N - j) mod N. The
/// matching frequency grid is xi_k = (k - N/2) dxi with dxi = pi/L.
/// Radial grids hold r_j = (j + 1) dr, dr = R/N.
struct GridSpec {
  double extent = 0.0;
  std::size_t points = 0;
  GridKind kind = GridKind::line;

  void validate() const;

  double spacing() const;
  double position(std::size_t j) const;
  std::size_t origin_index() const { return points / 2; }
  std::size_t mirror_index(std::size_t j) const { return (points - j) % points; }

  double frequency_spacing() const;
  double frequency(std::size_t k) const;
  double nyquist() const;
};

enum class TimeRule { trapezoid, gauss_legendre };

struct TimeNode {
  double t;
  double weight;
};

/// Quadrature for the time integral over [-T, T]. `steps` counts panels
/// (Gauss-Legendre, 16 nodes each) or intervals (trapezoid) on each half
/// line; the node set is symmetric about t = 0.
struct TimeSpec {
  double horizon = 60.0;
  std::size_t steps = 32;
  TimeRule rule = TimeRule::gauss_legendre;

  static constexpr std::size_t panel_nodes = 16;

  void validate() const;
  std::vector<TimeNode> nodes() const;
};

enum class ParityTag { odd, even, mixed };

std::string to_string(ParityTag tag);

struct Parity {
  ParityTag tag = ParityTag::mixed;
  // Relative L2 norm of the minority-parity component.
  double defect = 0.0;
};

struct ParityParts {
  std::vector<cplx> odd;
  std::vector<cplx> even;
};

// Parity helpers work on raw samples laid out on a symmetric line grid, so
// the same code serves physical and frequency samples.
ParityParts parity_split(std::span<const cplx> values, const GridSpec& grid);
Parity classify_parity(std::span<const cplx> values, const GridSpec& grid, double tol);

}  // namespace kato
