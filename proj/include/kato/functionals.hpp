#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kato/params.hpp"
#include "kato/spectral.hpp"

namespace kato {

enum class Path { direct, fourier, radial };

std::string to_string(Path path);

/// Discretization of a weighted space-time integral.
struct QuadratureSpec {
  GridSpec grid;
  TimeSpec time;
  // Cells |j| < origin_cutoff around x = 0 are left out of the weighted sum;
  // the direct path runs the ladder {c, 2c, 4c}.
  std::size_t origin_cutoff = 1;
  // Truncation horizons as fractions of time.horizon, coarse to fine, each
  // twice the previous one.
  std::vector<double> horizon_fractions{0.25, 0.5, 1.0};

  void validate() const;
  std::string summary() const;
};

struct FunctionalResult {
  double value = 0.0;
  Path path = Path::direct;
  QuadratureSpec quad;
  double tail_estimate = 0.0;
  // Per-horizon values behind `value` (direct path only).
  std::vector<double> ladder;
};

/// D(x_i) = int | |grad|^alpha phi(x_i, t) |^2 dt on a set of points.
struct DensityProfile {
  std::vector<double> x;
  std::vector<double> density;
};

/// D(x) = 1/(2 pi |beta|) int [ |f(xi)|^2 + Re(e^{2 i x xi} f(xi) conj f(-xi)) ]
///        |xi|^{-(beta - 1 - 2 alpha)} dxi,  f = phi_hat_0.
/// The grid sum carries the leading lattice correction for the |xi|^{-e}
/// weight at xi = 0. Throws RangeError when e >= 1 and the sum is not stable
/// under halving the frequency resolution.
double time_integrated_density_1d(const SpectralField& spectral0, double x, double alpha, double beta);

DensityProfile density_profile(const SpectralField& spectral0, std::span<const double> xs, double alpha,
                               double beta);

/// Raw ladder of truncated weighted sums from the time-stepped evolution.
struct SpacetimeLadder {
  std::vector<std::size_t> cutoffs;
  std::vector<double> horizons;
  // sums[h][c]: time quadrature over |t| <= horizons[h] of
  // sum_{|j| >= cutoffs[c]} | |grad|^alpha phi(x_j, t) |^2 |x_j|^{-s} dx
  std::vector<std::vector<double>> sums;
  // int |(|grad|^alpha phi)(0, t)|^2 dt over the full horizon.
  double origin_density = 0.0;
  std::size_t padded_points = 0;
  double padded_extent = 0.0;
};

/// Evolves field0 exactly in Fourier space on a zero-padded copy of its grid
/// (wide enough that no mass wraps back to the origin before the horizon)
/// and accumulates the weighted sums at the time nodes.
SpacetimeLadder spacetime_ladder(const SampledField& field0, const DispersionParams& params, const TimeSpec& time,
                                 std::span<const std::size_t> cutoffs, std::span<const double> horizons);

/// int int | |grad|^alpha phi |^2 / |x|^s dx dt by simulation. The origin
/// cells are eliminated with the exact lattice shape of the odd-data error
/// and the time truncation is removed by Richardson extrapolation over the
/// horizon ladder. Throws DivergenceWarning for data with an even part.
FunctionalResult weighted_spacetime_integral_direct(const SampledField& field0, const DispersionParams& params,
                                                    const QuadratureSpec& quad);

/// Same integral from the Fourier-side formula
/// 1/(2 pi beta) int |f(xi)|^2 |xi|^{1-s} W(s) |xi|^{s-1} dxi. Odd data only.
FunctionalResult weighted_spacetime_integral_fourier(const SpectralField& spectral0, const DispersionParams& params);

/// Radial samples g(r_j) of separated data phi_hat_0(r w) = g(r) Y_l(w) with
/// Y_l unit-normalized on the sphere.
struct RadialProfile {
  std::vector<cplx> values;
  GridSpec grid;
};

/// ||phi_0||^2 = (2 pi)^{-n} int r^{n-1} |g|^2 dr.
double radial_profile_norm_sq(const RadialProfile& profile, int n);

/// Weighted integral for separated data, reduced to the radial integral and
/// the Funk-Hecke eigenvalue of the sphere kernel (n = 3 only).
FunctionalResult radial_reduction_integral(const RadialProfile& profile, int l, const DispersionParams& params);

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// sup over the scan of D(x) with alpha = (beta - 1)/2.
SupResult sup_density(const SpectralField& spectral0, double beta, std::span<const double> scan);

struct ProbeResult {
  // d log S / d log eps as eps -> 0: -(divergence exponent), or 0 when the
  // truncated integral converges.
  double slope = 0.0;
  // q in the fit S(eps) = A + B eps^{-q}.
  double exponent = 0.0;
  bool converged = false;
  std::vector<double> epsilons;
  std::vector<double> values;
};

/// Fits the cutoff dependence of the direct weighted integral over a ladder
/// of origin cutoffs (in cells, at least three).
ProbeResult divergence_probe(const SampledField& field0, const DispersionParams& params, const TimeSpec& time,
                             std::span<const std::size_t> ladder);

}  // namespace kato
