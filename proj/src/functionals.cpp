#include "kato/functionals.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kato/closed_forms.hpp"
#include "kato/errors.hpp"
#include "kato/parallel.hpp"
#include "kato/richardson.hpp"

namespace kato {

namespace {

constexpr double pi = std::numbers::pi;

// Relative level below which spectral content counts as absent when sizing
// the padded grid.
constexpr double band_floor = 1e-14;

}  // namespace

std::string to_string(Path path) {
  switch (path) {
    case Path::direct: return "direct";
    case Path::fourier: return "fourier";
    case Path::radial: return "radial";
  }
  return "?";
}

void QuadratureSpec::validate() const {
  grid.validate();
  time.validate();
  if (origin_cutoff < 1) throw RangeError("origin cutoff must be at least one cell");
  if (horizon_fractions.empty()) throw RangeError("horizon ladder is empty");
  for (std::size_t i = 0; i < horizon_fractions.size(); ++i) {
    const double f = horizon_fractions[i];
    if (!(f > 0.0 && f <= 1.0)) throw RangeError("horizon fractions must lie in (0, 1]");
    if (i > 0 && std::abs(f - 2.0 * horizon_fractions[i - 1]) > 1e-12) {
      throw RangeError("horizon fractions must double along the ladder");
    }
    const double panels = f * static_cast<double>(time.steps);
    if (std::abs(panels - std::round(panels)) > 1e-9) {
      throw RangeError("every horizon must fall on a time panel boundary");
    }
  }
  if (std::abs(horizon_fractions.back() - 1.0) > 1e-12) throw RangeError("horizon ladder must end at 1");
}

std::string QuadratureSpec::summary() const {
  std::ostringstream os;
  os << "N=" << grid.points << " L=" << grid.extent << " T=" << time.horizon << " steps=" << time.steps
     << " rule=" << (time.rule == TimeRule::gauss_legendre ? "gauss_legendre" : "trapezoid")
     << " cutoff=" << origin_cutoff;
  return os.str();
}

// ---------------------------------------------------------------------------
// Time-integrated density, Fourier side.

namespace {

double symmetric_weight(const SpectralField& f, std::size_t k, double x) {
  const cplx a = f.values[k];
  const cplx b = f.values[f.grid.mirror_index(k)];
  return 0.5 * (std::norm(a) + std::norm(b)) + (std::polar(1.0, 2.0 * x * f.grid.frequency(k)) * a * std::conj(b)).real();
}

// sum_{k != 0} |xi_k|^{-e} h(xi_k) dxi over every stride-th mode, with the
// generalized Euler-Maclaurin terms for the |xi|^{-e} point at the origin:
//   sum = int + sum_j 2 zeta(e - 2j) h_{2j} dxi^{2j+1-e},  h = sum_j h_{2j} xi^{2j}.
double density_sum(const SpectralField& f, double x, double e, std::size_t stride) {
  const GridSpec& g = f.grid;
  const std::size_t n = f.values.size();
  const std::size_t origin = g.origin_index();
  const double dxi = g.frequency_spacing() * static_cast<double>(stride);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == origin) continue;
    const std::size_t offset = k > origin ? k - origin : origin - k;
    if (offset % stride != 0) continue;
    acc += symmetric_weight(f, k, x) * std::pow(std::abs(g.frequency(k)), -e);
  }
  acc *= dxi;

  // Taylor coefficients c_j = h_{2j} dxi^{2j} from the innermost samples:
  // h(m dxi) = sum_j c_j m^{2j}, solved exactly for m = 0..terms-1.
  constexpr int terms = 5;
  std::array<std::array<double, terms + 1>, terms> a{};
  for (int m = 0; m < terms; ++m) {
    double p = 1.0;
    for (int j = 0; j < terms; ++j, p *= static_cast<double>(m * m)) a[m][j] = p;
    a[m][terms] = symmetric_weight(f, origin + static_cast<std::size_t>(m) * stride, x);
  }
  for (int c = 0; c < terms; ++c) {
    for (int r = c + 1; r < terms; ++r) {
      const double q = a[r][c] / a[c][c];
      for (int k = c; k <= terms; ++k) a[r][k] -= q * a[c][k];
    }
  }
  std::array<double, terms> coeffs{};
  for (int r = terms - 1; r >= 0; --r) {
    double v = a[r][terms];
    for (int k = r + 1; k < terms; ++k) v -= a[r][k] * coeffs[k];
    coeffs[r] = v / a[r][r];
  }
  for (int j = 0; j < terms; ++j) {
    const double z = e - 2.0 * j;
    if (coeffs[j] == 0.0 || std::abs(z - 1.0) < 1e-12) continue;
    acc -= 2.0 * std::riemann_zeta(z) * coeffs[j] * std::pow(dxi, 1.0 - e);
  }
  return acc;
}

// Size of the convergent part of the sum, used as an absolute floor.
double density_scale(const SpectralField& f, double e) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double xi = std::abs(f.grid.frequency(k));
    if (xi >= 1.0) acc += std::norm(f.values[k]) * std::pow(xi, -e);
  }
  return acc * f.grid.frequency_spacing();
}

}  // namespace

double time_integrated_density_1d(const SpectralField& spectral0, double x, double alpha, double beta) {
  spectral0.validate();
  if (beta == 0.0 || !std::isfinite(beta)) throw RangeError("density needs finite nonzero beta");
  const double e = beta - 1.0 - 2.0 * alpha;
  const double fine = density_sum(spectral0, x, e, 1);
  if (e >= 1.0) {
    const double coarse = density_sum(spectral0, x, e, 2);
    if (std::abs(fine - coarse) > 1e-2 * std::abs(fine) + 1e-12 * density_scale(spectral0, e)) {
      throw RangeError("time-integrated density does not converge at xi = 0 (weight exponent " + std::to_string(e) +
                       ")");
    }
  }
  return fine / (2.0 * pi * std::abs(beta));
}

DensityProfile density_profile(const SpectralField& spectral0, std::span<const double> xs, double alpha,
                               double beta) {
  DensityProfile out;
  out.x.assign(xs.begin(), xs.end());
  out.density.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i, std::size_t) {
    out.density[i] = time_integrated_density_1d(spectral0, xs[i], alpha, beta);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Time-stepped evolution.

namespace {

struct NodeSample {
  double full = 0.0;
  std::vector<double> inner;
  double origin = 0.0;
};

double horizon_weight(const TimeSpec& time, const TimeNode& node, double horizon) {
  const double at = std::abs(node.t);
  const double tol = 1e-12 * time.horizon;
  if (time.rule == TimeRule::gauss_legendre) return at < horizon ? node.weight : 0.0;
  const double width = time.horizon / static_cast<double>(time.steps);
  if (at < horizon - tol) return width;
  if (at <= horizon + tol) return 0.5 * width;
  return 0.0;
}

}  // namespace

SpacetimeLadder spacetime_ladder(const SampledField& field0, const DispersionParams& params, const TimeSpec& time,
                                 std::span<const std::size_t> cutoffs, std::span<const double> horizons) {
  field0.validate();
  time.validate();
  if (params.n != 1) throw DimensionError("direct simulation is one-dimensional");
  if (params.alpha < 0.0) throw RangeError("direct path needs alpha >= 0");
  if (cutoffs.empty() || horizons.empty()) throw RangeError("empty ladder");
  const double s = params.s();
  const double beta = params.beta;

  SpacetimeLadder out;
  out.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  out.horizons.assign(horizons.begin(), horizons.end());
  out.sums.assign(horizons.size(), std::vector<double>(cutoffs.size(), 0.0));
  const std::size_t max_cut = *std::max_element(cutoffs.begin(), cutoffs.end());
  if (max_cut < 1) throw RangeError("cutoffs are counted in cells and must be >= 1");

  // Band limit of the data and the fastest group velocity it carries.
  const SpectralField spectral = forward_transform(field0);
  const GridSpec& g0 = field0.grid;
  double peak = 0.0;
  for (std::size_t k = 0; k < spectral.values.size(); ++k) {
    const double xi = std::abs(g0.frequency(k));
    const double a = std::norm(spectral.values[k]) * (params.alpha == 0.0 ? 1.0 : std::pow(xi, 2.0 * params.alpha));
    peak = std::max(peak, a);
  }
  double xi_cut = g0.frequency_spacing();
  for (std::size_t k = 0; k < spectral.values.size(); ++k) {
    const double xi = std::abs(g0.frequency(k));
    const double a = std::norm(spectral.values[k]) * (params.alpha == 0.0 ? 1.0 : std::pow(xi, 2.0 * params.alpha));
    if (a > band_floor * peak) xi_cut = std::max(xi_cut, xi);
  }
  const double speed = std::abs(beta) * std::max(std::pow(xi_cut, beta - 1.0),
                                                 std::pow(g0.frequency_spacing(), beta - 1.0));
  const double t_max = *std::max_element(horizons.begin(), horizons.end());

  const double dx = g0.spacing();
  const double needed = g0.extent + 0.5 * speed * t_max;
  const std::size_t n_pad = std::bit_ceil(std::max<std::size_t>(
      g0.points, static_cast<std::size_t>(std::ceil(2.0 * needed / dx))));
  const GridSpec grid{0.5 * static_cast<double>(n_pad) * dx, n_pad, GridKind::line};
  if (max_cut >= n_pad / 2) throw RangeError("origin cutoff exceeds the grid");
  out.padded_points = n_pad;
  out.padded_extent = grid.extent;
  if (peak == 0.0) return out;

  SampledField padded{std::vector<cplx>(n_pad), grid};
  const std::size_t shift = (n_pad - g0.points) / 2;
  std::copy(field0.values.begin(), field0.values.end(), padded.values.begin() + static_cast<std::ptrdiff_t>(shift));
  const SpectralField base = fractional_derivative(forward_transform(padded), params.alpha);

  // Hot loop works in DFT order: spectrum, dispersion phase rate, weights.
  std::vector<cplx> amplitude(n_pad);
  std::vector<double> omega(n_pad);
  for (std::size_t k = 0; k < n_pad; ++k) {
    const std::size_t m = (k + n_pad / 2) % n_pad;
    const double sign = ((k + n_pad / 2) % 2 == 0) ? 1.0 : -1.0;
    amplitude[m] = sign * base.values[k];
    const double xi = std::abs(grid.frequency(k));
    omega[m] = (xi == 0.0 && beta <= 0.0) ? 0.0 : std::pow(xi, beta);
  }
  const std::size_t origin = grid.origin_index();
  std::vector<double> weight(n_pad, 0.0);
  for (std::size_t j = 0; j < n_pad; ++j) {
    if (j != origin) weight[j] = std::pow(std::abs(grid.position(j)), -s) * dx;
  }
  const double scale = 1.0 / (static_cast<double>(n_pad) * dx);

  const std::vector<TimeNode> nodes = time.nodes();
  std::vector<NodeSample> samples(nodes.size());
  const auto engine = engine_for(n_pad);
  const std::size_t workers = std::min(worker_count(), nodes.size());
  std::vector<std::vector<cplx>> spec_buf(workers, std::vector<cplx>(n_pad));
  std::vector<std::vector<cplx>> phys_buf(workers, std::vector<cplx>(n_pad));

  parallel_for(
      nodes.size(),
      [&](std::size_t i, std::size_t w) {
        const double t = nodes[i].t;
        auto& spec = spec_buf[w];
        auto& phys = phys_buf[w];
        for (std::size_t m = 0; m < n_pad; ++m) spec[m] = amplitude[m] * std::polar(1.0, -omega[m] * t);
        engine->backward(spec, phys);
        NodeSample sample;
        double full = 0.0;
        for (std::size_t j = 0; j < n_pad; ++j) full += std::norm(phys[j]) * weight[j];
        sample.full = full * scale * scale;
        sample.origin = std::norm(phys[origin]) * scale * scale;
        std::vector<double> ring(max_cut, 0.0);  // ring[d] = contribution of |j - origin| = d
        for (std::size_t d = 1; d < max_cut; ++d) {
          ring[d] = (std::norm(phys[origin + d]) + std::norm(phys[origin - d])) * weight[origin + d] * scale * scale;
        }
        sample.inner.resize(cutoffs.size());
        for (std::size_t c = 0; c < cutoffs.size(); ++c) {
          double acc = 0.0;
          for (std::size_t d = 1; d < cutoffs[c]; ++d) acc += ring[d];
          sample.inner[c] = acc;
        }
        samples[i] = std::move(sample);
      },
      workers);

  for (std::size_t h = 0; h < horizons.size(); ++h) {
    for (std::size_t c = 0; c < cutoffs.size(); ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double w = horizon_weight(time, nodes[i], horizons[h]);
        if (w != 0.0) acc += w * (samples[i].full - samples[i].inner[c]);
      }
      out.sums[h][c] = acc;
    }
  }
  double origin_acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) origin_acc += nodes[i].weight * samples[i].origin;
  out.origin_density = origin_acc;
  return out;
}

namespace {

// Lattice shape of the error left by dropping cells |j| < m when the
// integrand behaves like C |x|^{2-s} near the origin:
//   S(m) = I - C dx^{3-s} G(m),  G(m) = 2 [sum_{j=1}^{m-1} j^{2-s} - zeta(s-2)].
double cutoff_shape(std::size_t m, double s, double dx) {
  double acc = 0.0;
  for (std::size_t j = 1; j < m; ++j) acc += std::pow(static_cast<double>(j), 2.0 - s);
  return 2.0 * (acc - std::riemann_zeta(s - 2.0)) * std::pow(dx, 3.0 - s);
}

double eliminate_cutoff(double s_small, double s_large, std::size_t m_small, std::size_t m_large, double s,
                        double dx) {
  const double g_small = cutoff_shape(m_small, s, dx);
  const double g_large = cutoff_shape(m_large, s, dx);
  const double c = (s_small - s_large) / (g_large - g_small);
  return s_small + c * g_small;
}

}  // namespace

FunctionalResult weighted_spacetime_integral_direct(const SampledField& field0, const DispersionParams& params,
                                                    const QuadratureSpec& quad) {
  quad.validate();
  field0.validate();
  if (params.n != 1) throw DimensionError("direct path is one-dimensional");
  const double s = params.s();
  if (!(s > 1.0 && s < 3.0)) throw RangeError("direct path needs 1 < β−2α < 3");

  const std::size_t c = quad.origin_cutoff;
  const std::array<std::size_t, 3> cutoffs{c, 2 * c, 4 * c};
  std::vector<double> horizons;
  for (double f : quad.horizon_fractions) horizons.push_back(f * quad.time.horizon);

  const SpacetimeLadder ladder = spacetime_ladder(field0, params, quad.time, cutoffs, horizons);
  const double dx = field0.grid.spacing();

  FunctionalResult result;
  result.path = Path::direct;
  result.quad = quad;
  if (ladder.sums.empty()) return result;

  std::vector<double> values;
  double cutoff_spread = 0.0;
  for (const auto& row : ladder.sums) {
    const double fine = eliminate_cutoff(row[0], row[1], cutoffs[0], cutoffs[1], s, dx);
    const double coarse = eliminate_cutoff(row[1], row[2], cutoffs[1], cutoffs[2], s, dx);
    values.push_back(fine);
    cutoff_spread = std::abs(fine - coarse);
  }
  result.ladder = values;

  const double at_horizon = values.back();
  if (ladder.origin_density * std::pow(dx, 1.0 - s) > 1e-3 * std::abs(at_horizon)) {
    throw DivergenceWarning("weighted integral does not settle as the origin cutoff shrinks: the data has an even part");
  }

  if (values.size() == 1) {
    result.value = at_horizon;
    result.tail_estimate = cutoff_spread;
    return result;
  }
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) orders.push_back(s - 1.0 + static_cast<double>(i));
  const Extrapolation ex = richardson(values, orders, 2.0);
  result.value = ex.value;
  result.tail_estimate = ex.error + cutoff_spread;
  return result;
}

FunctionalResult weighted_spacetime_integral_fourier(const SpectralField& spectral0, const DispersionParams& params) {
  spectral0.validate();
  if (params.n != 1) throw DimensionError("fourier path is one-dimensional");
  const double s = params.s();
  weight_coefficient(s);  // throws outside 1 < s <= 2
  const Parity parity = classify_parity(spectral0.values, spectral0.grid, 1e-8);
  if (parity.tag != ParityTag::odd) {
    throw ParityError("fourier path needs odd data; even-part defect " + std::to_string(parity.defect));
  }
  const GridSpec& g = spectral0.grid;
  const std::size_t n = spectral0.values.size();
  const std::size_t origin = g.origin_index();
  double acc = 0.0;
  double edge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == origin) continue;
    const double xi = g.frequency(k);
    const double term =
        std::norm(spectral0.values[k]) * std::pow(std::abs(xi), 1.0 - s) * weight_integral(s, xi);
    acc += term;
    if (k < n / 32 || k >= n - n / 32) edge += term;
  }
  const double pref = g.frequency_spacing() / (2.0 * pi * params.beta);
  FunctionalResult result;
  result.path = Path::fourier;
  result.quad.grid = g;
  result.value = pref * acc;
  result.tail_estimate = pref * edge;
  return result;
}

// ---------------------------------------------------------------------------
// Separated data in three dimensions.

namespace {

double radial_moment(const RadialProfile& profile, int n) {
  const GridSpec& g = profile.grid;
  if (g.kind != GridKind::radial) throw GridError("radial profile needs a radial grid");
  g.validate();
  if (profile.values.size() != g.points) throw GridError("radial profile size does not match its grid");
  double acc = 0.0;
  for (std::size_t j = 0; j < g.points; ++j) {
    acc += std::pow(g.position(j), n - 1) * std::norm(profile.values[j]);
  }
  return acc * g.spacing();
}

}  // namespace

double radial_profile_norm_sq(const RadialProfile& profile, int n) {
  return std::pow(2.0 * pi, -n) * radial_moment(profile, n);
}

FunctionalResult radial_reduction_integral(const RadialProfile& profile, int l, const DispersionParams& params) {
  if (params.n != 3) throw UnsupportedDimension("radial reduction is implemented for n = 3");
  const DispersionParams p = validate_params(params.n, params.alpha, params.beta, Mode::thm1);
  const int n = p.n;
  const double lambda = funk_hecke_eigenvalue(n, p.gamma(), l);
  const double prefactor =
      std::pow(2.0 * pi, 1.0 - 2.0 * n) / p.beta * riesz_constant(n, p.s()) * sphere_area(n - 2) * lambda;
  const double moment = radial_moment(profile, n);
  const GridSpec& g = profile.grid;
  const double r_end = g.position(g.points - 1);

  FunctionalResult result;
  result.path = Path::radial;
  result.quad.grid = g;
  result.value = prefactor * moment;
  result.tail_estimate = prefactor * std::pow(r_end, n - 1) * std::norm(profile.values.back()) * r_end;
  return result;
}

// ---------------------------------------------------------------------------

SupResult sup_density(const SpectralField& spectral0, double beta, std::span<const double> scan) {
  const DispersionParams p = validate_params(1, 0.5 * (beta - 1.0), beta, Mode::thm3);
  if (scan.empty()) throw RangeError("sup_density needs a non-empty scan");
  const DensityProfile profile = density_profile(spectral0, scan, p.alpha, p.beta);
  const auto it = std::max_element(profile.density.begin(), profile.density.end());
  const auto idx = static_cast<std::size_t>(it - profile.density.begin());
  return {*it, profile.x[idx]};
}

namespace {

struct PowerFit {
  double q = 0.0;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

PowerFit fit_power(const std::vector<double>& eps, const std::vector<double>& vals, double q) {
  // Linear least squares for A + B eps^{-q}.
  const std::size_t n = eps.size();
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::pow(eps[i], -q);
    s1 += 1;
    sx += x;
    sxx += x * x;
    sy += vals[i];
    sxy += x * vals[i];
  }
  const double det = s1 * sxx - sx * sx;
  PowerFit fit{q, 0.0, 0.0, 0.0};
  if (det == 0.0) {
    fit.residual = std::numeric_limits<double>::infinity();
    return fit;
  }
  fit.b = (s1 * sxy - sx * sy) / det;
  fit.a = (sy - fit.b * sx) / s1;
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = vals[i] - fit.a - fit.b * std::pow(eps[i], -q);
    r += d * d;
  }
  fit.residual = r;
  return fit;
}

}  // namespace

ProbeResult divergence_probe(const SampledField& field0, const DispersionParams& params, const TimeSpec& time,
                             std::span<const std::size_t> ladder) {
  if (ladder.size() < 3) throw FitError("divergence probe needs at least three cutoffs");
  std::vector<std::size_t> cuts(ladder.begin(), ladder.end());
  std::sort(cuts.begin(), cuts.end());
  if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) throw FitError("cutoff ladder has duplicates");

  const std::array<double, 1> horizon{time.horizon};
  const SpacetimeLadder raw = spacetime_ladder(field0, params, time, cuts, horizon);
  const double dx = field0.grid.spacing();

  ProbeResult out;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    // Dropping cells |j| < m approximates the cutoff eps = (m - 1/2) dx.
    out.epsilons.push_back((static_cast<double>(cuts[c]) - 0.5) * dx);
    out.values.push_back(raw.sums.empty() ? 0.0 : raw.sums[0][c]);
  }
  const double scale = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
  if (scale == 0.0) {
    out.converged = true;
    return out;
  }

  // Profile least squares in q: coarse scan, then golden-section refinement.
  PowerFit best{0.0, 0.0, 0.0, std::numeric_limits<double>::infinity()};
  constexpr double q_lo = -4.0, q_hi = 4.0;
  constexpr int scan = 800;
  for (int i = 0; i <= scan; ++i) {
    const double q = q_lo + (q_hi - q_lo) * i / scan;
    if (std::abs(q) < 1e-6) continue;
    const PowerFit f = fit_power(out.epsilons, out.values, q);
    if (f.residual < best.residual) best = f;
  }
  const double step = (q_hi - q_lo) / scan;
  double a = best.q - step, b = best.q + step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c1 = b - phi * (b - a);
    const double c2 = a + phi * (b - a);
    if (fit_power(out.epsilons, out.values, c1).residual < fit_power(out.epsilons, out.values, c2).residual) {
      b = c2;
    } else {
      a = c1;
    }
  }
  const double q = 0.5 * (a + b);
  if (std::abs(q) > 1e-6) {
    const PowerFit refined = fit_power(out.epsilons, out.values, q);
    if (refined.residual <= best.residual) best = refined;
  }
  out.exponent = best.q;
  const bool divergent = best.q > 0.05 && best.b > 0.0;
  out.converged = !divergent;
  out.slope = divergent ? -best.q : 0.0;
  return out;
}

}  // namespace kato
