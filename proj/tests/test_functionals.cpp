#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "kato/closed_forms.hpp"
#include "kato/errors.hpp"
#include "kato/experiments.hpp"
#include "kato/functionals.hpp"

using namespace kato;

namespace {

const GridSpec grid{60.0, 4096, GridKind::line};

SampledField field(const std::string& id, double scale = 1.0) { return sample(grid, make_line_data(id, scale).f); }

QuadratureSpec quad() {
  QuadratureSpec q;
  q.grid = grid;
  q.time = TimeSpec{60.0, 32, TimeRule::gauss_legendre};
  return q;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("density of odd data") {
  const SpectralField F = forward_transform(field("odd-gaussian"));
  CHECK(std::abs(time_integrated_density_1d(F, 0.0, 0.0, 2.0)) < 1e-14);
  // exact solution x e^{-x^2/(1+4it)} (1+4it)^{-3/2}, integrated over t
  CHECK(close(time_integrated_density_1d(F, 1.0, 0.0, 2.0), 0.15999701864135223, 1e-9));
  CHECK(close(time_integrated_density_1d(F, 0.5, 0.0, 2.0), 0.090597307375884541, 1e-9));
}

TEST_CASE("density agrees with time-stepped integration of |phi(x, t)|^2") {
  // wide enough that nothing wraps around before t = 40; the |phi|^2 ~ x^2 / (64 t^3)
  // tail beyond the horizon is below 1e-4 of the total
  const GridSpec wide{1024.0, 65536, GridKind::line};
  const SampledField f = sample(wide, make_line_data("odd-gaussian").f);
  const SpectralField F = forward_transform(f);
  const TimeSpec time{40.0, 20, TimeRule::gauss_legendre};
  const std::size_t j = wide.origin_index() + static_cast<std::size_t>(std::lround(1.0 / wide.spacing()));
  const double x = wide.position(j);
  double acc = 0.0;
  for (const auto& node : time.nodes()) acc += node.weight * std::norm(inverse_transform(evolve(F, node.t, 2.0)).values[j]);
  CHECK(close(acc, time_integrated_density_1d(forward_transform(field("odd-gaussian")), x, 0.0, 2.0), 2e-4));
}

TEST_CASE("density with a weight non-integrable at xi = 0 is rejected") {
  const SpectralField F = forward_transform(field("even-gaussian"));
  CHECK_THROWS_AS(time_integrated_density_1d(F, 0.3, 0.0, 2.0), RangeError);
  CHECK_NOTHROW(time_integrated_density_1d(forward_transform(field("odd-gaussian")), 0.3, 0.0, 2.0));
}

TEST_CASE("density profile is non-negative and bounded for alpha = (beta - 1)/2") {
  std::vector<double> xs;
  for (int i = -300; i <= 300; ++i) xs.push_back(0.02 * i);
  for (const char* id : {"gaussian", "odd-gaussian", "mixed", "hermite3"}) {
    const LineData d = make_line_data(id);
    const SpectralField F = forward_transform(sample(grid, d.f));
    for (double beta : {1.5, 2.0, 3.0}) {
      const DensityProfile p = density_profile(F, xs, 0.5 * (beta - 1.0), beta);
      for (double v : p.density) {
        CHECK(v >= -1e-14);
        CHECK(v <= 2.0 / beta * d.norm_sq * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("sup density") {
  const LineData d = make_line_data("gaussian");
  const SpectralField F = forward_transform(sample(grid, d.f));
  std::vector<double> scan;
  for (int i = -400; i <= 400; ++i) scan.push_back(0.02 * i);
  const SupResult s = sup_density(F, 2.0, scan);
  CHECK(close(s.value, d.norm_sq, 1e-12));  // even data attains the bound at x = 0
  CHECK(s.argmax == 0.0);
  // far from the origin the cross term has decayed: D -> ||phi_0||^2 / 2
  const double far[] = {7.5};
  CHECK(close(density_profile(F, far, 0.5, 2.0).density[0], 0.5 * d.norm_sq, 1e-12));

  const LineData o = make_line_data("odd-gaussian");
  const SupResult so = sup_density(forward_transform(sample(grid, o.f)), 2.0, scan);
  CHECK(so.argmax != 0.0);
  const LineData o2 = make_line_data("odd-gaussian", 2.0);
  std::vector<double> half_scan;
  for (double x : scan) half_scan.push_back(0.5 * x);
  const SupResult s2 = sup_density(forward_transform(sample(grid, o2.f)), 2.0, half_scan);
  CHECK(close(s2.value, so.value, 1e-9));
  CHECK(std::abs(s2.argmax) == 0.5 * std::abs(so.argmax));

  CHECK_THROWS_AS(sup_density(F, 0.0, scan), RangeError);
  CHECK_THROWS_AS(sup_density(F, 2.0, std::span<const double>{}), RangeError);
}

TEST_CASE("fourier path reproduces the constant exactly") {
  for (auto [a, b] : {std::pair{0.0, 2.0}, {0.0, 1.5}, {0.0, 1.2}, {0.25, 2.0}}) {
    const SampledField f = field("odd-gaussian");
    const FunctionalResult r = weighted_spacetime_integral_fourier(forward_transform(f), {1, a, b});
    CHECK(r.path == Path::fourier);
    CHECK(close(r.value / f.norm_sq(), kato_constant_1d(a, b), 1e-10));
    CHECK(r.value >= 0.0);
  }
  const SampledField zero = sample(grid, [](double) { return cplx(0.0, 0.0); });
  CHECK(weighted_spacetime_integral_fourier(forward_transform(zero), {1, 0.0, 2.0}).value == 0.0);
  CHECK_THROWS_AS(weighted_spacetime_integral_fourier(forward_transform(field("mixed")), {1, 0.0, 2.0}), ParityError);
}

TEST_CASE("scaling invariance of the normalized integral") {
  for (double lambda : {0.5, 2.0, 4.0}) {
    const SampledField f = field("odd-gaussian", lambda);
    const double r = weighted_spacetime_integral_fourier(forward_transform(f), {1, 0.0, 1.5}).value / f.norm_sq();
    CHECK(close(r, kato_constant_1d(0.0, 1.5), 1e-9));
  }
  const LineData base = make_line_data("odd-gaussian");
  const double r1 = weighted_spacetime_integral_direct(field("odd-gaussian"), {1, 0.0, 1.5}, quad()).value;
  const double r2 = weighted_spacetime_integral_direct(field("odd-gaussian", 2.0), {1, 0.0, 1.5}, quad()).value;
  CHECK(close(r2, r1, 1e-2));
  CHECK(close(r1 / base.norm_sq, kato_constant_1d(0.0, 1.5), 1e-2));
}

TEST_CASE("direct and fourier paths agree") {
  for (const char* id : {"odd-gaussian", "hermite3"}) {
    const SampledField f = field(id);
    const DispersionParams p{1, 0.0, 2.0};
    const FunctionalResult d = weighted_spacetime_integral_direct(f, p, quad());
    const FunctionalResult w = weighted_spacetime_integral_fourier(forward_transform(f), p);
    CHECK(d.path == Path::direct);
    CHECK(d.ladder.size() == 3);
    CHECK(std::abs(d.value - w.value) <= d.tail_estimate + w.tail_estimate + 1e-2 * w.value);
    CHECK(close(d.value, w.value, 1e-3));
  }
}

TEST_CASE("direct path edge cases") {
  const SampledField zero = sample(grid, [](double) { return cplx(0.0, 0.0); });
  CHECK(weighted_spacetime_integral_direct(zero, {1, 0.0, 2.0}, quad()).value == 0.0);
  QuadratureSpec q = quad();
  q.time.horizon = 10.0;
  q.time.steps = 8;
  CHECK_THROWS_AS(weighted_spacetime_integral_direct(field("even-gaussian"), {1, 0.0, 2.0}, q), DivergenceWarning);
  q.horizon_fractions = {0.3, 1.0};
  CHECK_THROWS_AS(weighted_spacetime_integral_direct(field("odd-gaussian"), {1, 0.0, 2.0}, q), RangeError);
  CHECK_THROWS_AS(weighted_spacetime_integral_direct(field("odd-gaussian"), {2, 0.0, 2.0}, quad()), DimensionError);
}

TEST_CASE("radial reduction in three dimensions") {
  const GridSpec rg{12.0, 4096, GridKind::radial};
  const DispersionParams p{3, 0.0, 2.0};
  const RadialProfile g0 = make_radial_profile(0, rg);
  const double norm0 = radial_profile_norm_sq(g0, 3);
  CHECK(close(norm0, std::pow(M_PI, 1.5), 1e-12));
  const double c0 = radial_reduction_integral(g0, 0, p).value / norm0;
  CHECK(close(c0, M_PI, 1e-10));
  const RadialProfile g1 = make_radial_profile(1, rg);
  const double c1 = radial_reduction_integral(g1, 1, p).value / radial_profile_norm_sq(g1, 3);
  CHECK(close(c1, M_PI / 3.0, 1e-10));
  for (int l = 1; l <= 6; ++l) {
    const RadialProfile g = make_radial_profile(l, rg);
    CHECK(radial_reduction_integral(g, l, p).value / radial_profile_norm_sq(g, 3) < c0);
  }
  RadialProfile zero{std::vector<cplx>(rg.points), rg};
  CHECK(radial_reduction_integral(zero, 0, p).value == 0.0);
  CHECK_THROWS_AS(radial_reduction_integral(g0, 0, {4, 0.0, 2.0}), UnsupportedDimension);
}

TEST_CASE("radial constant agrees with the 1D simulation of u = r psi") {
  // For beta = 2 a radial solution psi(r, t) gives an odd 1D solution u = x psi(|x|, t)
  // with the same normalized weighted integral.
  const SampledField u = sample(grid, [](double x) { return cplx(x * std::exp(-0.5 * x * x), 0.0); });
  const double ratio = weighted_spacetime_integral_direct(u, {1, 0.0, 2.0}, quad()).value / u.norm_sq();
  const GridSpec rg{12.0, 4096, GridKind::radial};
  const RadialProfile g0 = make_radial_profile(0, rg);
  const double radial = radial_reduction_integral(g0, 0, {3, 0.0, 2.0}).value / radial_profile_norm_sq(g0, 3);
  CHECK(close(ratio, radial, 1e-2));
}

TEST_CASE("divergence probe") {
  const GridSpec fine{60.0, 32768, GridKind::line};
  const TimeSpec time{10.0, 16, TimeRule::gauss_legendre};
  const std::size_t ladder[] = {4, 8, 16, 32};
  const SampledField even = sample(fine, make_line_data("even-gaussian").f);
  const ProbeResult r = divergence_probe(even, {1, 0.0, 2.0}, time, ladder);
  CHECK_FALSE(r.converged);
  CHECK(std::abs(r.slope + 1.0) < 0.1);
  CHECK(r.epsilons.size() == 4);

  const SampledField odd = sample(fine, make_line_data("odd-gaussian").f);
  const ProbeResult ro = divergence_probe(odd, {1, 0.0, 2.0}, time, ladder);
  CHECK(ro.converged);
  CHECK(ro.slope == 0.0);

  const std::size_t short_ladder[] = {4, 8};
  CHECK_THROWS_AS(divergence_probe(even, {1, 0.0, 2.0}, time, short_ladder), FitError);
}

TEST_CASE("ladder sums do not depend on the thread count") {
  const GridSpec small{30.0, 1024, GridKind::line};
  const SampledField f = sample(small, make_line_data("hermite3").f);
  const TimeSpec time{5.0, 4, TimeRule::gauss_legendre};
  const std::size_t cuts[] = {1, 2, 4};
  const double horizons[] = {2.5, 5.0};
  setenv("KATO_LAB_THREADS", "1", 1);
  const SpacetimeLadder serial = spacetime_ladder(f, {1, 0.0, 2.0}, time, cuts, horizons);
  setenv("KATO_LAB_THREADS", "4", 1);
  const SpacetimeLadder threaded = spacetime_ladder(f, {1, 0.0, 2.0}, time, cuts, horizons);
  unsetenv("KATO_LAB_THREADS");
  CHECK(serial.sums == threaded.sums);
  CHECK(serial.origin_density == threaded.origin_density);
}
