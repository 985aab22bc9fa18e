// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kato/closed_forms.hpp"
#include "kato/experiments.hpp"
#include "kato/functionals.hpp"
#include "kato/spectral.hpp"

using namespace kato;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

QuadratureSpec desk_quad() {
  QuadratureSpec q;
  q.grid = GridSpec{60.0, 4096, GridKind::line};
  q.time = TimeSpec{60.0, 32, TimeRule::gauss_legendre};
  return q;
}

Verdict identity_beta2() {
  Verdict v;
  const LineData d = make_line_data("odd-gaussian");
  const QuadratureSpec q = desk_quad();
  const FunctionalResult r = weighted_spacetime_integral_direct(sample(q.grid, d.f), {1, 0.0, 2.0}, q);
  const double target = M_PI * 0.25 * std::sqrt(M_PI / 2.0);
  v.require(rel(r.value / d.norm_sq, M_PI) < 1e-2, fmt("ratio %.8f vs pi (rel %.2e)", r.value / d.norm_sq, rel(r.value / d.norm_sq, M_PI)));
  v.require(rel(r.value, target) < 1e-2, fmt("integral %.8f vs %.8f", r.value, target));
  return v;
}

Verdict identity_sweep() {
  Verdict v;
  const QuadratureSpec q = desk_quad();
  const LineData d = make_line_data("odd-gaussian");
  const SampledField f = sample(q.grid, d.f);
  const SpectralField F = forward_transform(f);
  for (auto [a, b] : {std::pair{0.0, 1.2}, {0.0, 1.5}, {0.0, 1.8}, {0.0, 2.0}, {0.25, 2.0}}) {
    const DispersionParams p{1, a, b};
    const double k = kato_constant_1d(a, b);
    const double fourier = weighted_spacetime_integral_fourier(F, p).value / f.norm_sq();
    const double direct = weighted_spacetime_integral_direct(f, p, q).value / d.norm_sq;
    v.require(rel(fourier, k) < 1e-9 && rel(direct, k) < 1e-2,
              fmt("(%g,%g)", a, b) + fmt(" fourier %.1e direct %.1e", rel(fourier, k), rel(direct, k)));
  }
  return v;
}

Verdict closed_form_oracles() {
  Verdict v;
  double worst = 0.0;
  for (double s : {1.2, 1.5, 1.8, 2.0}) {
    for (double xi : {0.5, 1.0, 2.0}) worst = std::max(worst, rel(weight_integral(s, xi), weight_integral_oracle(s, xi)));
  }
  v.require(worst < 1e-6, fmt("weight_integral worst residual %.1e", worst));
  v.require(rel(riesz_constant(3, 2.0), 2.0 * M_PI * M_PI) < 1e-8, "riesz_constant(3,2) = 2 pi^2");
  v.require(rel(sphere_pair_integral(3, 1.0), 16.0 * M_PI * M_PI) < 1e-8, "sphere_pair_integral(3,1) = 16 pi^2");
  v.require(rel(funk_hecke_eigenvalue(3, 1.0, 0), 2.0) < 1e-8, "lambda_0 = 2");
  v.require(rel(funk_hecke_eigenvalue(3, 1.0, 1), 2.0 / 3.0) < 1e-8, "lambda_1 = 2/3");
  return v;
}

Verdict nd_anchors() {
  Verdict v;
  for (int n : {3, 4, 5}) {
    const double c = kato_constant_nd(n, 0.0, 2.0);
    v.require(rel(c, M_PI / (n - 2)) < 1e-8, fmt("n=%g: %.15f (rel %.1e)", n, c, rel(c, M_PI / (n - 2))));
  }
  return v;
}

Verdict dichotomy() {
  Verdict v;
  const GridSpec rg{12.0, 4096, GridKind::radial};
  const DispersionParams p{3, 0.0, 2.0};
  const double c = kato_constant_nd(3, 0.0, 2.0);
  const RadialProfile g0 = make_radial_profile(0, rg);
  const RadialProfile g1 = make_radial_profile(1, rg);
  const double r0 = radial_reduction_integral(g0, 0, p).value / radial_profile_norm_sq(g0, 3);
  const double r1 = radial_reduction_integral(g1, 1, p).value / radial_profile_norm_sq(g1, 3);
  v.require(rel(r0, c) < 1e-6, fmt("l=0 ratio %.12f vs C %.12f", r0, c));
  v.require(rel(r1, c / 3.0) < 1e-6 && r1 < r0, fmt("l=1 ratio %.12f vs C/3 %.12f", r1, c / 3.0));
  return v;
}

Verdict sup_bound() {
  Verdict v;
  const GridSpec g{60.0, 4096, GridKind::line};
  std::vector<double> scan;
  for (int i = -1000; i <= 1000; ++i) scan.push_back(0.01 * i);
  for (const char* id : {"gaussian", "odd-gaussian"}) {
    const LineData d = make_line_data(id);
    const SpectralField F = forward_transform(sample(g, d.f));
    for (double beta : {1.5, 2.0, 3.0}) {
      const double bound = 2.0 / beta * d.norm_sq;
      const SupResult s = sup_density(F, beta, scan);
      v.require(s.value <= bound * (1.0 + 1e-3), fmt("beta=%g sup/bound %.9f", beta, s.value / bound) + " " + id);
      if (d.parity == ParityTag::odd) {
        const double d0 = time_integrated_density_1d(F, 0.0, 0.5 * (beta - 1.0), beta);
        v.require(std::abs(d0) < 1e-10 * d.norm_sq, fmt("beta=%g odd D(0) = %.1e", beta, d0));
      }
    }
  }
  return v;
}

Verdict negative_control() {
  Verdict v;
  const GridSpec g{60.0, 32768, GridKind::line};
  const TimeSpec time{10.0, 16, TimeRule::gauss_legendre};
  const std::size_t ladder[] = {4, 8, 16, 32};
  const SampledField f = sample(g, make_line_data("even-gaussian").f);
  for (double s : {1.5, 2.0}) {
    const ProbeResult r = divergence_probe(f, {1, 0.0, s}, time, ladder);
    v.require(std::abs(r.slope + (s - 1.0)) < 0.1, fmt("s=%g slope %.4f (expected %.1f)", s, r.slope, -(s - 1.0)));
  }
  return v;
}

Verdict engine_invariants() {
  Verdict v;
  const GridSpec g{80.0, 2048, GridKind::line};
  const SampledField f = sample(g, [](double x) { return cplx(std::exp(-0.5 * x * x), x * std::exp(-x * x)); });
  const SpectralField F = forward_transform(f);
  v.require(rel(F.norm_sq(), 2.0 * M_PI * f.norm_sq()) < 1e-10, fmt("plancherel %.1e", rel(F.norm_sq(), 2.0 * M_PI * f.norm_sq())));
  const SampledField back = inverse_transform(F);
  double rt = 0.0;
  for (std::size_t j = 0; j < g.points; ++j) rt = std::max(rt, std::abs(back.values[j] - f.values[j]));
  v.require(rt < 1e-12, fmt("round trip %.1e", rt));
  double unit = 0.0, group = 0.0;
  for (double beta : {0.5, 1.5, 2.0, 3.0}) {
    const SpectralField a = evolve(F, 2.3, beta);
    for (std::size_t k = 0; k < g.points; ++k) unit = std::max(unit, std::abs(std::abs(a.values[k]) - std::abs(F.values[k])));
    const SpectralField ab = evolve(evolve(F, 1.1, beta), 1.2, beta);
    for (std::size_t k = 0; k < g.points; ++k) group = std::max(group, std::abs(ab.values[k] - a.values[k]));
  }
  v.require(unit <= 1e-15, fmt("unitarity %.1e", unit));
  v.require(group < 1e-13, fmt("group law %.1e", group));
  const SampledField g0 = sample(g, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
  const SpectralField G = forward_transform(g0);
  double oracle = 0.0;
  for (double t : {0.5, 1.0, 4.0}) {
    const SampledField phi = inverse_transform(evolve(G, t, 2.0));
    for (std::size_t j = 0; j < g.points; ++j) oracle = std::max(oracle, std::abs(phi.values[j] - gaussian_oracle(g.position(j), t)));
  }
  v.require(oracle < 1e-8, fmt("gaussian oracle %.1e", oracle));
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "1D identity alpha=0 beta=2, direct path", 120.0, identity_beta2},
      {2, "1D identity sweep, fourier and direct paths", 600.0, identity_sweep},
      {3, "closed forms against quadrature oracles", 60.0, closed_form_oracles},
      {4, "n-dimensional constant anchors pi/(n-2)", 60.0, nd_anchors},
      {5, "3D harmonic dichotomy l=0 vs l=1", 60.0, dichotomy},
      {6, "sup of the time-integrated density", 120.0, sup_bound},
      {7, "even-data divergence slope", 300.0, negative_control},
      {8, "spectral engine invariants", 30.0, engine_invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) v.require(false, fmt("runtime %.1fs over %.0fs budget", secs, c.budget_s));
    if (!v.pass) ++failures;
    std::printf("%s criterion %d: %s [%.2fs] %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
