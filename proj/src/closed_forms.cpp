#include "kato/closed_forms.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "kato/errors.hpp"
#include "kato/params.hpp"
#include "kato/quadrature.hpp"

namespace kato {

namespace {

constexpr double pi = std::numbers::pi;

constexpr int lanczos_g = 7;
constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x) with the argument reduced first, so values near integers keep
// their relative accuracy.
double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  if (std::abs(r) <= 0.25) return std::sin(pi * r);
  if (r > 0.75) return std::sin(pi * (1.0 - r));
  if (r < -0.75) return -std::sin(pi * (1.0 + r));
  return r > 0 ? std::cos(pi * (r - 0.5)) : -std::cos(pi * (r + 0.5));
}

double lanczos(double x) {
  const double z = x - 1.0;
  double acc = lanczos_coeffs[0];
  for (int i = 1; i < lanczos_g + 2; ++i) acc += lanczos_coeffs[i] / (z + i);
  const double t = z + lanczos_g + 0.5;
  // t^{z+1/2} split in two factors to delay overflow.
  const double half_pow = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * pi) * half_pow * (half_pow * std::exp(-t)) * acc;
}

std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// int_0^inf r^a e^{-r^2/2} dr for a > -1.
double gaussian_moment_quadrature(double a) {
  const double head = integrate_endpoint_singular(
      [a](double r, double dist) {
        const double rr = r < 0.5 ? dist : r;
        return std::pow(rr, a) * std::exp(-0.5 * rr * rr);
      },
      0.0, 1.0);
  const double body = integrate_panels([a](double r) { return std::pow(r, a) * std::exp(-0.5 * r * r); }, 1.0,
                                       40.0, 78);
  return head + body;
}

// Number of 2 pi periods before switching to the asymptotic tail.
double tail_start(double p, double target) {
  double x = 8.0 * pi;
  while (oscillatory_power_tail_bound(p, 1.0, x) > target) x *= 1.5;
  return 2.0 * pi * std::ceil(x / (2.0 * pi));
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw RangeError("gamma_fn argument must be finite");
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("Gamma has a pole at " + std::to_string(x));
  }
  if (x < 0.5) return pi / (sin_pi(x) * lanczos(1.0 - x));
  return lanczos(x);
}

double sphere_area(int m) {
  if (m < 0) throw RangeError("sphere dimension must be >= 0");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(pi, h) / gamma_fn(h);
}

double weight_coefficient(double s) {
  if (!(s > 1.0 && s <= 2.0)) throw RangeError("weight integral needs 1 < s <= 2, got s = " + std::to_string(s));
  const double u = 2.0 - s;
  // Gamma(u) sin(u pi/2) -> pi/2 as u -> 0+.
  const double factor = std::abs(u) < 1e-9 ? 0.5 * pi : gamma_fn(u) * std::sin(0.5 * u * pi);
  return std::pow(2.0, s) * factor / (s - 1.0);
}

double kato_constant_1d(double alpha, double beta) {
  const double s = beta - 2.0 * alpha;
  if (!(beta > 0.0)) throw RangeError("kato_constant_1d needs beta > 0");
  if (!(s > 1.0 && s <= 2.0)) throw RangeError("kato_constant_1d needs 1 < β−2α <= 2, got " + std::to_string(s));
  return weight_coefficient(s) / beta;
}

double weight_integral(double s, double xi) {
  const double w = weight_coefficient(s);
  if (xi == 0.0) return 0.0;
  return w * std::pow(std::abs(xi), s - 1.0);
}

double weight_integral_oracle(double s, double xi) {
  if (!(s > 1.0 && s <= 2.0)) throw RangeError("weight integral needs 1 < s <= 2, got s = " + std::to_string(s));
  if (xi == 0.0) return 0.0;
  const double k = 2.0 * std::abs(xi);

  // 2 k^{s-1} int_0^inf (1 - cos y) y^{-s} dy
  const double head = integrate_endpoint_singular(
      [s](double y, double dist) {
        const double yy = y < pi ? dist : y;
        // 2 sin^2(y/2) y^{-s} = y^{2-s} sinc^2(y/2) / 2
        const double sinc = yy == 0.0 ? 1.0 : std::sin(0.5 * yy) / (0.5 * yy);
        return 0.5 * sinc * sinc * std::pow(yy, 2.0 - s);
      },
      0.0, 2.0 * pi);
  const double x_far = tail_start(s, 1e-14);
  const auto periods = static_cast<std::size_t>(std::llround(x_far / (2.0 * pi))) - 1;
  const double body = integrate_panels(
      [s](double y) {
        const double half = std::sin(0.5 * y);
        return 2.0 * half * half * std::pow(y, -s);
      },
      2.0 * pi, x_far, periods);
  const double tail = std::pow(x_far, 1.0 - s) / (s - 1.0) - oscillatory_power_tail(s, 1.0, x_far, Trig::cosine);
  return 2.0 * std::pow(k, s - 1.0) * (head + body + tail);
}

double riesz_constant(int n, double s) {
  const double dn = static_cast<double>(n);
  if (n < 1) throw RangeError("riesz_constant needs n >= 1");
  if (!(s > 0.0)) throw RangeError("riesz_constant needs s > 0");
  if (s == dn) throw RangeError("|x|^{-n} is not a tempered distribution (s = n)");
  if (!(s < dn + 2.0)) throw RangeError("riesz_constant needs s < n + 2");
  return std::pow(2.0, dn - s) * std::pow(pi, 0.5 * dn) * gamma_fn(0.5 * (dn - s)) / gamma_fn(0.5 * s);
}

double riesz_constant_oracle(int n, double s) {
  const double dn = static_cast<double>(n);
  if (n == 3 && s > 1.0 && s < 3.0) {
    // 4 pi int_0^inf r^{1-s} sin r dr
    const double p = s - 1.0;
    const double head = integrate_endpoint_singular(
        [p](double r, double dist) {
          const double rr = r < pi ? dist : r;
          return std::sin(rr) * std::pow(rr, -p);
        },
        0.0, 2.0 * pi);
    const double x_far = tail_start(p, 1e-14);
    const auto periods = static_cast<std::size_t>(std::llround(x_far / (2.0 * pi))) - 1;
    const double body =
        integrate_panels([p](double r) { return std::sin(r) * std::pow(r, -p); }, 2.0 * pi, x_far, periods);
    const double tail = oscillatory_power_tail(p, 1.0, x_far, Trig::sine);
    return 4.0 * pi * (head + body + tail);
  }
  if (n == 1 && s > 1.0 && s <= 2.0) {
    // int (1 - cos x) |x|^{-s} dx = -c(1, s), the finite part pairing with 1 - e^{ix}.
    return -weight_integral_oracle(s, 0.5);
  }
  if (s > 0.0 && s < dn) {
    return std::pow(2.0 * pi, 0.5 * dn) * gaussian_moment_quadrature(dn - 1.0 - s) /
           gaussian_moment_quadrature(s - 1.0);
  }
  throw RangeError("no quadrature route for riesz_constant at this (n, s)");
}

double sphere_pair_integral(int n, double gamma) {
  if (n < 2) throw RangeError("sphere_pair_integral needs n >= 2");
  const double dn = static_cast<double>(n);
  if (!(gamma < dn - 1.0)) throw RangeError("sphere pair integral diverges for gamma >= n - 1");
  const double a = dn - 2.0 - gamma;
  const double b = 0.5 * (dn - 3.0);
  // theta-integral after u = sin(theta/2):
  // 2^{n-1-gamma} int_0^1 u^{n-2-gamma} (1-u^2)^{(n-3)/2} du
  const double u_integral = integrate_endpoint_singular(
      [a, b](double u, double dist) {
        if (u < 0.5) return std::pow(dist, a) * std::pow(1.0 - dist * dist, b);
        return std::pow(u, a) * std::pow(dist * (2.0 - dist), b);
      },
      0.0, 1.0, 1e-14);
  return sphere_area(n - 1) * sphere_area(n - 2) * std::pow(2.0, dn - 1.0 - gamma) * u_integral;
}

double sphere_pair_closed_form(int n, double gamma) {
  if (n < 2) throw RangeError("sphere_pair_integral needs n >= 2");
  const double dn = static_cast<double>(n);
  if (!(gamma < dn - 1.0)) throw RangeError("sphere pair integral diverges for gamma >= n - 1");
  const double x = 0.5 * (dn - 1.0 - gamma);
  const double y = 0.5 * (dn - 1.0);
  const double beta_fn = gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y);
  return sphere_area(n - 1) * sphere_area(n - 2) * std::pow(2.0, dn - 2.0 - gamma) * beta_fn;
}

namespace {

void check_funk_hecke(int n, double gamma, int l) {
  if (n != 3) throw RangeError("funk_hecke_eigenvalue supports n = 3 only");
  if (!(gamma < 2.0)) throw RangeError("funk_hecke_eigenvalue needs gamma < 2");
  if (l < 0) throw RangeError("harmonic degree must be >= 0");
}

}  // namespace

double funk_hecke_eigenvalue(int n, double gamma, int l) {
  check_funk_hecke(n, gamma, l);
  // v = 1 - u keeps the kernel singularity at an exact endpoint.
  return integrate_endpoint_singular(
      [gamma, l](double v, double dist) {
        const double vv = v < 1.0 ? dist : v;
        return std::pow(2.0 * vv, -0.5 * gamma) * std::legendre(static_cast<unsigned>(l), 1.0 - vv);
      },
      0.0, 2.0, 1e-14);
}

double funk_hecke_closed_form(int n, double gamma, int l) {
  check_funk_hecke(n, gamma, l);
  const double h = 0.5 * gamma;
  double prod = 1.0;
  for (int k = 0; k < l; ++k) prod *= (k + h);
  return std::pow(2.0, 1.0 - gamma) * gamma_fn(1.0 - h) * prod / gamma_fn(2.0 - h + l);
}

double kato_constant_nd(int n, double alpha, double beta) {
  const DispersionParams p = validate_params(n, alpha, beta, Mode::thm1);
  const double c = riesz_constant(n, p.s());
  const double pair = sphere_pair_integral(n, p.gamma());
  return std::pow(2.0 * pi, 1.0 - n) * c * pair / (beta * sphere_area(n - 1));
}

double kato_constant_nd_closed_form(int n, double alpha, double beta) {
  const DispersionParams p = validate_params(n, alpha, beta, Mode::thm1);
  const double c = riesz_constant(n, p.s());
  const double pair = sphere_pair_closed_form(n, p.gamma());
  return std::pow(2.0 * pi, 1.0 - n) * c * pair / (beta * sphere_area(n - 1));
}

ConstantsReport make_report(std::string name, double formula_value, double oracle_value) {
  const double denom = std::max(std::abs(formula_value), std::numeric_limits<double>::min());
  return {std::move(name), formula_value, oracle_value, std::abs(formula_value - oracle_value) / denom};
}

std::vector<ConstantsReport> constants_reports() {
  std::vector<ConstantsReport> rows;

  // Pinned high-precision reference values.
  rows.push_back(make_report("gamma_fn(x=0.5)", gamma_fn(0.5), std::sqrt(pi)));
  rows.push_back(make_report("gamma_fn(x=0.3)", gamma_fn(0.3), 2.9915689876875907446));
  rows.push_back(make_report("gamma_fn(x=-0.25)", gamma_fn(-0.25), -4.9016668098607105805));

  const std::array<std::pair<double, double>, 5> pairs = {{{0.0, 1.2}, {0.0, 1.5}, {0.0, 1.8}, {0.0, 2.0}, {0.25, 2.0}}};
  for (const auto& [alpha, beta] : pairs) {
    const double s = beta - 2.0 * alpha;
    rows.push_back(make_report(label("kato_constant_1d(alpha=%g,beta=%g)", alpha, beta),
                               kato_constant_1d(alpha, beta), weight_integral_oracle(s, 1.0) / beta));
  }

  for (double s : {1.2, 1.5, 1.8, 2.0}) {
    for (double xi : {0.5, 1.0, 2.0}) {
      rows.push_back(make_report(label("weight_integral(s=%g,xi=%g)", s, xi), weight_integral(s, xi),
                                 weight_integral_oracle(s, xi)));
    }
  }

  const std::array<std::pair<int, double>, 6> riesz = {{{3, 2.0}, {3, 1.5}, {1, 1.5}, {2, 1.5}, {4, 2.0}, {5, 2.0}}};
  for (const auto& [n, s] : riesz) {
    rows.push_back(make_report(label("riesz_constant(n=%g,s=%g)", n, s), riesz_constant(n, s),
                               riesz_constant_oracle(n, s)));
  }

  const std::array<std::pair<int, double>, 5> spheres = {{{3, 1.0}, {3, 0.0}, {2, 0.5}, {4, 2.0}, {5, 3.0}}};
  for (const auto& [n, g] : spheres) {
    rows.push_back(make_report(label("sphere_pair_integral(n=%g,gamma=%g)", n, g), sphere_pair_integral(n, g),
                               sphere_pair_closed_form(n, g)));
  }

  for (int l = 0; l <= 3; ++l) {
    rows.push_back(make_report(label("funk_hecke_eigenvalue(n=3,gamma=1,l=%g)", l), funk_hecke_eigenvalue(3, 1.0, l),
                               funk_hecke_closed_form(3, 1.0, l)));
  }
  rows.push_back(make_report("funk_hecke_eigenvalue(n=3,gamma=0.5,l=2)", funk_hecke_eigenvalue(3, 0.5, 2),
                             funk_hecke_closed_form(3, 0.5, 2)));

  for (int n : {3, 4, 5}) {
    rows.push_back(make_report(label("kato_constant_nd(n=%g,alpha=0,beta=2)", n), kato_constant_nd(n, 0.0, 2.0),
                               pi / (n - 2.0)));
  }
  rows.push_back(make_report("kato_constant_nd(n=3,alpha=0.2,beta=2)", kato_constant_nd(3, 0.2, 2.0),
                             kato_constant_nd_closed_form(3, 0.2, 2.0)));
  return rows;
}

}  // namespace kato
