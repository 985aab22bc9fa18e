#pragma once

#include <string>
#include <vector>

namespace kato {

/// Gamma function: Lanczos (g = 7, 9 terms) for x >= 1/2, reflection below.
/// Throws PoleError at non-positive integers.
double gamma_fn(double x);

/// Surface area of the unit sphere S^{m} in R^{m+1}; |S^0| = 2.
double sphere_area(int m);

/// W(s) in  int_R (1 - cos 2 x xi) |x|^{-s} dx = W(s) |xi|^{s-1},  1 < s <= 2.
/// At s = 2 the factor Gamma(2 - s) sin((2 - s) pi / 2) takes its limit pi/2.
double weight_coefficient(double s);

/// Exact constant K(alpha, beta) = W(beta - 2 alpha) / beta of the 1D odd-data
/// identity. Requires 1 < s <= 2 and beta > 0.
double kato_constant_1d(double alpha, double beta);

/// Closed form W(s) |xi|^{s-1}.
double weight_integral(double s, double xi);

/// Independent value of the same integral by oscillatory quadrature:
/// Gauss panels on (0, X] plus the integrated-by-parts tail beyond X.
double weight_integral_oracle(double s, double xi);

/// c(n, s) in  int_{R^n} e^{i x.k} |x|^{-s} dx = c(n, s) |k|^{s-n}, i.e.
/// 2^{n-s} pi^{n/2} Gamma((n-s)/2) / Gamma(s/2). Valid for 0 < s < n; for
/// n < s < n + 2 the value is that of the finite-part distribution (negative).
double riesz_constant(int n, double s);

/// Quadrature route to c(n, s): radial sine transform for n = 3 and s > 1,
/// the 1D weight integral for n = 1 and 1 < s <= 2, otherwise the Gaussian
/// pairing  <|x|^{-s}, e^{-|x|^2/2}>  evaluated on both sides.
double riesz_constant_oracle(int n, double s);

/// Double sphere integral of |w1 - w2|^{-gamma} over S^{n-1} x S^{n-1},
/// by quadrature in u = sin(theta/2). Requires n >= 2, gamma < n - 1.
double sphere_pair_integral(int n, double gamma);

/// Same integral through the Beta function.
double sphere_pair_closed_form(int n, double gamma);

/// lambda_l = int_{-1}^{1} (2 - 2u)^{-gamma/2} P_l(u) du for n = 3, by
/// quadrature. lambda_0 is the eigenvalue on radial data.
double funk_hecke_eigenvalue(int n, double gamma, int l);

/// Closed form of lambda_l:
/// 2^{1-gamma} Gamma(1-gamma/2) prod_{k<l} (k + gamma/2) / Gamma(2 - gamma/2 + l).
double funk_hecke_closed_form(int n, double gamma, int l);

/// C_{n,alpha,beta} = (2 pi)^{1-n} c(n, s) S2(n, gamma) / (beta |S^{n-1}|),
/// the equality constant for radial data (n >= 2).
double kato_constant_nd(int n, double alpha, double beta);

/// Same constant with every factor in closed form.
double kato_constant_nd_closed_form(int n, double alpha, double beta);

struct ConstantsReport {
  std::string name;
  double formula_value = 0.0;
  double oracle_value = 0.0;
  double rel_residual = 0.0;
};

ConstantsReport make_report(std::string name, double formula_value, double oracle_value);

/// Every closed form paired with its quadrature oracle, at the standard
/// checkpoints.
std::vector<ConstantsReport> constants_reports();

}  // namespace kato
