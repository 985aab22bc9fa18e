#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kato {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; nodes from Newton iteration on P_n.
const GaussRule& gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                        std::size_t order = 20);

/// Double-exponential quadrature on [a, b]; tolerates integrable algebraic
/// singularities at either endpoint. The integrand receives the abscissa and
/// its distance to the nearer endpoint (exact, no cancellation).
double integrate_endpoint_singular(const std::function<double(double, double)>& f, double a, double b,
                                   double rel_tol = 1e-13);

/// Integral of x^{-p} cos(k x) (kind = cosine) or x^{-p} sin(k x) over
/// [X, inf), from the asymptotic integration-by-parts series with `terms`
/// terms. Requires k X large compared with p + terms.
enum class Trig { cosine, sine };
double oscillatory_power_tail(double p, double k, double x0, Trig kind, int terms = 4);

/// Bound on the neglected part of the series above.
double oscillatory_power_tail_bound(double p, double k, double x0, int terms = 4);

}  // namespace kato
