#include "kato/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "kato/errors.hpp"

namespace kato {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n < 2) throw RangeError("Gauss-Legendre rule needs at least 2 nodes");
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                        std::size_t order) {
  const auto& rule = gauss_legendre(order);
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * width;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * acc;
  }
  return total;
}

double integrate_endpoint_singular(const std::function<double(double, double)>& f, double a, double b,
                                   double rel_tol) {
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  // Boost hands over the complement relative to the nearer endpoint of
  // [-1, 1]; map it back to a distance in the caller's interval.
  auto mapped = [&](double u, double uc) {
    const double x = mid + half * u;
    const double dist = half * std::abs(uc);
    return f(x, dist);
  };
  return half * integrator.integrate(mapped, -1.0, 1.0, rel_tol);
}

double oscillatory_power_tail(double p, double k, double x0, Trig kind, int terms) {
  // int_X^inf e^{ikx} x^{-p} dx = (i/k) e^{ikX} X^{-p} sum_m (p)_m (-i/(kX))^m
  const std::complex<double> i(0.0, 1.0);
  const double kx = k * x0;
  std::complex<double> series = 0.0;
  std::complex<double> term = 1.0;
  for (int m = 0; m < terms; ++m) {
    series += term;
    term *= -(p + m) * i / kx;
  }
  const std::complex<double> value = (i / k) * std::exp(i * kx) * std::pow(x0, -p) * series;
  return kind == Trig::cosine ? value.real() : value.imag();
}

double oscillatory_power_tail_bound(double p, double k, double x0, int terms) {
  double poch = 1.0;
  for (int m = 0; m < terms; ++m) poch *= (p + m);
  // Remainder is (p)_m k^{-m} times int_X^inf e^{ikx} x^{-p-m} dx, and one
  // more integration by parts bounds that integral by 2 X^{-p-m} / k.
  return 2.0 * poch * std::pow(x0, -p - terms) / std::pow(k, terms + 1);
}

}  // namespace kato
