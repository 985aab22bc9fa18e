#include "kato/params.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kato/errors.hpp"
#include "kato/quadrature.hpp"

namespace kato {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::thm1: return "thm1";
    case Mode::thm2: return "thm2";
    case Mode::thm3: return "thm3";
  }
  return "?";
}

Mode mode_from_string(const std::string& text) {
  if (text == "thm1") return Mode::thm1;
  if (text == "thm2") return Mode::thm2;
  if (text == "thm3") return Mode::thm3;
  throw ConfigError("unknown mode '" + text + "'");
}

namespace {

std::string describe(double alpha, double beta) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha = " << alpha << ", beta = " << beta << ", β−2α = " << beta - 2.0 * alpha << ")";
  return os.str();
}

}  // namespace

DispersionParams validate_params(int n, double alpha, double beta, Mode mode) {
  if (n < 1) throw RangeError("dimension n must be >= 1, got " + std::to_string(n));
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw RangeError("alpha and beta must be finite " + describe(alpha, beta));
  }
  const DispersionParams p{n, alpha, beta};
  const double s = p.s();

  switch (mode) {
    case Mode::thm1:
      if (!(s > 1.0)) throw RangeError("β−2α>1 violated " + describe(alpha, beta));
      if (!(s < static_cast<double>(n))) {
        throw RangeError("β−2α<n violated for n = " + std::to_string(n) + " " + describe(alpha, beta));
      }
      break;
    case Mode::thm2:
      if (n != 1) throw DimensionError("thm2 mode requires n = 1, got n = " + std::to_string(n));
      if (!(s > 1.0)) throw RangeError("β−2α>1 violated " + describe(alpha, beta));
      if (!(s <= 2.0)) throw RangeError("β−2α<=2 violated " + describe(alpha, beta));
      break;
    case Mode::thm3:
      if (n != 1) throw DimensionError("thm3 mode requires n = 1, got n = " + std::to_string(n));
      if (!(beta > -1.0)) throw RangeError("β>−1 violated " + describe(alpha, beta));
      if (beta == 0.0) throw RangeError("β=0 has no dispersion " + describe(alpha, beta));
      if (std::abs(alpha - 0.5 * (beta - 1.0)) > 1e-12 * std::max(1.0, std::abs(beta))) {
        throw RangeError("α=(β−1)/2 violated " + describe(alpha, beta));
      }
      break;
  }
  return p;
}

void GridSpec::validate() const {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw GridError("grid extent must be positive");
  if (points < 2 || !std::has_single_bit(points)) {
    throw GridError("grid point count must be a power of two >= 2, got " + std::to_string(points));
  }
}

double GridSpec::spacing() const {
  return kind == GridKind::line ? 2.0 * extent / static_cast<double>(points)
                                : extent / static_cast<double>(points);
}

double GridSpec::position(std::size_t j) const {
  const double h = spacing();
  if (kind == GridKind::radial) return static_cast<double>(j + 1) * h;
  return (static_cast<double>(j) - static_cast<double>(points / 2)) * h;
}

double GridSpec::frequency_spacing() const { return std::numbers::pi / extent; }

double GridSpec::frequency(std::size_t k) const {
  return (static_cast<double>(k) - static_cast<double>(points / 2)) * frequency_spacing();
}

double GridSpec::nyquist() const { return std::numbers::pi / spacing(); }

void TimeSpec::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw RangeError("time horizon must be positive");
  if (steps < 2) throw RangeError("time quadrature needs at least 2 steps");
}

std::vector<TimeNode> TimeSpec::nodes() const {
  validate();
  std::vector<TimeNode> out;
  const double width = horizon / static_cast<double>(steps);
  if (rule == TimeRule::trapezoid) {
    // Symmetric composite trapezoid on [-T, T].
    const std::size_t count = 2 * steps + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = -horizon + static_cast<double>(i) * width;
      const double w = (i == 0 || i + 1 == count) ? 0.5 * width : width;
      out.push_back({t, w});
    }
    return out;
  }
  const auto& rule16 = gauss_legendre(panel_nodes);
  out.reserve(2 * steps * panel_nodes);
  for (std::size_t p = 0; p < 2 * steps; ++p) {
    const double a = -horizon + static_cast<double>(p) * width;
    const double mid = a + 0.5 * width;
    for (std::size_t i = 0; i < panel_nodes; ++i) {
      out.push_back({mid + 0.5 * width * rule16.nodes[i], 0.5 * width * rule16.weights[i]});
    }
  }
  return out;
}

std::string to_string(ParityTag tag) {
  switch (tag) {
    case ParityTag::odd: return "odd";
    case ParityTag::even: return "even";
    case ParityTag::mixed: return "mixed";
  }
  return "?";
}

namespace {

void require_symmetric(std::span<const cplx> values, const GridSpec& grid) {
  if (grid.kind != GridKind::line) throw GridError("parity needs a line grid symmetric about 0");
  grid.validate();
  if (values.size() != grid.points) {
    throw GridError("sample count " + std::to_string(values.size()) + " does not match grid size " +
                    std::to_string(grid.points));
  }
}

double norm_sq(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

}  // namespace

ParityParts parity_split(std::span<const cplx> values, const GridSpec& grid) {
  require_symmetric(values, grid);
  ParityParts parts;
  parts.odd.resize(values.size());
  parts.even.resize(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const cplx mirrored = values[grid.mirror_index(j)];
    parts.odd[j] = 0.5 * (values[j] - mirrored);
    parts.even[j] = 0.5 * (values[j] + mirrored);
  }
  return parts;
}

Parity classify_parity(std::span<const cplx> values, const GridSpec& grid, double tol) {
  const ParityParts parts = parity_split(values, grid);
  const double total = norm_sq(values);
  if (total == 0.0) return {ParityTag::odd, 0.0};
  const double odd_rel = std::sqrt(norm_sq(parts.odd) / total);
  const double even_rel = std::sqrt(norm_sq(parts.even) / total);
  if (even_rel < tol) return {ParityTag::odd, even_rel};
  if (odd_rel < tol) return {ParityTag::even, odd_rel};
  return {ParityTag::mixed, std::min(odd_rel, even_rel)};
}

}  // namespace kato
