#include "kato/richardson.hpp"

#include <cmath>
#include <vector>

#include "kato/errors.hpp"

namespace kato {

Extrapolation richardson(std::span<const double> values, std::span<const double> orders, double ratio) {
  if (values.size() < 2) throw FitError("richardson needs at least two ladder values");
  if (orders.empty()) throw FitError("richardson needs at least one error order");
  if (orders.size() + 1 > values.size()) throw FitError("more error orders than the ladder can eliminate");
  if (!(ratio > 1.0)) throw FitError("refinement ratio must exceed 1");

  int sign = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int si = (d > 0) - (d < 0);
    if (si == 0) continue;
    if (sign != 0 && si != sign) throw FitError("ladder is not monotone");
    sign = si;
  }

  std::vector<double> table(values.end() - static_cast<std::ptrdiff_t>(orders.size() + 1), values.end());
  for (double p : orders) {
    const double f = std::pow(ratio, p);
    for (std::size_t i = 0; i + 1 < table.size(); ++i) table[i] = (f * table[i + 1] - table[i]) / (f - 1.0);
    table.pop_back();
  }
  return {table.front(), std::abs(values.back() - table.front())};
}

}  // namespace kato
