#pragma once

#include <span>

namespace kato {

struct Extrapolation {
  double value = 0.0;
  // |finest ladder value - extrapolated value|
  double error = 0.0;
};

/// Richardson elimination on a ladder ordered coarse to fine, where each
/// step shrinks the discretization parameter h by `ratio` and the error
/// expands as sum_j c_j h^{orders[j]}. Uses the last orders.size() + 1
/// ladder values. Throws FitError on ladders whose increments change sign.
Extrapolation richardson(std::span<const double> values, std::span<const double> orders, double ratio = 2.0);

}  // namespace kato
