// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "symfeat/errors.hpp"

namespace symfeat {

/// Refined maximum-point estimate from three samples: fits the unique
/// quadratic c2*(x-x_star)^2 + c1*(x-x_star) + c0 through the points and
/// returns its stationary point x_star - c1/(2*c2). Falls back to x_star when
/// the fit is degenerate or not concave (c2 >= 0). Abscissae must be strictly
/// increasing.
inline double parabola_refine(double x_minus, double x_star, double x_plus,
                              double y_minus, double y_star, double y_plus) {
  if (!(x_minus < x_star && x_star < x_plus))
    throw UsageError("parabola_refine: abscissae must be strictly increasing");
  const double h1 = x_minus - x_star;  // < 0
  const double h2 = x_plus - x_star;   // > 0
  const double d1 = y_minus - y_star;
  const double d2 = y_plus - y_star;
  const double det = h1 * h2 * (h1 - h2);
  const double c2 = (d1 * h2 - d2 * h1) / det;
  const double c1 = (d2 * h1 * h1 - d1 * h2 * h2) / det;
  if (!(c2 < 0.0)) return x_star;
  return x_star - c1 / (2.0 * c2);
}

}  // namespace symfeat
