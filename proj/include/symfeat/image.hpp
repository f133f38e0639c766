// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "symfeat/errors.hpp"

namespace symfeat {

/// Single-channel grayscale image, row-major, (x, y) = (column, row).
struct ImageGrid {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  ImageGrid() = default;
  ImageGrid(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
  size_t size() const { return pixels.size(); }
  bool empty() const { return pixels.empty(); }

  void require_finite() const {
    for (double v : pixels)
      if (!std::isfinite(v)) throw NumericError("image contains non-finite values");
  }
};

/// Half-sample symmetric mirror of t into [0, n).
inline int reflect_index(int t, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = t % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

}  // namespace symfeat
