// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "symfeat/image.hpp"
#include "symfeat/molecules.hpp"

namespace symfeat {

/// Per-pixel transform coefficients of one bank: <f, m_{j,theta,y}> for every
/// pixel y, laid out slice-contiguous (scale-major, then orientation).
struct CoefficientStack {
  int n_scales = 0;
  int n_thetas = 0;
  int width = 0;
  int height = 0;
  std::vector<double> data;

  size_t slice_size() const { return static_cast<size_t>(width) * height; }
  double* slice(int j, int t) {
    return data.data() + (static_cast<size_t>(j) * n_thetas + t) * slice_size();
  }
  const double* slice(int j, int t) const {
    return data.data() + (static_cast<size_t>(j) * n_thetas + t) * slice_size();
  }
  double at(int j, int t, int x, int y) const {
    return slice(j, t)[static_cast<size_t>(y) * width + x];
  }
  double max_abs() const;
};

/// Correlates the image with every filter of the bank: coefficients are
/// coeff[j,t,y] = sum_u f(y+u) * filter(u) with half-sample symmetric
/// (reflective) boundary handling. Computed in the frequency domain: one
/// forward transform of the padded image is shared by all (j, theta) slices,
/// which run in parallel. Deterministic for a fixed FFT size.
CoefficientStack analyze(const ImageGrid& f, const MoleculeBank& bank);

}  // namespace symfeat
