// SPDX-License-Identifier: Apache-2.0
#include "symfeat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "symfeat/fft.hpp"

namespace symfeat {

double CoefficientStack::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::fabs(v));
  return m;
}

CoefficientStack analyze(const ImageGrid& f, const MoleculeBank& bank) {
  if (f.empty()) throw UsageError("analyze: empty image");
  f.require_finite();

  const int pad = bank.max_half();
  const int mx = fft::good_size(f.width + 2 * pad);
  const int my = fft::good_size(f.height + 2 * pad);
  if (2 * pad + 1 > mx || 2 * pad + 1 > my)
    throw UsageError("analyze: filter larger than the padded image");

  // Reflectively padded image, transformed once.
  std::vector<std::complex<double>> image_spec;
  {
    fft::Workspace2D ws(mx, my);
    for (int y = 0; y < my; ++y) {
      const int sy = reflect_index(y - pad, f.height);
      double* row = ws.real() + static_cast<size_t>(y) * mx;
      for (int x = 0; x < mx; ++x)
        row[x] = f.at(reflect_index(x - pad, f.width), sy);
    }
    ws.forward();
    image_spec.assign(ws.spectrum(), ws.spectrum() + ws.spectrum_size());
  }

  CoefficientStack stack;
  stack.n_scales = bank.n_scales();
  stack.n_thetas = bank.n_thetas();
  stack.width = f.width;
  stack.height = f.height;
  stack.data.resize(static_cast<size_t>(stack.n_scales) * stack.n_thetas *
                    stack.slice_size());

  const int n_slices = bank.n_scales() * bank.n_thetas();
  const double norm = 1.0 / (static_cast<double>(mx) * my);

#pragma omp parallel
  {
    fft::Workspace2D ws(mx, my);
#pragma omp for schedule(dynamic)
    for (int s = 0; s < n_slices; ++s) {
      const Filter2D& filt = bank.filters[s];
      const int half = filt.half;
      std::fill(ws.real(), ws.real() + static_cast<size_t>(mx) * my, 0.0);
      for (int v = -half; v <= half; ++v) {
        const int wy = (v + my) % my;
        for (int u = -half; u <= half; ++u) {
          const int wx = (u + mx) % mx;
          ws.real()[static_cast<size_t>(wy) * mx + wx] = filt.at(u, v);
        }
      }
      ws.forward();
      // Correlation: F * conj(Phi).
      std::complex<double>* spec = ws.spectrum();
      for (int i = 0; i < ws.spectrum_size(); ++i)
        spec[i] = image_spec[i] * std::conj(spec[i]);
      ws.backward();

      double* out = stack.data.data() + s * stack.slice_size();
      for (int y = 0; y < f.height; ++y) {
        const double* row = ws.real() + static_cast<size_t>(y + pad) * mx + pad;
        for (int x = 0; x < f.width; ++x)
          out[static_cast<size_t>(y) * f.width + x] = row[x] * norm;
      }
    }
  }
  return stack;
}

}  // namespace symfeat
