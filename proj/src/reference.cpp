// SPDX-License-Identifier: Apache-2.0
#include "symfeat/reference.hpp"

namespace symfeat {

void correlate_direct(const ImageGrid& f, const Filter2D& filter, double* out) {
  const int half = filter.half;
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      double acc = 0.0;
      for (int v = -half; v <= half; ++v) {
        const int sy = reflect_index(y + v, f.height);
        for (int u = -half; u <= half; ++u) {
          const int sx = reflect_index(x + u, f.width);
          acc += f.at(sx, sy) * filter.at(u, v);
        }
      }
      out[static_cast<size_t>(y) * f.width + x] = acc;
    }
  }
}

CoefficientStack analyze_direct(const ImageGrid& f, const MoleculeBank& bank) {
  if (f.empty()) throw UsageError("analyze_direct: empty image");
  CoefficientStack stack;
  stack.n_scales = bank.n_scales();
  stack.n_thetas = bank.n_thetas();
  stack.width = f.width;
  stack.height = f.height;
  stack.data.resize(static_cast<size_t>(stack.n_scales) * stack.n_thetas *
                    stack.slice_size());
  for (int j = 0; j < bank.n_scales(); ++j)
    for (int t = 0; t < bank.n_thetas(); ++t)
      correlate_direct(f, bank.filter(j, t), stack.slice(j, t));
  return stack;
}

}  // namespace symfeat
