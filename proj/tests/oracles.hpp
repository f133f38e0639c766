// SPDX-License-Identifier: Apache-2.0
// Brute-force reference implementations the fast paths are held against.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

struct Pt {
  int x, y;
};

inline std::vector<Pt> points_of(const std::vector<uint8_t>& mask, int nx,
                                 int ny) {
  std::vector<Pt> pts;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      if (mask[static_cast<size_t>(y) * nx + x]) pts.push_back({x, y});
  return pts;
}

inline int64_t min_dist2(const Pt& p, const std::vector<Pt>& set) {
  int64_t best = -1;
  for (const Pt& q : set) {
    const int64_t dx = p.x - q.x, dy = p.y - q.y;
    const int64_t d2 = dx * dx + dy * dy;
    if (best < 0 || d2 < best) best = d2;
  }
  return best;
}

/// O(N^2) evaluation of the modified figure of merit: multiset of both
/// directed nearest-neighbor distance sets, the N_gt largest entries summed
/// under 1/(1 + gamma d^2), normalized by max{N_gt, N_det}.
inline double fom_brute(const std::vector<uint8_t>& gt,
                        const std::vector<uint8_t>& det, int nx, int ny,
                        double gamma) {
  const std::vector<Pt> pg = points_of(gt, nx, ny);
  const std::vector<Pt> pd = points_of(det, nx, ny);
  if (pg.empty() && pd.empty()) return 1.0;
  if (pg.empty() || pd.empty()) return 0.0;
  std::vector<int64_t> d;
  for (const Pt& p : pg) d.push_back(min_dist2(p, pd));
  for (const Pt& q : pd) d.push_back(min_dist2(q, pg));
  std::sort(d.begin(), d.end(), std::greater<int64_t>());
  double sum = 0.0;
  for (size_t i = 0; i < pg.size(); ++i)
    sum += 1.0 / (1.0 + gamma * static_cast<double>(d[i]));
  return sum / static_cast<double>(std::max(pg.size(), pd.size()));
}

}  // namespace oracle
