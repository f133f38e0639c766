// SPDX-License-Identifier: Apache-2.0
#include "symfeat/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace symfeat {

namespace {

double bilinear(const std::vector<double>& m, int nx, int ny, double x,
                double y) {
  // Clamp to the image so border pixels compare against real neighbors.
  x = std::clamp(x, 0.0, static_cast<double>(nx - 1));
  y = std::clamp(y, 0.0, static_cast<double>(ny - 1));
  const int x0 = std::min(static_cast<int>(x), nx - 2 >= 0 ? nx - 2 : 0);
  const int y0 = std::min(static_cast<int>(y), ny - 2 >= 0 ? ny - 2 : 0);
  const double fx = x - x0, fy = y - y0;
  const size_t i = static_cast<size_t>(y0) * nx + x0;
  const double top = m[i] * (1.0 - fx) + m[i + 1] * fx;
  const double bot = m[i + nx] * (1.0 - fx) + m[i + nx + 1] * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace

std::vector<uint8_t> threshold_and_thin(const FeatureResult& result,
                                        double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw UsageError("threshold_and_thin: threshold must lie in [0,1]");
  const int nx = result.nx, ny = result.ny;
  const size_t n = result.size();
  std::vector<uint8_t> out(n, 0);

#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const double m = result.measure[i];
    if (m <= 0.0 || m < threshold) continue;
    const int x = static_cast<int>(i) % nx;
    const int y = static_cast<int>(i) / nx;
    const double tangent = result.orientation.empty()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : result.orientation[i];
    if (std::isnan(tangent)) {  // no direction: plain threshold
      out[i] = 1;
      continue;
    }
    const double normal = tangent + M_PI / 2.0;
    const double dx = std::cos(normal), dy = std::sin(normal);
    const double ahead = bilinear(result.measure, nx, ny, x + dx, y + dy);
    const double behind = bilinear(result.measure, nx, ny, x - dx, y - dy);
    // >= ahead, > behind: exactly one survivor on flat two-pixel plateaus.
    if (m >= ahead && m > behind) out[i] = 1;
  }

  // Bridge single-pixel gaps: an off pixel with an opposite pair of on
  // neighbors joins the curve. Opposite pairs are never 8-adjacent, and the
  // rule is monotone in the input set.
  std::vector<uint8_t> bridged = out;
  const int pairs[4][2][2] = {{{0, -1}, {0, 1}},
                              {{-1, 0}, {1, 0}},
                              {{-1, -1}, {1, 1}},
                              {{1, -1}, {-1, 1}}};
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    if (out[i]) continue;
    const int x = static_cast<int>(i) % nx;
    const int y = static_cast<int>(i) / nx;
    for (const auto& pr : pairs) {
      const int xa = x + pr[0][0], ya = y + pr[0][1];
      const int xb = x + pr[1][0], yb = y + pr[1][1];
      if (xa < 0 || xa >= nx || ya < 0 || ya >= ny) continue;
      if (xb < 0 || xb >= nx || yb < 0 || yb >= ny) continue;
      if (out[static_cast<size_t>(ya) * nx + xa] &&
          out[static_cast<size_t>(yb) * nx + xb]) {
        bridged[i] = 1;
        break;
      }
    }
  }
  return bridged;
}

DetectionSet blob_centers(const FeatureResult& result, double threshold,
                          const std::vector<uint8_t>* foreground_mask) {
  if (threshold < 0.0 || threshold > 1.0)
    throw UsageError("blob_centers: threshold must lie in [0,1]");
  const int nx = result.nx, ny = result.ny;
  const size_t n = result.size();
  std::vector<uint8_t> on(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (result.measure[i] <= 0.0 || result.measure[i] < threshold) continue;
    if (foreground_mask && !(*foreground_mask)[i]) continue;
    on[i] = 1;
  }

  DetectionSet det;
  det.kind = DetectionSet::Kind::blob;
  std::vector<uint8_t> seen(n, 0);
  std::queue<int> frontier;
  for (size_t start = 0; start < n; ++start) {
    if (!on[start] || seen[start]) continue;
    double sx = 0.0, sy = 0.0;
    long count = 0;
    seen[start] = 1;
    frontier.push(static_cast<int>(start));
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      const int x = i % nx, y = i / nx;
      sx += x;
      sy += y;
      ++count;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || xx >= nx || yy < 0 || yy >= ny) continue;
          const size_t ii = static_cast<size_t>(yy) * nx + xx;
          if (on[ii] && !seen[ii]) {
            seen[ii] = 1;
            frontier.push(static_cast<int>(ii));
          }
        }
    }
    DetectionSet::Point p;
    p.x = static_cast<int>(std::lround(sx / count));
    p.y = static_cast<int>(std::lround(sy / count));
    const size_t i = static_cast<size_t>(p.y) * nx + p.x;
    p.width = result.width.empty() ? 0.0 : result.width[i];
    p.height = result.height.empty() ? 0.0 : result.height[i];
    det.points.push_back(p);
  }
  return det;
}

DetectionSet detections_from_map(const FeatureResult& result,
                                 const std::vector<uint8_t>& binary,
                                 DetectionSet::Kind kind) {
  DetectionSet det;
  det.kind = kind;
  for (size_t i = 0; i < result.size(); ++i) {
    if (!binary[i]) continue;
    DetectionSet::Point p;
    p.x = static_cast<int>(i) % result.nx;
    p.y = static_cast<int>(i) / result.nx;
    p.orientation = result.orientation.empty() ? 0.0 : result.orientation[i];
    p.width = result.width.empty() ? 0.0 : result.width[i];
    p.height = result.height.empty() ? 0.0 : result.height[i];
    det.points.push_back(p);
  }
  return det;
}

}  // namespace symfeat
