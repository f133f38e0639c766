// SPDX-License-Identifier: Apache-2.0
#include "symfeat/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symfeat/errors.hpp"

namespace symfeat {

Edt edt_squared(const std::vector<uint8_t>& mask, int nx, int ny) {
  const size_t n = static_cast<size_t>(nx) * ny;
  Edt out;
  out.dist2.assign(n, -1);
  out.site.assign(n, -1);

  // Pass 1, per column: nearest on-pixel within the column (two sweeps).
  std::vector<int32_t> col_site(n, -1);  // row index of nearest on-pixel
  for (int x = 0; x < nx; ++x) {
    int last = std::numeric_limits<int>::min() / 2;
    for (int y = 0; y < ny; ++y) {
      if (mask[static_cast<size_t>(y) * nx + x]) last = y;
      col_site[static_cast<size_t>(y) * nx + x] =
          last > std::numeric_limits<int>::min() / 4 ? last : -1;
    }
    int next = std::numeric_limits<int>::max() / 2;
    for (int y = ny - 1; y >= 0; --y) {
      if (mask[static_cast<size_t>(y) * nx + x]) next = y;
      const size_t i = static_cast<size_t>(y) * nx + x;
      const int prev = col_site[i];
      if (next < std::numeric_limits<int>::max() / 4 &&
          (prev < 0 || next - y < y - prev))
        col_site[i] = next;
    }
  }

  // Pass 2, per row: lower envelope of parabolas rooted at the column hits.
  std::vector<int> v(nx);        // columns of envelope parabolas
  std::vector<double> z(nx + 1); // envelope breakpoints
  std::vector<int64_t> f(nx);    // squared column distances
  for (int y = 0; y < ny; ++y) {
    int m = 0;
    for (int x = 0; x < nx; ++x) {
      const int32_t sy = col_site[static_cast<size_t>(y) * nx + x];
      if (sy < 0) {
        f[x] = -1;
        continue;
      }
      const int64_t dy = sy - y;
      f[x] = dy * dy;
      ++m;
    }
    if (m == 0) continue;

    int k = 0;
    bool started = false;
    for (int q = 0; q < nx; ++q) {
      if (f[q] < 0) continue;
      if (!started) {
        v[0] = q;
        z[0] = -std::numeric_limits<double>::infinity();
        z[1] = std::numeric_limits<double>::infinity();
        started = true;
        continue;
      }
      double s;
      for (;;) {
        const int p = v[k];
        s = (static_cast<double>(f[q] - f[p]) +
             static_cast<double>(q) * q - static_cast<double>(p) * p) /
            (2.0 * (q - p));
        if (s <= z[k] && k > 0) {
          --k;
        } else {
          break;
        }
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = std::numeric_limits<double>::infinity();
    }

    k = 0;
    for (int x = 0; x < nx; ++x) {
      while (z[k + 1] < x) ++k;
      const int q = v[k];
      const int64_t dx = x - q;
      const size_t i = static_cast<size_t>(y) * nx + x;
      out.dist2[i] = dx * dx + f[q];
      out.site[i] = col_site[static_cast<size_t>(y) * nx + q] * nx + q;
    }
  }
  return out;
}

namespace {

/// Multiset of squared nearest-neighbor distances from each set to the other.
std::vector<int64_t> cross_distances(const std::vector<uint8_t>& gt,
                                     const std::vector<uint8_t>& det, int nx,
                                     int ny) {
  const Edt to_gt = edt_squared(gt, nx, ny);
  const Edt to_det = edt_squared(det, nx, ny);
  std::vector<int64_t> d;
  for (size_t i = 0; i < gt.size(); ++i) {
    if (gt[i]) d.push_back(to_det.dist2[i]);
    if (det[i]) d.push_back(to_gt.dist2[i]);
  }
  return d;
}

size_t count_on(const std::vector<uint8_t>& m) {
  size_t c = 0;
  for (uint8_t v : m) c += v ? 1 : 0;
  return c;
}

}  // namespace

double fom(const std::vector<uint8_t>& gt, const std::vector<uint8_t>& det,
           int nx, int ny, double gamma) {
  if (gt.size() != det.size() ||
      gt.size() != static_cast<size_t>(nx) * ny)
    throw UsageError("fom: mask sizes disagree");
  const size_t n_gt = count_on(gt);
  const size_t n_det = count_on(det);
  if (n_gt == 0 && n_det == 0) return 1.0;
  if (n_gt == 0 || n_det == 0) return 0.0;

  std::vector<int64_t> d = cross_distances(gt, det, nx, ny);
  std::sort(d.begin(), d.end(), std::greater<int64_t>());
  double sum = 0.0;
  for (size_t i = 0; i < n_gt; ++i)
    sum += 1.0 / (1.0 + gamma * static_cast<double>(d[i]));
  return sum / static_cast<double>(std::max(n_gt, n_det));
}

double pratt_fom(const std::vector<uint8_t>& gt,
                 const std::vector<uint8_t>& det, int nx, int ny,
                 double gamma) {
  if (gt.size() != det.size())
    throw UsageError("pratt_fom: mask sizes disagree");
  const size_t n_gt = count_on(gt);
  const size_t n_det = count_on(det);
  if (n_gt == 0 && n_det == 0) return 1.0;
  if (n_gt == 0 || n_det == 0) return 0.0;
  const Edt to_gt = edt_squared(gt, nx, ny);
  double sum = 0.0;
  for (size_t i = 0; i < det.size(); ++i)
    if (det[i]) sum += 1.0 / (1.0 + gamma * static_cast<double>(to_gt.dist2[i]));
  return sum / static_cast<double>(std::max(n_gt, n_det));
}

MaeResult mae_attribute(const std::vector<AttributedPoint>& gt,
                        const std::vector<AttributedPoint>& det, int nx,
                        int ny, double radius, AttributeMetric metric) {
  if (radius <= 0.0) throw UsageError("mae_attribute: radius must be > 0");
  MaeResult r;
  if (gt.empty()) return r;
  if (det.empty()) return r;

  std::vector<uint8_t> det_mask(static_cast<size_t>(nx) * ny, 0);
  std::vector<double> det_value(det_mask.size(), 0.0);
  for (const AttributedPoint& p : det) {
    if (p.x < 0 || p.x >= nx || p.y < 0 || p.y >= ny)
      throw UsageError("mae_attribute: point outside the grid");
    const size_t i = static_cast<size_t>(p.y) * nx + p.x;
    det_mask[i] = 1;
    det_value[i] = p.value;
  }
  const Edt edt = edt_squared(det_mask, nx, ny);

  const double r2 = radius * radius;
  double err_sum = 0.0;
  for (const AttributedPoint& p : gt) {
    const size_t i = static_cast<size_t>(p.y) * nx + p.x;
    if (static_cast<double>(edt.dist2[i]) > r2) continue;
    ++r.tp;
    const double nearest = det_value[edt.site[i]];
    if (metric == AttributeMetric::torus) {
      double d = std::fabs(p.value - nearest);
      d = std::fmod(d, M_PI);
      d = std::min(d, M_PI - d);
      err_sum += d * 180.0 / M_PI;
    } else {
      err_sum += std::fabs(p.value - nearest);
    }
  }
  r.tpr = static_cast<double>(r.tp) / gt.size();
  if (r.tp > 0) r.mae = err_sum / r.tp;
  return r;
}

BlobScore blob_score(const std::vector<BlobPoint>& gt,
                     const std::vector<BlobPoint>& det, double radius) {
  if (radius <= 0.0) throw UsageError("blob_score: radius must be > 0");
  BlobScore score;
  double center_err = 0.0, width_err = 0.0;
  for (const BlobPoint& g : gt) {
    double best = std::numeric_limits<double>::infinity();
    const BlobPoint* match = nullptr;
    for (const BlobPoint& d : det) {
      const double dist = std::hypot(g.x - d.x, g.y - d.y);
      if (dist < best) {
        best = dist;
        match = &d;
      }
    }
    if (match && best <= radius) {
      ++score.tp;
      center_err += best;
      width_err += std::fabs(g.width - match->width);
    }
  }
  for (const BlobPoint& d : det) {
    double best = std::numeric_limits<double>::infinity();
    for (const BlobPoint& g : gt)
      best = std::min(best, std::hypot(g.x - d.x, g.y - d.y));
    if (best > radius) ++score.fp;
  }
  if (score.tp > 0) {
    score.mae_center = center_err / score.tp;
    score.mae_width = width_err / score.tp;
  }
  return score;
}

double width_sd(const std::vector<double>& differences) {
  const size_t n = differences.size();
  if (n < 2) throw UsageError("width_sd: need at least 2 matched pairs");
  double mean = 0.0;
  for (double d : differences) mean += d;
  mean /= n;
  double ss = 0.0;
  for (double d : differences) ss += (d - mean) * (d - mean);
  return std::sqrt(ss / (n - 1));
}

}  // namespace symfeat
