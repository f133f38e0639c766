// SPDX-License-Identifier: Apache-2.0
#include "symfeat/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symfeat/measures.hpp"
#include "symfeat/rng.hpp"

namespace symfeat {

namespace {

constexpr int kSupersample = 8;

struct Segment {
  Vec2 a, b;
};

int segment_count(size_t n_points, bool closed) {
  return closed ? static_cast<int>(n_points)
                : static_cast<int>(n_points) - 1;
}

Vec2 tangent_at_control(const std::vector<Vec2>& p, bool closed, int i) {
  const int n = static_cast<int>(p.size());
  if (closed) {
    const Vec2& prev = p[(i + n - 1) % n];
    const Vec2& next = p[(i + 1) % n];
    return {(next.x - prev.x) / 2.0, (next.y - prev.y) / 2.0};
  }
  if (i == 0) return {p[1].x - p[0].x, p[1].y - p[0].y};
  if (i == n - 1)
    return {p[n - 1].x - p[n - 2].x, p[n - 1].y - p[n - 2].y};
  return {(p[i + 1].x - p[i - 1].x) / 2.0, (p[i + 1].y - p[i - 1].y) / 2.0};
}

}  // namespace

Vec2 spline_point(const std::vector<Vec2>& pts, bool closed, double t) {
  const int n = static_cast<int>(pts.size());
  const int segs = segment_count(pts.size(), closed);
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 0, segs - 1);
  const double s = t - i;
  const Vec2& p0 = pts[i % n];
  const Vec2& p1 = pts[(i + 1) % n];
  const Vec2 m0 = tangent_at_control(pts, closed, i % n);
  const Vec2 m1 = tangent_at_control(pts, closed, (i + 1) % n);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return {h00 * p0.x + h10 * m0.x + h01 * p1.x + h11 * m1.x,
          h00 * p0.y + h10 * m0.y + h01 * p1.y + h11 * m1.y};
}

Vec2 spline_derivative(const std::vector<Vec2>& pts, bool closed, double t) {
  const int n = static_cast<int>(pts.size());
  const int segs = segment_count(pts.size(), closed);
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 0, segs - 1);
  const double s = t - i;
  const Vec2& p0 = pts[i % n];
  const Vec2& p1 = pts[(i + 1) % n];
  const Vec2 m0 = tangent_at_control(pts, closed, i % n);
  const Vec2 m1 = tangent_at_control(pts, closed, (i + 1) % n);
  const double s2 = s * s;
  const double h00 = 6 * s2 - 6 * s;
  const double h10 = 3 * s2 - 4 * s + 1;
  const double h01 = -6 * s2 + 6 * s;
  const double h11 = 3 * s2 - 2 * s;
  return {h00 * p0.x + h10 * m0.x + h01 * p1.x + h11 * m1.x,
          h00 * p0.y + h10 * m0.y + h01 * p1.y + h11 * m1.y};
}

namespace {

/// Polyline approximation in supersampled pixel coordinates.
std::vector<Vec2> to_polyline(const std::vector<Vec2>& pts, bool closed,
                              bool spline, double scale, int subdiv) {
  std::vector<Vec2> out;
  if (!spline) {
    for (const Vec2& p : pts) out.push_back({p.x * scale, p.y * scale});
    if (closed) out.push_back(out.front());
    return out;
  }
  const int segs = segment_count(pts.size(), closed);
  for (int i = 0; i < segs; ++i)
    for (int k = 0; k < subdiv; ++k) {
      const Vec2 p = spline_point(pts, closed, i + k / double(subdiv));
      out.push_back({p.x * scale, p.y * scale});
    }
  const Vec2 last = spline_point(pts, closed, closed ? 0.0 : double(segs));
  out.push_back({last.x * scale, last.y * scale});
  return out;
}

/// Even-odd scanline fill of a closed polyline into the supersampled buffer.
void fill_polygon(std::vector<float>& buf, int nss,
                  const std::vector<Vec2>& poly, const FillSpec& fill,
                  double scale) {
  double ymin = 1e300, ymax = -1e300;
  for (const Vec2& p : poly) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int y0 = std::max(0, static_cast<int>(std::floor(ymin)));
  const int y1 = std::min(nss - 1, static_cast<int>(std::ceil(ymax)));
  std::vector<double> xs;
  for (int iy = y0; iy <= y1; ++iy) {
    const double yc = iy + 0.5;
    xs.clear();
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
      const Vec2& a = poly[i];
      const Vec2& b = poly[i + 1];
      if ((a.y <= yc) == (b.y <= yc)) continue;  // no crossing
      xs.push_back(a.x + (yc - a.y) / (b.y - a.y) * (b.x - a.x));
    }
    std::sort(xs.begin(), xs.end());
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int xa = std::max(0, static_cast<int>(std::ceil(xs[k] - 0.5)));
      const int xb =
          std::min(nss - 1, static_cast<int>(std::floor(xs[k + 1] - 0.5)));
      for (int ix = xa; ix <= xb; ++ix)
        buf[static_cast<size_t>(iy) * nss + ix] = static_cast<float>(
            fill.value_at((ix + 0.5) / scale, (iy + 0.5) / scale));
    }
  }
}

/// Stamps a capsule of the given radius around every polyline segment.
void fill_capsules(std::vector<float>& buf, int nss,
                   const std::vector<Vec2>& poly, double radius_ss,
                   const FillSpec& fill, double scale) {
  const double r2 = radius_ss * radius_ss;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[i + 1];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    const int x0 = std::max(
        0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius_ss)));
    const int x1 = std::min(
        nss - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius_ss)));
    const int y0 = std::max(
        0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius_ss)));
    const int y1 = std::min(
        nss - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius_ss)));
    for (int iy = y0; iy <= y1; ++iy)
      for (int ix = x0; ix <= x1; ++ix) {
        const double px = ix + 0.5, py = iy + 0.5;
        double t = len2 > 0.0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = px - (a.x + t * dx), ey = py - (a.y + t * dy);
        if (ex * ex + ey * ey <= r2)
          buf[static_cast<size_t>(iy) * nss + ix] =
              static_cast<float>(fill.value_at(px / scale, py / scale));
      }
  }
}

void mark_gt(GroundTruth& gt, double px, double py, double tangent,
             double width) {
  const int ix = static_cast<int>(std::floor(px));
  const int iy = static_cast<int>(std::floor(py));
  if (ix < 0 || ix >= gt.nx || iy < 0 || iy >= gt.ny) return;
  const size_t i = static_cast<size_t>(iy) * gt.nx + ix;
  if (gt.mask[i]) return;  // first write wins (corners keep incoming tangent)
  gt.mask[i] = 1;
  gt.orientation[i] = wrap_orientation(tangent);
  gt.width[i] = width;
}

/// Walks a curve and marks every pixel the continuous curve passes through.
void trace_curve(GroundTruth& gt, const std::vector<Vec2>& pts, bool closed,
                 bool spline, double scale, double width) {
  if (!spline) {
    const int segs = segment_count(pts.size(), closed);
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < segs; ++i) {
      const Vec2& a = pts[i % n];
      const Vec2& b = pts[(i + 1) % n];
      const double len =
          std::hypot(b.x - a.x, b.y - a.y) * scale;
      const int steps = std::max(2, static_cast<int>(std::ceil(len / 0.25)));
      const double tangent = std::atan2(b.y - a.y, b.x - a.x);
      for (int k = 0; k <= steps; ++k) {
        const double s = k / double(steps);
        mark_gt(gt, (a.x + s * (b.x - a.x)) * scale,
                (a.y + s * (b.y - a.y)) * scale, tangent, width);
      }
    }
    return;
  }
  const int segs = segment_count(pts.size(), closed);
  for (int i = 0; i < segs; ++i) {
    // Estimate the segment's pixel length to pick a safe step count.
    double len = 0.0;
    Vec2 prev = spline_point(pts, closed, i);
    for (int k = 1; k <= 16; ++k) {
      const Vec2 q = spline_point(pts, closed, i + k / 16.0);
      len += std::hypot(q.x - prev.x, q.y - prev.y);
      prev = q;
    }
    const int steps =
        std::max(16, static_cast<int>(std::ceil(len * scale / 0.25)));
    for (int k = 0; k <= steps; ++k) {
      const double t = i + std::min(1.0, k / double(steps));
      const Vec2 p = spline_point(pts, closed, t);
      const Vec2 d = spline_derivative(pts, closed, t);
      mark_gt(gt, p.x * scale, p.y * scale, std::atan2(d.y, d.x), width);
    }
  }
}

void check_ridge_self_distance(const RidgeCurve& curve, double scale) {
  const std::vector<Vec2> poly =
      to_polyline(curve.points, false, true, scale, 64);
  const int n = static_cast<int>(poly.size());
  const int skip = 96;  // ~1.5 control segments of parameter separation
  for (int i = 0; i < n; i += 4)
    for (int j = i + skip; j < n; j += 4) {
      const double d = std::hypot(poly[i].x - poly[j].x, poly[i].y - poly[j].y);
      if (d < curve.width_px)
        throw UsageError(
            "generate: ridge centerline self-intersects closer than its "
            "width; rejected spec");
    }
}

}  // namespace

std::pair<ImageGrid, GroundTruth> generate(const SceneSpec& spec) {
  if (spec.canvas < 16) throw UsageError("generate: canvas too small");
  const int n = spec.canvas;
  const int nss = n * kSupersample;
  const double scale_ss = static_cast<double>(nss);  // unit square -> ss px
  const double scale_px = static_cast<double>(n);    // unit square -> px

  for (const RidgeCurve& c : spec.ridges) {
    if (c.points.size() < 2)
      throw UsageError("generate: ridge needs at least two control points");
    check_ridge_self_distance(c, scale_px);
  }

  std::vector<float> buf(static_cast<size_t>(nss) * nss,
                         static_cast<float>(spec.background));

  for (const ClosedShape& shape : spec.shapes) {
    if (shape.points.size() < 3)
      throw UsageError("generate: closed shape needs at least three points");
    fill_polygon(buf, nss, to_polyline(shape.points, true, shape.spline,
                                       scale_ss, 128),
                 shape.fill, scale_ss);
  }
  for (const RidgeCurve& curve : spec.ridges)
    fill_capsules(buf, nss, to_polyline(curve.points, false, true, scale_ss, 64),
                  curve.width_px * kSupersample / 2.0, curve.fill, scale_ss);
  for (const CircleSpec& c : spec.circles) {
    const double r = c.diameter_px * kSupersample / 2.0;
    std::vector<Vec2> dummy;
    FillSpec fill;
    fill.base = c.value;
    const double cx = c.center.x * scale_ss, cy = c.center.y * scale_ss;
    const int x0 = std::max(0, static_cast<int>(cx - r - 2));
    const int x1 = std::min(nss - 1, static_cast<int>(cx + r + 2));
    const int y0 = std::max(0, static_cast<int>(cy - r - 2));
    const int y1 = std::min(nss - 1, static_cast<int>(cy + r + 2));
    for (int iy = y0; iy <= y1; ++iy)
      for (int ix = x0; ix <= x1; ++ix) {
        const double dx = ix + 0.5 - cx, dy = iy + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r)
          buf[static_cast<size_t>(iy) * nss + ix] =
              static_cast<float>(c.value);
      }
  }

  // Box downsample.
  ImageGrid img(n, n);
  const double inv = 1.0 / (kSupersample * kSupersample);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      double acc = 0.0;
      for (int sy = 0; sy < kSupersample; ++sy) {
        const float* row =
            buf.data() +
            (static_cast<size_t>(y) * kSupersample + sy) * nss +
            static_cast<size_t>(x) * kSupersample;
        for (int sx = 0; sx < kSupersample; ++sx) acc += row[sx];
      }
      img.at(x, y) = acc * inv;
    }

  // Smooth low-frequency overlay: three cosine bumps drawn from the seed.
  {
    Rng rng(spec.seed * 2654435761ULL + 7ULL);
    double fx[3], fy[3], ph[3];
    for (int i = 0; i < 3; ++i) {
      fx[i] = rng.uniform(0.5, 1.5);
      fy[i] = rng.uniform(0.5, 1.5);
      ph[i] = rng.uniform(0.0, 2.0 * M_PI);
    }
    if (spec.overlay) {
      const double amp = spec.overlay_amplitude / 3.0;
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          double v = 0.0;
          for (int i = 0; i < 3; ++i)
            v += amp * std::cos(2.0 * M_PI *
                                    (fx[i] * x / n + fy[i] * y / n) +
                                ph[i]);
          img.at(x, y) += v;
        }
    }
  }
  for (double& v : img.pixels) v = std::clamp(v, 0.0, 1.0);

  GroundTruth gt;
  gt.nx = n;
  gt.ny = n;
  gt.mask.assign(img.size(), 0);
  gt.orientation.assign(img.size(), std::numeric_limits<double>::quiet_NaN());
  gt.width.assign(img.size(), 0.0);

  switch (spec.kind) {
    case SceneKind::edges:
      for (const ClosedShape& shape : spec.shapes)
        trace_curve(gt, shape.points, true, shape.spline, scale_px, 0.0);
      break;
    case SceneKind::ridges:
      for (const RidgeCurve& curve : spec.ridges)
        trace_curve(gt, curve.points, false, true, scale_px, curve.width_px);
      break;
    case SceneKind::blobs:
      for (const CircleSpec& c : spec.circles) {
        GroundTruth::Center center;
        center.x = c.center.x * scale_px;
        center.y = c.center.y * scale_px;
        center.diameter = c.diameter_px;
        gt.centers.push_back(center);
        const int ix = static_cast<int>(std::floor(center.x));
        const int iy = static_cast<int>(std::floor(center.y));
        if (ix >= 0 && ix < n && iy >= 0 && iy < n) {
          const size_t i = static_cast<size_t>(iy) * n + ix;
          gt.mask[i] = 1;
          gt.width[i] = c.diameter_px;
        }
      }
      break;
  }
  return {std::move(img), std::move(gt)};
}

ImageGrid add_noise(const ImageGrid& img, NoiseLevel level, uint64_t seed) {
  for (double v : img.pixels)
    if (v < -1e-9 || v > 1.0 + 1e-9)
      throw UsageError("add_noise: intensities must lie in [0,1]");
  if (level == NoiseLevel::none) return img;
  const double photons = level == NoiseLevel::medium ? 200.0 : 50.0;
  const double sigma = level == NoiseLevel::medium ? 0.05 : 0.15;
  Rng rng(seed);
  ImageGrid out = img;
  for (double& v : out.pixels) {
    const double lam = photons * std::clamp(v, 0.0, 1.0);
    v = rng.poisson(lam) / photons + sigma * rng.normal();
    v = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

namespace {

std::vector<Vec2> random_blob_points(Rng& rng, Vec2 center, double radius) {
  const int n = rng.uniform_int(5, 8);
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double angle =
        2.0 * M_PI * (i + rng.uniform(-0.25, 0.25)) / n;
    const double r = radius * rng.uniform(0.7, 1.3);
    pts[i] = {center.x + r * std::cos(angle), center.y + r * std::sin(angle)};
  }
  return pts;
}

FillSpec random_fill(Rng& rng, double background) {
  FillSpec f;
  do {
    f.base = rng.uniform(0.3, 0.95);
  } while (std::fabs(f.base - background) < 0.12);
  if (rng.uniform() < 0.5) {
    f.gx = rng.uniform(-0.15, 0.15);
    f.gy = rng.uniform(-0.15, 0.15);
  }
  return f;
}

SceneSpec preset_edges1(uint64_t seed) {
  SceneSpec s;
  s.kind = SceneKind::edges;
  s.seed = seed;
  s.overlay = true;

  ClosedShape a;
  a.points = {{0.28, 0.14}, {0.40, 0.22}, {0.43, 0.33}, {0.34, 0.44},
              {0.20, 0.42}, {0.13, 0.30}, {0.17, 0.19}};
  a.fill.base = 0.85;
  ClosedShape b;
  b.points = {{0.72, 0.15}, {0.83, 0.24}, {0.80, 0.36},
              {0.68, 0.40}, {0.60, 0.30}, {0.63, 0.20}};
  b.fill.base = 0.45;
  b.fill.gx = 0.15;
  ClosedShape c;
  c.points = {{0.42, 0.56}, {0.56, 0.60}, {0.62, 0.71}, {0.54, 0.84},
              {0.40, 0.87}, {0.27, 0.80}, {0.23, 0.68}, {0.31, 0.59}};
  c.fill.base = 0.65;
  ClosedShape d;  // pentagon
  d.spline = false;
  d.points.resize(5);
  for (int i = 0; i < 5; ++i) {
    const double angle = -M_PI / 2.0 + 2.0 * M_PI * i / 5.0;
    d.points[i] = {0.82 + 0.11 * std::cos(angle),
                   0.72 + 0.11 * std::sin(angle)};
  }
  d.fill.base = 0.35;
  s.shapes = {a, b, c, d};
  return s;
}

SceneSpec preset_edges2(uint64_t seed) {
  SceneSpec s;
  s.kind = SceneKind::edges;
  s.seed = seed;
  s.overlay = true;
  Rng rng(seed);

  struct Placed {
    Vec2 c;
    double r;
  };
  std::vector<Placed> placed;
  int attempts = 0;
  while (placed.size() < 6 && attempts < 200000) {
    ++attempts;
    const Vec2 c = {rng.uniform(0.16, 0.84), rng.uniform(0.16, 0.84)};
    const double r = rng.uniform(0.07, 0.14);
    bool ok = true;
    for (const Placed& p : placed)
      if (std::hypot(c.x - p.c.x, c.y - p.c.y) < 1.35 * (r + p.r) + 0.03)
        ok = false;
    if (!ok) continue;
    placed.push_back({c, r});
    ClosedShape shape;
    shape.spline = placed.size() != 3;  // one polygon among the splines
    shape.points = random_blob_points(rng, c, r);
    shape.fill = random_fill(rng, s.background);
    s.shapes.push_back(shape);
  }
  return s;
}

SceneSpec preset_ridges1(uint64_t seed) {
  SceneSpec s;
  s.kind = SceneKind::ridges;
  s.seed = seed;
  s.background = 0.2;
  s.overlay = true;

  const auto curve = [](std::vector<Vec2> pts, double w, double v) {
    RidgeCurve c;
    c.points = std::move(pts);
    c.width_px = w;
    c.fill.base = v;
    return c;
  };
  s.ridges.push_back(curve(
      {{0.08, 0.16}, {0.30, 0.10}, {0.55, 0.20}, {0.80, 0.12}, {0.93, 0.18}},
      3.5, 0.85));
  s.ridges.push_back(curve(
      {{0.06, 0.40}, {0.28, 0.32}, {0.50, 0.44}, {0.72, 0.34}, {0.94, 0.42}},
      5.0, 0.70));
  s.ridges.push_back(
      curve({{0.07, 0.62}, {0.33, 0.55}, {0.60, 0.66}, {0.90, 0.57}}, 7.0,
            0.90));
  s.ridges.push_back(
      curve({{0.05, 0.85}, {0.35, 0.78}, {0.62, 0.88}, {0.92, 0.80}}, 9.0,
            0.75));

  ClosedShape distractor;  // filled shape: must not read as a ridge
  distractor.points = {{0.18, 0.675}, {0.215, 0.695}, {0.225, 0.725},
                       {0.195, 0.760}, {0.155, 0.750}, {0.14, 0.71}};
  distractor.fill.base = 0.55;
  s.shapes.push_back(distractor);
  return s;
}

SceneSpec preset_ridges2(uint64_t seed) {
  SceneSpec s;
  s.kind = SceneKind::ridges;
  s.seed = seed;
  s.background = 0.2;
  s.overlay = true;
  Rng rng(seed);

  const double bands[4] = {0.12, 0.34, 0.56, 0.78};
  for (double band : bands) {
    RidgeCurve c;
    for (double x : {0.06, 0.28, 0.50, 0.72, 0.94})
      c.points.push_back(
          {x + rng.uniform(-0.03, 0.03), band + rng.uniform(-0.05, 0.05)});
    c.width_px = rng.uniform(3.0, 10.0);
    c.fill.base = 0.75;  // uniform fill across all ridges
    s.ridges.push_back(c);
  }
  ClosedShape distractor;
  distractor.points =
      random_blob_points(rng, {rng.uniform(0.3, 0.7), 0.945}, 0.035);
  distractor.fill.base = 0.5;
  s.shapes.push_back(distractor);
  return s;
}

SceneSpec preset_blobs(uint64_t seed, int count, double dmin, double dmax,
                       double min_dist_px) {
  SceneSpec s;
  s.kind = SceneKind::blobs;
  s.seed = seed;
  s.background = 0.12;
  Rng rng(seed);
  const double canvas = s.canvas;
  int attempts = 0;
  while (static_cast<int>(s.circles.size()) < count && attempts < 2000000) {
    ++attempts;
    CircleSpec c;
    c.diameter_px = rng.uniform(dmin, dmax);
    const double margin = (c.diameter_px / 2.0 + 12.0) / canvas;
    c.center = {rng.uniform(margin, 1.0 - margin),
                rng.uniform(margin, 1.0 - margin)};
    bool ok = true;
    for (const CircleSpec& o : s.circles) {
      const double d = std::hypot(c.center.x - o.center.x,
                                  c.center.y - o.center.y) *
                       canvas;
      if (d < min_dist_px) ok = false;
    }
    if (!ok) continue;
    c.value = rng.uniform(0.45, 0.95);
    s.circles.push_back(c);
  }
  if (static_cast<int>(s.circles.size()) < count)
    throw NumericError("preset_blobs: could not place all circles");
  return s;
}

}  // namespace

SceneSpec make_preset(const std::string& name, uint64_t seed) {
  if (name == "edges1") return preset_edges1(seed);
  if (name == "edges2") return preset_edges2(seed);
  if (name == "ridges1") return preset_ridges1(seed);
  if (name == "ridges2") return preset_ridges2(seed);
  if (name == "blobs-large") return preset_blobs(seed, 31, 30.0, 50.0, 100.0);
  if (name == "blobs-small") return preset_blobs(seed, 200, 7.0, 13.0, 20.0);
  throw UsageError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"edges1", "edges2", "ridges1", "ridges2", "blobs-large",
          "blobs-small"};
}

NoiseLevel noise_level_from_string(const std::string& s) {
  if (s == "none") return NoiseLevel::none;
  if (s == "medium") return NoiseLevel::medium;
  if (s == "severe") return NoiseLevel::severe;
  throw UsageError("unknown noise level: " + s);
}

std::string to_string(NoiseLevel level) {
  switch (level) {
    case NoiseLevel::none: return "none";
    case NoiseLevel::medium: return "medium";
    case NoiseLevel::severe: return "severe";
  }
  return "?";
}

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::edges: return "edges";
    case SceneKind::ridges: return "ridges";
    case SceneKind::blobs: return "blobs";
  }
  return "?";
}

}  // namespace symfeat
