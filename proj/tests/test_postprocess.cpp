// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symfeat/postprocess.hpp"
#include "symfeat/rng.hpp"

using namespace symfeat;

namespace {

FeatureResult make_result(int n) {
  FeatureResult r;
  r.nx = n;
  r.ny = n;
  r.measure.assign(static_cast<size_t>(n) * n, 0.0);
  r.orientation.assign(r.size(), 0.0);
  r.width.assign(r.size(), 1.0);
  r.height.assign(r.size(), 1.0);
  return r;
}

/// Measure ramp across a vertical strip: peaks on column `c`, decays with
/// horizontal distance; tangent vertical everywhere.
FeatureResult vertical_crest(int n, int c) {
  FeatureResult r = make_result(n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double d = std::fabs(x - c);
      r.measure[static_cast<size_t>(y) * n + x] = std::exp(-d * d / 8.0);
      r.orientation[static_cast<size_t>(y) * n + x] = M_PI / 2.0;
    }
  return r;
}

size_t count_on(const std::vector<uint8_t>& m) {
  size_t c = 0;
  for (uint8_t v : m) c += v ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("thinning reduces a smooth crest to a one-pixel line") {
  const int n = 64, c = 30;
  const FeatureResult r = vertical_crest(n, c);
  const std::vector<uint8_t> map = threshold_and_thin(r, 0.3);
  for (int y = 1; y < n - 1; ++y) {
    int on_in_row = 0;
    for (int x = 0; x < n; ++x)
      if (map[static_cast<size_t>(y) * n + x]) {
        ++on_in_row;
        CHECK(std::abs(x - c) <= 1);  // within 1 px of the crest
      }
    CHECK(on_in_row == 1);  // one-pixel-wide curve
  }
  // Every on-pixel has at most 2 on-neighbors along the straight curve.
  for (int y = 1; y < n - 1; ++y)
    for (int x = 1; x < n - 1; ++x) {
      if (!map[static_cast<size_t>(y) * n + x]) continue;
      int neighbors = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (map[static_cast<size_t>(y + dy) * n + (x + dx)]) ++neighbors;
        }
      CHECK(neighbors <= 2);
    }
}

TEST_CASE("all-zero measures produce empty maps even at threshold 0") {
  const FeatureResult r = make_result(32);
  CHECK(count_on(threshold_and_thin(r, 0.0)) == 0);
  CHECK(count_on(threshold_and_thin(r, 0.5)) == 0);
  CHECK(blob_centers(r, 0.0).points.empty());
}

TEST_CASE("raising the threshold never adds detections") {
  const int n = 48;
  FeatureResult r = make_result(n);
  Rng rng(99);
  for (size_t i = 0; i < r.size(); ++i) {
    r.measure[i] = rng.uniform();
    r.orientation[i] = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
  }
  std::vector<uint8_t> prev = threshold_and_thin(r, 0.0);
  for (double thr : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const std::vector<uint8_t> cur = threshold_and_thin(r, thr);
    for (size_t i = 0; i < cur.size(); ++i)
      CHECK(cur[i] <= prev[i]);  // set inclusion, not just counts
    prev = cur;
  }
}

TEST_CASE("single-pixel gaps along a curve are bridged") {
  const int n = 16;
  FeatureResult r = make_result(n);
  // Two collinear vertical runs separated by a one-pixel gap at y = 8.
  for (int y = 2; y < 14; ++y)
    if (y != 8) {
      r.measure[static_cast<size_t>(y) * n + 7] = 1.0;
      r.orientation[static_cast<size_t>(y) * n + 7] = M_PI / 2.0;
    }
  const std::vector<uint8_t> map = threshold_and_thin(r, 0.5);
  CHECK(map[static_cast<size_t>(8) * n + 7] == 1);
}

TEST_CASE("blob centers: centroids, attributes, and foreground mask") {
  const int n = 40;
  FeatureResult r = make_result(n);
  const auto stamp = [&](int cx, int cy, double w) {
    for (int y = cy - 2; y <= cy + 2; ++y)
      for (int x = cx - 2; x <= cx + 2; ++x) {
        r.measure[static_cast<size_t>(y) * n + x] = 0.9;
        r.width[static_cast<size_t>(y) * n + x] = w;
      }
  };
  stamp(10, 12, 7.0);
  stamp(28, 30, 11.0);

  const DetectionSet det = blob_centers(r, 0.5);
  REQUIRE(det.points.size() == 2);
  CHECK(det.points[0].x == 10);
  CHECK(det.points[0].y == 12);
  CHECK(det.points[0].width == doctest::Approx(7.0));
  CHECK(det.points[1].x == 28);
  CHECK(det.points[1].y == 30);
  CHECK(det.points[1].width == doctest::Approx(11.0));

  // Foreground mask removes the second component.
  std::vector<uint8_t> mask(r.size(), 1);
  for (int y = 20; y < n; ++y)
    for (int x = 0; x < n; ++x) mask[static_cast<size_t>(y) * n + x] = 0;
  const DetectionSet masked = blob_centers(r, 0.5, &mask);
  REQUIRE(masked.points.size() == 1);
  CHECK(masked.points[0].x == 10);
}

TEST_CASE("detections_from_map carries per-pixel attributes") {
  const int n = 8;
  FeatureResult r = make_result(n);
  r.orientation[9] = 0.25;
  r.width[9] = 4.5;
  r.height[9] = -0.7;
  std::vector<uint8_t> map(r.size(), 0);
  map[9] = 1;
  const DetectionSet det =
      detections_from_map(r, map, DetectionSet::Kind::ridge);
  REQUIRE(det.points.size() == 1);
  CHECK(det.points[0].x == 1);
  CHECK(det.points[0].y == 1);
  CHECK(det.points[0].orientation == doctest::Approx(0.25));
  CHECK(det.points[0].width == doctest::Approx(4.5));
  CHECK(det.points[0].height == doctest::Approx(-0.7));
}
