// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symfeat/image.hpp"

namespace symfeat {

enum class SceneKind { edges, ridges, blobs };
enum class NoiseLevel { none, medium, severe };

struct Vec2 {
  double x = 0.0, y = 0.0;
};

/// Constant or linear-gradient fill over unit-square coordinates.
struct FillSpec {
  double base = 0.5;
  double gx = 0.0, gy = 0.0;
  double value_at(double ux, double uy) const { return base + gx * ux + gy * uy; }
};

/// Filled region bounded by a closed curve through the control points:
/// a closed uniform interpolating cubic spline, or the polygon itself.
struct ClosedShape {
  std::vector<Vec2> points;  // unit-square coordinates
  bool spline = true;
  FillSpec fill;
};

/// Ridge: an open spline centerline thickened to a constant width.
struct RidgeCurve {
  std::vector<Vec2> points;  // unit-square coordinates
  double width_px = 5.0;
  FillSpec fill;
};

struct CircleSpec {
  Vec2 center;          // unit-square coordinates
  double diameter_px = 30.0;
  double value = 0.8;
};

/// All geometry lives on the unit square before rasterization.
struct SceneSpec {
  SceneKind kind = SceneKind::edges;
  uint64_t seed = 0;
  int canvas = 768;
  double background = 0.15;
  std::vector<ClosedShape> shapes;   // edge features; distractors for ridges
  std::vector<RidgeCurve> ridges;
  std::vector<CircleSpec> circles;
  bool overlay = false;              // smooth low-frequency surface
  double overlay_amplitude = 0.15;
};

/// Analytic ground truth: location mask plus per-pixel tangent and width, and
/// the blob center list.
struct GroundTruth {
  int nx = 0, ny = 0;
  std::vector<uint8_t> mask;
  std::vector<double> orientation;  // tangent in [-pi/2, pi/2); NaN off-mask
  std::vector<double> width;        // px; 0 where undefined
  struct Center {
    double x = 0.0, y = 0.0, diameter = 0.0;
  };
  std::vector<Center> centers;
};

/// Rasterizes by 8x supersampling followed by box downsampling; ground truth
/// comes from the continuous curves themselves (tangents from spline
/// derivatives; polygon corner pixels carry the incoming edge's tangent).
/// Rejects ridge specs whose centerlines self-intersect closer than their
/// width. Deterministic for a fixed spec.
std::pair<ImageGrid, GroundTruth> generate(const SceneSpec& spec);

/// Poisson shot noise at a photon budget followed by additive Gaussian noise,
/// clipped to [0,1]. medium: 200 counts per unit intensity, sigma 0.05;
/// severe: 50 counts, sigma 0.15. Identity for NoiseLevel::none.
ImageGrid add_noise(const ImageGrid& img, NoiseLevel level, uint64_t seed);

/// Fixed scene families: edges1, edges2, ridges1, ridges2, blobs-large,
/// blobs-small. edges1/ridges1 carry predefined geometry; the others draw
/// semi-random geometry from the seed under the documented constraints.
SceneSpec make_preset(const std::string& name, uint64_t seed);
std::vector<std::string> preset_names();

/// Spline evaluation helpers shared with the tests.
Vec2 spline_point(const std::vector<Vec2>& pts, bool closed, double t);
Vec2 spline_derivative(const std::vector<Vec2>& pts, bool closed, double t);

NoiseLevel noise_level_from_string(const std::string& s);
std::string to_string(NoiseLevel level);
std::string to_string(SceneKind kind);

}  // namespace symfeat
