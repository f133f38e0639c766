// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace symfeat {

/// Exact squared Euclidean distance transform on a binary mask, with the
/// nearest on-pixel tracked per pixel (ties resolve in scan order; distances
/// are tie-independent). dist2 is -1 when the mask is empty.
struct Edt {
  std::vector<int64_t> dist2;
  std::vector<int32_t> site;  // linear index of the nearest on-pixel, or -1
};
Edt edt_squared(const std::vector<uint8_t>& mask, int nx, int ny);

/// Modified Pratt figure of merit: over the multiset of gt->det and det->gt
/// nearest-neighbor distances, sums 1/(1 + gamma d^2) for the N_gt largest
/// distances and divides by max{N_gt, N_det}. Both masks empty gives 1; one
/// empty gives 0.
double fom(const std::vector<uint8_t>& gt, const std::vector<uint8_t>& det,
           int nx, int ny, double gamma = 1.0 / 9.0);

/// Original Pratt figure of merit, kept for comparison only.
double pratt_fom(const std::vector<uint8_t>& gt,
                 const std::vector<uint8_t>& det, int nx, int ny,
                 double gamma = 1.0 / 9.0);

struct AttributedPoint {
  int x = 0, y = 0;
  double value = 0.0;
};

enum class AttributeMetric { torus, linear };

struct MaeResult {
  std::optional<double> mae;  // absent when the TP-set is empty
  double tpr = 0.0;
  int tp = 0;
};

/// Mean absolute attribute error over the true-positive set: gt points with a
/// detected point within the radius, each compared against its nearest
/// detected point. Torus attributes are angles in radians; their error is
/// min(|d|, pi - |d|), reported in degrees.
MaeResult mae_attribute(const std::vector<AttributedPoint>& gt,
                        const std::vector<AttributedPoint>& det, int nx,
                        int ny, double radius, AttributeMetric metric);

struct BlobPoint {
  double x = 0.0, y = 0.0;
  double width = 0.0;
};

struct BlobScore {
  int tp = 0;
  int fp = 0;
  std::optional<double> mae_center;  // px, over matched pairs
  std::optional<double> mae_width;   // px, over matched pairs
};

/// Centers within the radius of a gt center are true positives; detected
/// centers farther than the radius from every gt center are false positives.
BlobScore blob_score(const std::vector<BlobPoint>& gt,
                     const std::vector<BlobPoint>& det, double radius = 6.0);

/// Sample standard deviation (n-1) of matched width differences; invariant
/// under a constant offset. Throws with fewer than 2 values.
double width_sd(const std::vector<double>& differences);

/// Everything a benchmark row needs; optional fields stay unset when they do
/// not apply to the feature kind.
struct EvalReport {
  double fom = 0.0;
  std::optional<double> mae_orientation_deg;
  std::optional<double> mae_width_px;
  double tpr = 0.0;
  int tp = 0;
  int fp = 0;
  std::optional<double> mae_center_px;
  std::optional<double> sd_width_px;
  double sr = 0.0;  // success rate (blob matching / profile matching)
};

}  // namespace symfeat
