// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "symfeat/measures.hpp"

namespace symfeat {

/// Discrete detections extracted from measure maps.
struct DetectionSet {
  enum class Kind { edge, ridge, blob };
  struct Point {
    int x = 0, y = 0;
    double orientation = 0.0;  // tangent, radians
    double width = 0.0;        // px
    double height = 0.0;       // signed contrast
  };
  Kind kind = Kind::edge;
  std::vector<Point> points;
};

/// Hard threshold plus thinning: keeps pixels at or above the threshold that
/// are local maxima of the measure along the feature normal (bilinear
/// sampling of the two normal-direction neighbors), then bridges 8-connected
/// gaps of length one. Pixels with zero measure never survive, so a zero
/// threshold on a featureless map still yields an empty result.
std::vector<uint8_t> threshold_and_thin(const FeatureResult& result,
                                        double threshold);

/// Binarizes a blob measure at the threshold (optionally restricted to a
/// foreground mask) and returns the centroids of its 8-connected components;
/// width/height are sampled at the pixel nearest each centroid.
DetectionSet blob_centers(const FeatureResult& result, double threshold,
                          const std::vector<uint8_t>* foreground_mask = nullptr);

/// Collects the on-pixels of a thinned binary map with their per-pixel
/// attributes.
DetectionSet detections_from_map(const FeatureResult& result,
                                 const std::vector<uint8_t>& binary,
                                 DetectionSet::Kind kind);

}  // namespace symfeat
