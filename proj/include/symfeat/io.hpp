// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symfeat/image.hpp"
#include "symfeat/postprocess.hpp"
#include "symfeat/synthgen.hpp"

namespace symfeat {

enum class ChannelSelect { automatic, red, green, blue, gray };

/// Reads an 8- or 16-bit PNG or PGM image, normalized to [0,1]. RGB inputs
/// need an explicit channel selection; ChannelSelect::automatic accepts only
/// single-channel files.
ImageGrid read_image(const std::string& path,
                     ChannelSelect channel = ChannelSelect::automatic);

/// 16-bit grayscale PNG; values mapped linearly from [lo, hi].
void write_png16(const std::string& path, const std::vector<double>& data,
                 int nx, int ny, double lo, double hi);

/// 8-bit binary PNG (0 / 255).
void write_png_mask(const std::string& path, const std::vector<uint8_t>& mask,
                    int nx, int ny);

/// Raw float32 little-endian dump with a JSON sidecar describing shape,
/// dtype, endianness and element order. Writes base.raw and base.json.
void write_raw_map(const std::string& base, const std::vector<double>& data,
                   int nx, int ny);
std::vector<double> read_raw_map(const std::string& base, int& nx, int& ny);

void write_detections_csv(const std::string& path, const DetectionSet& det);
DetectionSet read_detections_csv(const std::string& path);

void write_gt_attributes_csv(const std::string& path, const GroundTruth& gt);
void write_gt_centers_csv(const std::string& path, const GroundTruth& gt);
std::vector<GroundTruth::Center> read_centers_csv(const std::string& path);

/// Ground-truth attribute rows (x, y, tangent_deg, width_px).
struct GtAttributeRow {
  int x = 0, y = 0;
  double tangent_deg = 0.0;
  double width_px = 0.0;
};
std::vector<GtAttributeRow> read_gt_attributes_csv(const std::string& path);

ChannelSelect channel_from_string(const std::string& s);

}  // namespace symfeat
