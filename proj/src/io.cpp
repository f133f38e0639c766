// SPDX-License-Identifier: Apache-2.0
#include "symfeat/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace symfeat {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImageGrid read_png(const std::string& path, ChannelSelect channel) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  const int width = png_get_image_width(png, info);
  const int height = png_get_image_height(png, info);
  const png_byte color = png_get_color_type(png, info);
  png_byte depth = png_get_bit_depth(png, info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // little-endian words below
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  depth = png_get_bit_depth(png, info);
  const size_t stride = png_get_rowbytes(png, info);
  std::vector<png_byte> row(stride);

  if (channels == 3 && channel == ChannelSelect::automatic) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw UsageError(path + " is RGB; select a channel (red/green/blue/gray)");
  }

  ImageGrid img(width, height);
  const double maxval = depth == 16 ? 65535.0 : 255.0;
  for (int y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      if (channels == 1) {
        v = depth == 16
                ? reinterpret_cast<uint16_t*>(row.data())[x]
                : row[x];
      } else {
        double rgb[3];
        for (int c = 0; c < 3; ++c)
          rgb[c] = depth == 16
                       ? reinterpret_cast<uint16_t*>(row.data())[3 * x + c]
                       : row[3 * x + c];
        switch (channel) {
          case ChannelSelect::red: v = rgb[0]; break;
          case ChannelSelect::green: v = rgb[1]; break;
          case ChannelSelect::blue: v = rgb[2]; break;
          default: v = 0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]; break;
        }
      }
      img.at(x, y) = v / maxval;
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

ImageGrid read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5") throw IoError(path + ": not a PGM file");
  const auto next_token = [&in, &path]() {
    std::string tok;
    for (;;) {
      if (!(in >> tok)) throw IoError(path + ": truncated PGM header");
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
  };
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    throw IoError(path + ": bad PGM header");

  ImageGrid img(width, height);
  if (magic == "P2") {
    for (double& v : img.pixels) {
      long raw;
      if (!(in >> raw)) throw IoError(path + ": truncated PGM data");
      v = static_cast<double>(raw) / maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(static_cast<size_t>(width) * height * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!in) throw IoError(path + ": truncated PGM data");
    for (size_t i = 0; i < img.size(); ++i) {
      const unsigned raw = bytes == 2
                               ? (buf[2 * i] << 8) | buf[2 * i + 1]  // big-endian
                               : buf[i];
      img.pixels[i] = static_cast<double>(raw) / maxval;
    }
  }
  return img;
}

}  // namespace

ImageGrid read_image(const std::string& path, ChannelSelect channel) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path);
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  probe.close();
  if (magic[0] == 0x89 && magic[1] == 'P') return read_png(path, channel);
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5'))
    return read_pgm(path);
  throw IoError(path + ": unsupported image format (PNG or PGM expected)");
}

void write_png16(const std::string& path, const std::vector<double>& data,
                 int nx, int ny, double lo, double hi) {
  if (data.size() != static_cast<size_t>(nx) * ny)
    throw UsageError("write_png16: size mismatch");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng failed to encode " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, nx, ny, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const double span = hi > lo ? hi - lo : 1.0;
  std::vector<uint16_t> row(nx);
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      double v = (data[static_cast<size_t>(y) * nx + x] - lo) / span;
      v = std::clamp(v, 0.0, 1.0);
      const uint16_t q = static_cast<uint16_t>(std::lround(v * 65535.0));
      row[x] = static_cast<uint16_t>((q >> 8) | (q << 8));  // network order
    }
    png_write_row(png, reinterpret_cast<png_bytep>(row.data()));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_png_mask(const std::string& path, const std::vector<uint8_t>& mask,
                    int nx, int ny) {
  if (mask.size() != static_cast<size_t>(nx) * ny)
    throw UsageError("write_png_mask: size mismatch");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng failed to encode " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, nx, ny, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<uint8_t> row(nx);
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x)
      row[x] = mask[static_cast<size_t>(y) * nx + x] ? 255 : 0;
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_raw_map(const std::string& base, const std::vector<double>& data,
                   int nx, int ny) {
  if (data.size() != static_cast<size_t>(nx) * ny)
    throw UsageError("write_raw_map: size mismatch");
  std::ofstream raw(base + ".raw", std::ios::binary);
  if (!raw) throw IoError("cannot write " + base + ".raw");
  for (double v : data) {
    const float f = static_cast<float>(v);
    raw.write(reinterpret_cast<const char*>(&f), sizeof(f));
  }
  nlohmann::json meta;
  meta["shape"] = {ny, nx};
  meta["dtype"] = "float32";
  meta["endianness"] = "little";
  meta["order"] = "row-major";
  std::ofstream side(base + ".json");
  if (!side) throw IoError("cannot write " + base + ".json");
  side << meta.dump(2) << "\n";
}

std::vector<double> read_raw_map(const std::string& base, int& nx, int& ny) {
  std::ifstream side(base + ".json");
  if (!side) throw IoError("cannot open " + base + ".json");
  nlohmann::json meta;
  side >> meta;
  ny = meta.at("shape").at(0).get<int>();
  nx = meta.at("shape").at(1).get<int>();
  if (meta.at("dtype") != "float32")
    throw IoError(base + ": unsupported dtype");
  std::ifstream raw(base + ".raw", std::ios::binary);
  if (!raw) throw IoError("cannot open " + base + ".raw");
  std::vector<double> data(static_cast<size_t>(nx) * ny);
  for (double& v : data) {
    float f;
    raw.read(reinterpret_cast<char*>(&f), sizeof(f));
    if (!raw) throw IoError(base + ".raw: truncated");
    v = f;
  }
  return data;
}

void write_detections_csv(const std::string& path, const DetectionSet& det) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "x,y,orientation_deg,width_px,height\n";
  char line[160];
  for (const auto& p : det.points) {
    std::snprintf(line, sizeof(line), "%d,%d,%.4f,%.4f,%.6f\n", p.x, p.y,
                  p.orientation * 180.0 / M_PI, p.width, p.height);
    out << line;
  }
}

DetectionSet read_detections_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  DetectionSet det;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DetectionSet::Point p;
    double deg;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &p.x, &p.y, &deg,
                    &p.width, &p.height) != 5)
      throw IoError(path + ": malformed row '" + line + "'");
    p.orientation = deg * M_PI / 180.0;
    det.points.push_back(p);
  }
  return det;
}

void write_gt_attributes_csv(const std::string& path, const GroundTruth& gt) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "x,y,tangent_deg,width_px\n";
  char line[120];
  for (int y = 0; y < gt.ny; ++y)
    for (int x = 0; x < gt.nx; ++x) {
      const size_t i = static_cast<size_t>(y) * gt.nx + x;
      if (!gt.mask[i]) continue;
      const double deg =
          std::isnan(gt.orientation[i]) ? 0.0 : gt.orientation[i] * 180.0 / M_PI;
      std::snprintf(line, sizeof(line), "%d,%d,%.4f,%.4f\n", x, y, deg,
                    gt.width[i]);
      out << line;
    }
}

std::vector<GtAttributeRow> read_gt_attributes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<GtAttributeRow> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    GtAttributeRow r;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &r.x, &r.y, &r.tangent_deg,
                    &r.width_px) != 4)
      throw IoError(path + ": malformed row '" + line + "'");
    rows.push_back(r);
  }
  return rows;
}

void write_gt_centers_csv(const std::string& path, const GroundTruth& gt) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "x,y,diameter_px\n";
  char line[120];
  for (const auto& c : gt.centers) {
    std::snprintf(line, sizeof(line), "%.4f,%.4f,%.4f\n", c.x, c.y, c.diameter);
    out << line;
  }
}

std::vector<GroundTruth::Center> read_centers_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<GroundTruth::Center> centers;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    GroundTruth::Center c;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &c.x, &c.y, &c.diameter) != 3)
      throw IoError(path + ": malformed row '" + line + "'");
    centers.push_back(c);
  }
  return centers;
}

ChannelSelect channel_from_string(const std::string& s) {
  if (s == "auto") return ChannelSelect::automatic;
  if (s == "red") return ChannelSelect::red;
  if (s == "green") return ChannelSelect::green;
  if (s == "blue") return ChannelSelect::blue;
  if (s == "gray") return ChannelSelect::gray;
  throw UsageError("unknown channel: " + s);
}

}  // namespace symfeat
