// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>

#include "cli_common.hpp"
#include "symfeat/io.hpp"
#include "symfeat/measures.hpp"
#include "symfeat/postprocess.hpp"
#include "symfeat/reference.hpp"
#include "symfeat/version.hpp"

namespace symfeat::cli {

namespace {

struct DetectOpts {
  std::string input;
  std::string kind = "edge";
  std::string out = "out";
  std::string config_path;
  std::string channel = "auto";
  std::string polarity = "both";
  std::string blob_shape = "circle";
  std::string mask_path;
  int k = -1;
  double alpha = NAN;
  double min_width = NAN, max_width = NAN, max_length = NAN;
  int scales_per_octave = -1, n_orientations = -1;
  double beta = NAN, offset = NAN, threshold = NAN;
  std::vector<std::string> bands;
};

struct Resolved {
  int k;
  UserBankParams bank;
  MeasureParams measure;
  double threshold;
  std::vector<UserBankParams> bands;
};

void overlay_config(const CLI::App* sub, DetectOpts& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw IoError("cannot open config " + o.config_path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw UsageError("config " + o.config_path + ": " + e.what());
  }
  const auto given = [&](const std::string& flag) {
    return sub->count(flag) > 0;
  };
  const auto load = [&](const char* key, auto& field, const char* flag) {
    if (!given(flag) && cfg.contains(key)) cfg.at(key).get_to(field);
  };
  load("kind", o.kind, "--kind");
  load("channel", o.channel, "--channel");
  load("polarity", o.polarity, "--polarity");
  load("blobShape", o.blob_shape, "--blob-shape");
  load("k", o.k, "--k");
  load("alpha", o.alpha, "--alpha");
  load("minFeatureWidth", o.min_width, "--min-width");
  load("maxFeatureWidth", o.max_width, "--max-width");
  load("maxFeatureLength", o.max_length, "--max-length");
  load("scalesPerOctave", o.scales_per_octave, "--scales-per-octave");
  load("nOrientations", o.n_orientations, "--n-orientations");
  load("beta", o.beta, "--beta");
  load("offset", o.offset, "--offset");
  load("threshold", o.threshold, "--threshold");
  if (!given("--band") && cfg.contains("bands"))
    for (const auto& b : cfg.at("bands")) o.bands.push_back(b.get<std::string>());
}

Resolved resolve(const DetectOpts& o) {
  Resolved r;
  const bool edge = o.kind == "edge";
  const bool ridge = o.kind == "ridge";
  const bool blob = o.kind == "blob";
  if (!edge && !ridge && !blob)
    throw UsageError("detect: --kind must be edge, ridge, or blob");

  r.k = o.k > 0 ? o.k : (ridge ? 2 : 1);
  r.bank.alpha = !std::isnan(o.alpha) ? o.alpha
                 : edge              ? 0.5
                 : ridge             ? 0.2
                                     : 1.0;
  if (blob) r.bank.alpha = 1.0;  // blob banks are isotropic by definition
  r.bank.min_feature_width = !std::isnan(o.min_width) ? o.min_width
                             : blob                   ? 10.0
                                                      : 3.0;
  r.bank.max_feature_width = !std::isnan(o.max_width) ? o.max_width
                             : blob                   ? 20.0
                                                      : 10.0;
  r.bank.max_feature_length = !std::isnan(o.max_length) ? o.max_length
                              : blob                    ? 20.0
                                                        : 15.0;
  r.bank.scales_per_octave =
      o.scales_per_octave > 0 ? o.scales_per_octave : (edge ? 4 : ridge ? 6 : 3);
  r.bank.n_orientations = o.n_orientations > 0 ? o.n_orientations : 16;

  r.measure.beta = !std::isnan(o.beta) ? o.beta : (edge ? 0.03 : ridge ? 0.05 : 0.06);
  r.measure.offset = !std::isnan(o.offset) ? o.offset : (blob ? 0.0 : 1.0);
  if (o.polarity == "positive")
    r.measure.polarity = ContrastPolarity::positive;
  else if (o.polarity == "negative")
    r.measure.polarity = ContrastPolarity::negative;
  else if (o.polarity == "both")
    r.measure.polarity = ContrastPolarity::both;
  else
    throw UsageError("detect: bad polarity " + o.polarity);
  if (o.blob_shape == "circle")
    r.measure.blob_symmetry = BlobSymmetry::circle;
  else if (o.blob_shape == "square")
    r.measure.blob_symmetry = BlobSymmetry::square;
  else
    throw UsageError("detect: bad blob shape " + o.blob_shape);

  r.threshold = !std::isnan(o.threshold) ? o.threshold : (blob ? 0.03 : 0.3);

  for (const std::string& spec : o.bands) {
    if (!ridge) throw UsageError("detect: --band applies to ridge only");
    UserBankParams band = r.bank;
    if (std::sscanf(spec.c_str(), "%lf,%lf,%lf", &band.min_feature_width,
                    &band.max_feature_width, &band.max_feature_length) != 3)
      throw UsageError("detect: --band expects minWidth,maxWidth,maxLength");
    r.bands.push_back(band);
  }
  return r;
}

nlohmann::json manifest_json(const DetectOpts& o, const Resolved& r) {
  nlohmann::json m;
  m["version"] = kVersion;
  m["input"] = o.input;
  m["kind"] = o.kind;
  m["channel"] = o.channel;
  m["k"] = r.k;
  m["alpha"] = r.bank.alpha;
  m["minFeatureWidth"] = r.bank.min_feature_width;
  m["maxFeatureWidth"] = r.bank.max_feature_width;
  m["maxFeatureLength"] = r.bank.max_feature_length;
  m["scalesPerOctave"] = r.bank.scales_per_octave;
  m["nOrientations"] = r.bank.n_orientations;
  m["beta"] = r.measure.beta;
  m["offset"] = r.measure.offset;
  m["threshold"] = r.threshold;
  m["polarity"] = o.polarity;
  m["blobShape"] = o.blob_shape;
  m["mask"] = o.mask_path;
  m["bands"] = o.bands;
  return m;
}

void write_map(const std::string& dir, const std::string& name,
               const std::vector<double>& data, int nx, int ny, double lo,
               double hi) {
  write_png16(dir + "/" + name + ".png", data, nx, ny, lo, hi);
  write_raw_map(dir + "/" + name, data, nx, ny);
}

void write_detections_json(const std::string& path, const DetectionSet& det,
                           const std::string& kind) {
  nlohmann::json j;
  j["kind"] = kind;
  j["points"] = nlohmann::json::array();
  for (const auto& p : det.points)
    j["points"].push_back({{"x", p.x},
                           {"y", p.y},
                           {"orientation_deg", p.orientation * 180.0 / M_PI},
                           {"width_px", p.width},
                           {"height", p.height}});
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

void detect_run(const CLI::App* sub, DetectOpts opts) {
  apply_thread_env();
  overlay_config(sub, opts);
  const Resolved r = resolve(opts);

  ChannelSelect channel = channel_from_string(opts.channel);
  if (channel == ChannelSelect::automatic && opts.kind == "ridge")
    channel = ChannelSelect::green;  // vessels live in the green channel
  const ImageGrid image = read_image(opts.input, channel);

  const WaveletPair pair = make_wavelet_pair(r.k);
  const double even_radius = wavelet_constants(pair.even).radius;

  FeatureResult result;
  if (opts.kind == "edge") {
    const MoleculeBank odd_bank =
        make_bank(r.bank, GeneratorKind::odd_x_gauss, pair.odd, even_radius);
    const MoleculeBank even_bank =
        make_bank(r.bank, GeneratorKind::even_x_gauss, pair.even, even_radius,
                  r.measure.offset);
    result = edge_measure(analyze(image, odd_bank), analyze(image, even_bank),
                          odd_bank, r.measure);
  } else if (opts.kind == "ridge") {
    if (!r.bands.empty()) {
      result = multiband_ridge(image, r.bands, pair.even, pair.odd, r.measure);
    } else {
      const MoleculeBank even_bank =
          make_bank(r.bank, GeneratorKind::even_x_gauss, pair.even, even_radius);
      const MoleculeBank odd_bank =
          make_bank(r.bank, GeneratorKind::odd_x_gauss, pair.odd, even_radius,
                    r.measure.offset);
      result = ridge_measure(analyze(image, even_bank),
                             analyze(image, odd_bank), even_bank, r.measure);
    }
  } else {
    const MoleculeBank even2_bank =
        make_bank(r.bank, GeneratorKind::even_x_even, pair.even, even_radius);
    const MoleculeBank odd_bank =
        make_bank(r.bank, GeneratorKind::odd_x_gauss, pair.odd, even_radius,
                  r.measure.offset);
    result = blob_measure(analyze(image, even2_bank),
                          analyze(image, odd_bank), even2_bank, r.measure);
  }

  ensure_outdir(opts.out);
  const int nx = result.nx, ny = result.ny;
  write_map(opts.out, "measure", result.measure, nx, ny, 0.0, 1.0);
  if (!result.orientation.empty()) {
    std::vector<double> ori = result.orientation;
    for (double& v : ori)
      if (std::isnan(v)) v = 0.0;
    write_map(opts.out, "orientation", ori, nx, ny, -M_PI / 2.0, M_PI / 2.0);
  }
  if (!result.width.empty()) {
    double wmax = 1.0;
    for (double v : result.width) wmax = std::max(wmax, v);
    write_map(opts.out, "width", result.width, nx, ny, 0.0, wmax);
  }
  if (!result.height.empty()) {
    double lo = 0.0, hi = 0.0;
    for (double v : result.height) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    write_map(opts.out, "height", result.height, nx, ny, lo, hi);
  }

  DetectionSet det;
  std::vector<uint8_t> binary;
  if (opts.kind == "blob") {
    std::vector<uint8_t> foreground;
    if (!opts.mask_path.empty()) {
      const ImageGrid m = read_image(opts.mask_path, ChannelSelect::gray);
      if (m.width != nx || m.height != ny)
        throw UsageError("detect: foreground mask size mismatch");
      foreground.resize(m.size());
      for (size_t i = 0; i < m.size(); ++i) foreground[i] = m.pixels[i] > 0.5;
    }
    det = blob_centers(result, r.threshold,
                       foreground.empty() ? nullptr : &foreground);
    binary.assign(result.size(), 0);
    for (size_t i = 0; i < result.size(); ++i) {
      const bool keep = result.measure[i] > 0.0 &&
                        result.measure[i] >= r.threshold &&
                        (foreground.empty() || foreground[i]);
      binary[i] = keep ? 1 : 0;
    }
  } else {
    binary = threshold_and_thin(result, r.threshold);
    det = detections_from_map(result, binary,
                              opts.kind == "edge" ? DetectionSet::Kind::edge
                                                  : DetectionSet::Kind::ridge);
  }
  write_png_mask(opts.out + "/binary.png", binary, nx, ny);
  write_detections_csv(opts.out + "/detections.csv", det);
  write_detections_json(opts.out + "/detections.json", det, opts.kind);

  std::ofstream mf(opts.out + "/manifest.json");
  if (!mf) throw IoError("cannot write manifest");
  mf << manifest_json(opts, r).dump(2) << "\n";
}

}  // namespace

void register_detect(CLI::App& app) {
  auto opts = std::make_shared<DetectOpts>();
  CLI::App* sub = app.add_subcommand(
      "detect", "Detect features in an image and write measure maps");
  sub->add_option("--input,-i", opts->input, "Input image (PNG or PGM)")
      ->required();
  sub->add_option("--kind", opts->kind, "edge | ridge | blob")->required();
  sub->add_option("--out,-o", opts->out, "Output directory");
  sub->add_option("--config", opts->config_path, "JSON config file");
  sub->add_option("--channel", opts->channel,
                  "Channel for RGB inputs: red|green|blue|gray");
  sub->add_option("--k", opts->k, "Gaussian derivative order of the pair");
  sub->add_option("--alpha", opts->alpha, "Anisotropy in [0,1]");
  sub->add_option("--min-width", opts->min_width, "Smallest feature width, px");
  sub->add_option("--max-width", opts->max_width, "Largest feature width, px");
  sub->add_option("--max-length", opts->max_length, "Largest feature length, px");
  sub->add_option("--scales-per-octave", opts->scales_per_octave,
                  "Scale ladder density");
  sub->add_option("--n-orientations", opts->n_orientations,
                  "Orientation count");
  sub->add_option("--beta", opts->beta, "Minimal contrast (soft threshold)");
  sub->add_option("--offset", opts->offset,
                  "Scale offset of the secondary bank (j_e / j_o)");
  sub->add_option("--threshold", opts->threshold,
                  "Binary map threshold in [0,1]");
  sub->add_option("--polarity", opts->polarity, "positive | negative | both");
  sub->add_option("--blob-shape", opts->blob_shape, "circle | square");
  sub->add_option("--mask", opts->mask_path, "Foreground mask (blob only)");
  sub->add_option("--band", opts->bands,
                  "Ridge band minWidth,maxWidth,maxLength (repeatable)");
  sub->callback([opts, sub]() { detect_run(sub, *opts); });
}

}  // namespace symfeat::cli
