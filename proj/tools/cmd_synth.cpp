// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <memory>

#include "cli_common.hpp"
#include "symfeat/io.hpp"
#include "symfeat/synthgen.hpp"
#include "symfeat/version.hpp"

namespace symfeat::cli {

namespace {

struct SynthOpts {
  std::string preset = "edges1";
  std::string noise = "none";
  std::string out = "synth";
  uint64_t seed = 1;
};

void synth_run(const SynthOpts& opts) {
  const SceneSpec spec = make_preset(opts.preset, opts.seed);
  const NoiseLevel level = noise_level_from_string(opts.noise);
  auto [image, gt] = generate(spec);
  const ImageGrid noisy = add_noise(image, level, opts.seed * 31337 + 11);

  ensure_outdir(opts.out);
  write_png16(opts.out + "/image.png", noisy.pixels, noisy.width, noisy.height,
              0.0, 1.0);
  write_png_mask(opts.out + "/gt_mask.png", gt.mask, gt.nx, gt.ny);
  write_gt_attributes_csv(opts.out + "/gt_attributes.csv", gt);
  if (spec.kind == SceneKind::blobs)
    write_gt_centers_csv(opts.out + "/gt_centers.csv", gt);

  nlohmann::json j;
  j["version"] = kVersion;
  j["preset"] = opts.preset;
  j["kind"] = to_string(spec.kind);
  j["noise"] = opts.noise;
  j["seed"] = opts.seed;
  j["canvas"] = spec.canvas;
  j["shapes"] = spec.shapes.size();
  j["ridges"] = spec.ridges.size();
  j["circles"] = spec.circles.size();
  std::ofstream sf(opts.out + "/spec.json");
  if (!sf) throw IoError("cannot write spec.json");
  sf << j.dump(2) << "\n";
}

}  // namespace

void register_synth(CLI::App& app) {
  auto opts = std::make_shared<SynthOpts>();
  CLI::App* sub = app.add_subcommand(
      "synth", "Generate a synthetic test image with exact ground truth");
  sub->add_option("--preset", opts->preset,
                  "edges1|edges2|ridges1|ridges2|blobs-large|blobs-small")
      ->required();
  sub->add_option("--noise", opts->noise, "none | medium | severe");
  sub->add_option("--seed", opts->seed, "RNG seed");
  sub->add_option("--out,-o", opts->out, "Output directory");
  sub->callback([opts]() { synth_run(*opts); });
}

}  // namespace symfeat::cli
