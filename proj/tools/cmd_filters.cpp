// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <memory>

#include "cli_common.hpp"
#include "symfeat/io.hpp"
#include "symfeat/measures.hpp"
#include "symfeat/version.hpp"

namespace symfeat::cli {

namespace {

struct FiltersOpts {
  std::string kind = "odd";  // odd | even | blob
  std::string out = "filters";
  int k = 1;
  double alpha = 0.5;
  double min_width = 3.0, max_width = 10.0, max_length = 15.0;
  int scales_per_octave = 4, n_orientations = 8;
  double offset = 0.0;
  bool dump_wavelets = false;
};

void filters_run(const FiltersOpts& opts) {
  apply_thread_env();
  const WaveletPair pair = make_wavelet_pair(opts.k);
  const double even_radius = wavelet_constants(pair.even).radius;

  UserBankParams user;
  user.alpha = opts.kind == "blob" ? 1.0 : opts.alpha;
  user.min_feature_width = opts.min_width;
  user.max_feature_width = opts.max_width;
  user.max_feature_length = opts.max_length;
  user.scales_per_octave = opts.scales_per_octave;
  user.n_orientations = opts.n_orientations;

  GeneratorKind kind;
  const Wavelet1D* psi;
  if (opts.kind == "odd") {
    kind = GeneratorKind::odd_x_gauss;
    psi = &pair.odd;
  } else if (opts.kind == "even") {
    kind = GeneratorKind::even_x_gauss;
    psi = &pair.even;
  } else if (opts.kind == "blob") {
    kind = GeneratorKind::even_x_even;
    psi = &pair.even;
  } else {
    throw UsageError("filters: --kind must be odd, even, or blob");
  }
  const MoleculeBank bank = make_bank(user, kind, *psi, even_radius, opts.offset);

  ensure_outdir(opts.out);
  double peak = 0.0;
  for (const auto& f : bank.filters)
    for (double t : f.taps) peak = std::max(peak, std::fabs(t));

  char name[128];
  for (int j = 0; j < bank.n_scales(); ++j)
    for (int t = 0; t < bank.n_thetas(); ++t) {
      const Filter2D& f = bank.filter(j, t);
      std::snprintf(name, sizeof(name), "%s/filter_j%02d_t%02d.png",
                    opts.out.c_str(), j, t);
      write_png16(name, f.taps, f.side(), f.side(), -peak, peak);
    }

  nlohmann::json m;
  m["version"] = kVersion;
  m["kind"] = to_string(bank.params.kind);
  m["k"] = opts.k;
  m["alpha"] = bank.params.alpha;
  m["a"] = bank.params.a;
  m["c1"] = bank.params.c1;
  m["c2"] = bank.params.c2;
  m["scaleOffset"] = bank.params.scale_offset;
  m["scales"] = bank.params.scales;
  m["orientations"] = bank.params.orientations;
  m["radiusPx"] = bank.radius_px;
  m["kPsiO"] = bank.k_psi_o();
  m["minFeatureWidth"] = user.min_feature_width;
  m["maxFeatureWidth"] = user.max_feature_width;
  m["maxFeatureLength"] = user.max_feature_length;
  m["scalesPerOctave"] = user.scales_per_octave;
  m["nOrientations"] = user.n_orientations;
  m["pngScaleAbs"] = peak;  // PNG gray levels span [-peak, peak]
  std::ofstream mf(opts.out + "/manifest.json");
  if (!mf) throw IoError("cannot write manifest");
  mf << m.dump(2) << "\n";

  if (opts.dump_wavelets) {
    for (const auto& [label, w] :
         {std::pair<const char*, const Wavelet1D*>{"psi_odd", &pair.odd},
          {"psi_even", &pair.even}}) {
      std::ofstream csv(opts.out + "/" + label + ".csv");
      if (!csv) throw IoError("cannot write wavelet CSV");
      csv << "x,value\n";
      for (int i = 0; i < w->size(); ++i)
        csv << w->x_at(i) << ',' << w->samples[i] << "\n";
    }
  }
}

}  // namespace

void register_filters(CLI::App& app) {
  auto opts = std::make_shared<FiltersOpts>();
  CLI::App* sub = app.add_subcommand(
      "filters", "Dump a filter bank as images plus a JSON manifest");
  sub->add_option("--kind", opts->kind, "odd | even | blob")->required();
  sub->add_option("--out,-o", opts->out, "Output directory");
  sub->add_option("--k", opts->k, "Gaussian derivative order");
  sub->add_option("--alpha", opts->alpha, "Anisotropy in [0,1]");
  sub->add_option("--min-width", opts->min_width, "Smallest feature width, px");
  sub->add_option("--max-width", opts->max_width, "Largest feature width, px");
  sub->add_option("--max-length", opts->max_length, "Largest feature length, px");
  sub->add_option("--scales-per-octave", opts->scales_per_octave,
                  "Scale ladder density");
  sub->add_option("--n-orientations", opts->n_orientations, "Orientation count");
  sub->add_option("--offset", opts->offset, "Scale offset of the bank");
  sub->add_flag("--dump-wavelets", opts->dump_wavelets,
                "Also write the sampled 1D wavelets as CSV (x,value)");
  sub->callback([opts]() { filters_run(*opts); });
}

}  // namespace symfeat::cli
