// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <memory>

#include "cli_common.hpp"
#include "symfeat/eval.hpp"
#include "symfeat/io.hpp"
#include "symfeat/version.hpp"

namespace symfeat::cli {

namespace {

struct EvalOpts {
  std::string kind = "edge";
  std::string gt_dir;
  std::string det_dir;
  std::string out = "report.json";
  std::string csv;
  double radius = NAN;
  bool include_pratt = false;
};

std::vector<uint8_t> load_mask(const std::string& path, int& nx, int& ny) {
  const ImageGrid img = read_image(path, ChannelSelect::gray);
  nx = img.width;
  ny = img.height;
  std::vector<uint8_t> mask(img.size());
  for (size_t i = 0; i < img.size(); ++i) mask[i] = img.pixels[i] > 0.5;
  return mask;
}

void eval_run(const EvalOpts& opts) {
  const bool blob = opts.kind == "blob";
  if (opts.kind != "edge" && opts.kind != "ridge" && !blob)
    throw UsageError("eval: --kind must be edge, ridge, or blob");
  const double radius = !std::isnan(opts.radius) ? opts.radius : (blob ? 6.0 : 3.0);

  EvalReport report;
  nlohmann::json j;
  j["version"] = kVersion;
  j["kind"] = opts.kind;
  j["radius"] = radius;

  if (blob) {
    const auto gt_centers = read_centers_csv(opts.gt_dir + "/gt_centers.csv");
    const DetectionSet det =
        read_detections_csv(opts.det_dir + "/detections.csv");
    std::vector<BlobPoint> gt_pts, det_pts;
    for (const auto& c : gt_centers) gt_pts.push_back({c.x, c.y, c.diameter});
    for (const auto& p : det.points)
      det_pts.push_back({double(p.x), double(p.y), p.width});
    const BlobScore score = blob_score(gt_pts, det_pts, radius);
    report.tp = score.tp;
    report.fp = score.fp;
    report.mae_center_px = score.mae_center;
    report.mae_width_px = score.mae_width;
    report.tpr = gt_pts.empty() ? 0.0 : double(score.tp) / gt_pts.size();
    report.sr = report.tpr;
    j["tp"] = score.tp;
    j["fp"] = score.fp;
    j["tpr"] = report.tpr;
    j["sr"] = report.sr;
    if (score.mae_center) j["mae_center_px"] = *score.mae_center;
    if (score.mae_width) j["mae_width_px"] = *score.mae_width;
  } else {
    int nx = 0, ny = 0, dnx = 0, dny = 0;
    const auto gt_mask = load_mask(opts.gt_dir + "/gt_mask.png", nx, ny);
    const auto det_mask = load_mask(opts.det_dir + "/binary.png", dnx, dny);
    if (nx != dnx || ny != dny)
      throw UsageError("eval: ground-truth and detection image sizes differ");

    report.fom = fom(gt_mask, det_mask, nx, ny);
    j["fom"] = report.fom;
    if (opts.include_pratt) j["pratt_fom"] = pratt_fom(gt_mask, det_mask, nx, ny);

    const auto gt_rows = read_gt_attributes_csv(opts.gt_dir + "/gt_attributes.csv");
    const DetectionSet det =
        read_detections_csv(opts.det_dir + "/detections.csv");

    std::vector<AttributedPoint> gt_ori, det_ori;
    for (const auto& r : gt_rows)
      gt_ori.push_back({r.x, r.y, r.tangent_deg * M_PI / 180.0});
    for (const auto& p : det.points)
      det_ori.push_back({p.x, p.y, p.orientation});
    const MaeResult ori =
        mae_attribute(gt_ori, det_ori, nx, ny, radius, AttributeMetric::torus);
    report.mae_orientation_deg = ori.mae;
    report.tpr = ori.tpr;
    report.tp = ori.tp;
    j["tpr"] = ori.tpr;
    j["tp"] = ori.tp;
    if (ori.mae) j["mae_orientation_deg"] = *ori.mae;

    if (opts.kind == "ridge") {
      std::vector<AttributedPoint> gt_w, det_w;
      for (const auto& r : gt_rows) gt_w.push_back({r.x, r.y, r.width_px});
      for (const auto& p : det.points) det_w.push_back({p.x, p.y, p.width});
      const MaeResult w =
          mae_attribute(gt_w, det_w, nx, ny, radius, AttributeMetric::linear);
      report.mae_width_px = w.mae;
      if (w.mae) j["mae_width_px"] = *w.mae;

      // Width differences for the offset-independent spread statistic.
      std::vector<uint8_t> dmask(static_cast<size_t>(nx) * ny, 0);
      std::vector<double> dwidth(dmask.size(), 0.0);
      for (const auto& p : det.points) {
        const size_t i = static_cast<size_t>(p.y) * nx + p.x;
        dmask[i] = 1;
        dwidth[i] = p.width;
      }
      const Edt edt = edt_squared(dmask, nx, ny);
      std::vector<double> diffs;
      for (const auto& r : gt_rows) {
        const size_t i = static_cast<size_t>(r.y) * nx + r.x;
        if (edt.dist2[i] < 0 || double(edt.dist2[i]) > radius * radius) continue;
        diffs.push_back(dwidth[edt.site[i]] - r.width_px);
      }
      if (diffs.size() >= 2) {
        report.sd_width_px = width_sd(diffs);
        j["sd_width_px"] = *report.sd_width_px;
      }
    }
  }

  std::ofstream out(opts.out);
  if (!out) throw IoError("cannot write " + opts.out);
  out << j.dump(2) << "\n";

  if (!opts.csv.empty()) {
    std::ofstream csv(opts.csv);
    if (!csv) throw IoError("cannot write " + opts.csv);
    csv << "kind,fom,mae_orientation_deg,mae_width_px,tpr,tp,fp,"
           "mae_center_px,sd_width_px,sr\n";
    const auto opt = [](const std::optional<double>& v) {
      return v ? std::to_string(*v) : std::string();
    };
    csv << opts.kind << ',' << report.fom << ','
        << opt(report.mae_orientation_deg) << ',' << opt(report.mae_width_px)
        << ',' << report.tpr << ',' << report.tp << ',' << report.fp << ','
        << opt(report.mae_center_px) << ',' << opt(report.sd_width_px) << ','
        << report.sr << "\n";
  }
}

}  // namespace

void register_eval(CLI::App& app) {
  auto opts = std::make_shared<EvalOpts>();
  CLI::App* sub = app.add_subcommand(
      "eval", "Score detection outputs against a ground-truth bundle");
  sub->add_option("--kind", opts->kind, "edge | ridge | blob")->required();
  sub->add_option("--gt", opts->gt_dir, "Ground-truth directory (synth output)")
      ->required();
  sub->add_option("--det", opts->det_dir, "Detection directory (detect output)")
      ->required();
  sub->add_option("--out,-o", opts->out, "Report JSON path");
  sub->add_option("--csv", opts->csv, "Also write a flat CSV row");
  sub->add_option("--radius", opts->radius,
                  "True-positive radius, px (default 3; blobs 6)");
  sub->add_flag("--pratt", opts->include_pratt,
                "Include the original Pratt figure of merit");
  sub->callback([opts]() { eval_run(*opts); });
}

}  // namespace symfeat::cli
