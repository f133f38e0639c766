// SPDX-License-Identifier: Apache-2.0
#include "symfeat/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symfeat/reference.hpp"

namespace symfeat {

namespace {

constexpr double kSupportTol = 1e-4;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

void check_same_shape(const CoefficientStack& a, const CoefficientStack& b) {
  if (a.n_scales != b.n_scales || a.n_thetas != b.n_thetas ||
      a.width != b.width || a.height != b.height)
    throw UsageError("measures: mismatched coefficient stack dimensions");
}

/// Per-pixel argmax of |coeff| over (j, theta); ties go to the smallest
/// (j, theta) index pair in scale-major order.
void argmax_stack(const CoefficientStack& s, std::vector<int>& jmap,
                  std::vector<int>& tmap, std::vector<double>& vmap) {
  const size_t n = s.slice_size();
  jmap.assign(n, 0);
  tmap.assign(n, 0);
  vmap.assign(n, -1.0);
  for (int j = 0; j < s.n_scales; ++j)
    for (int t = 0; t < s.n_thetas; ++t) {
      const double* slice = s.slice(j, t);
#pragma omp parallel for schedule(static)
      for (long i = 0; i < static_cast<long>(n); ++i) {
        const double v = std::fabs(slice[i]);
        if (v > vmap[i]) {
          vmap[i] = v;
          jmap[i] = j;
          tmap[i] = t;
        }
      }
    }
}

struct Filter1D {
  int half = 0;
  std::vector<double> taps;  // index u + half
};

Filter1D sample_filter_1d(const Wavelet1D& psi, double lambda) {
  Filter1D f;
  f.half = std::max(
      1, static_cast<int>(std::ceil(psi.support_radius(kSupportTol) / lambda)));
  f.taps.resize(2 * f.half + 1);
  double sum = 0.0, sabs = 0.0;
  for (int u = -f.half; u <= f.half; ++u) {
    const double v = lambda * psi.sample_at(lambda * u);
    f.taps[u + f.half] = v;
    sum += v;
    sabs += std::fabs(v);
  }
  if (sabs <= 0.0) throw NumericError("edge_measure_1d: zero filter");
  const double dc = sum / sabs;
  sabs = 0.0;
  for (double& v : f.taps) {
    v -= dc * std::fabs(v);
    sabs += std::fabs(v);
  }
  for (double& v : f.taps) v /= sabs;
  return f;
}

std::vector<double> correlate_1d(const std::vector<double>& signal,
                                 const Filter1D& f) {
  const int n = static_cast<int>(signal.size());
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int u = -f.half; u <= f.half; ++u)
      acc += signal[reflect_index(i + u, n)] * f.taps[u + f.half];
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::vector<double> edge_measure_1d(const std::vector<double>& signal,
                                    const Wavelet1D& psi_o,
                                    const Wavelet1D& psi_e, double a,
                                    int n_scales, double offset, double beta,
                                    double base_dilation) {
  if (n_scales < 1) throw UsageError("edge_measure_1d: need at least one scale");
  if (psi_o.symmetry != Symmetry::odd || psi_e.symmetry != Symmetry::even)
    throw UsageError("edge_measure_1d: wavelet symmetry mismatch");
  const double k_psi_o = wavelet_constants(psi_o).k_psi_o;

  std::vector<std::vector<double>> odd(n_scales), even(n_scales);
  for (int j = 0; j < n_scales; ++j) {
    odd[j] = correlate_1d(signal,
                          sample_filter_1d(psi_o, base_dilation * std::pow(a, j)));
    even[j] = correlate_1d(
        signal, sample_filter_1d(psi_e, base_dilation * std::pow(a, j - offset)));
  }

  double gmax = 0.0;
  for (const auto& c : odd)
    for (double v : c) gmax = std::max(gmax, std::fabs(v));
  const MeasureParams defaults;
  const double eps = defaults.epsilon_for(gmax);

  const int n = static_cast<int>(signal.size());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double sum_odd = 0.0, sum_abs_even = 0.0, max_odd = 0.0;
    for (int j = 0; j < n_scales; ++j) {
      sum_odd += odd[j][i];
      sum_abs_even += std::fabs(even[j][i]);
      max_odd = std::max(max_odd, std::fabs(odd[j][i]));
    }
    const double num =
        std::fabs(sum_odd) - sum_abs_even - beta * n_scales * std::fabs(k_psi_o);
    out[i] = clamp01(num / (n_scales * max_odd + eps));
  }
  return out;
}

std::vector<double> orientation_measure(const CoefficientStack& stack,
                                        const std::vector<int>& scale_index,
                                        const std::vector<int>& theta_index,
                                        const std::vector<double>& orientations) {
  const int nt = static_cast<int>(orientations.size());
  if (nt < 3)
    throw UsageError("orientation_measure: need at least 3 orientations");
  const double dtheta = M_PI / nt;
  const size_t n = stack.slice_size();
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const int j = scale_index[i];
    const int t = theta_index[i];
    const int tm = (t + nt - 1) % nt;
    const int tp = (t + 1) % nt;
    const double ym = std::fabs(stack.slice(j, tm)[i]);
    const double y0 = std::fabs(stack.slice(j, t)[i]);
    const double yp = std::fabs(stack.slice(j, tp)[i]);
    const double theta = orientations[t];
    const double refined =
        parabola_refine(theta - dtheta, theta, theta + dtheta, ym, y0, yp);
    // theta is the oscillatory (normal) axis; the tangent sits 90 deg away.
    out[i] = wrap_orientation(refined + M_PI / 2.0);
  }
  return out;
}

FeatureResult edge_measure(const CoefficientStack& stack_odd,
                           const CoefficientStack& stack_even,
                           const MoleculeBank& odd_bank,
                           const MeasureParams& params) {
  check_same_shape(stack_odd, stack_even);
  const int nj = stack_odd.n_scales;
  const double k_psi_o = odd_bank.k_psi_o();
  const double eps = params.epsilon_for(stack_odd.max_abs());

  FeatureResult r;
  r.nx = stack_odd.width;
  r.ny = stack_odd.height;
  const size_t n = r.size();
  r.measure.resize(n);
  r.height.resize(n);
  argmax_stack(stack_odd, r.scale_index, r.theta_index, r.measure);

  std::vector<double> vmax;
  vmax.swap(r.measure);
  r.measure.resize(n);

#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const int t = r.theta_index[i];
    double sum_odd = 0.0, sum_abs_even = 0.0;
    for (int j = 0; j < nj; ++j) {
      sum_odd += stack_odd.slice(j, t)[i];
      sum_abs_even += std::fabs(stack_even.slice(j, t)[i]);
    }
    const double num = std::fabs(sum_odd) - sum_abs_even -
                       params.beta * nj * std::fabs(k_psi_o);
    r.measure[i] = clamp01(num / (nj * vmax[i] + eps));
    r.height[i] =
        stack_odd.slice(r.scale_index[i], t)[i] / k_psi_o;
  }
  r.orientation = orientation_measure(stack_odd, r.scale_index, r.theta_index,
                                      odd_bank.params.orientations);
  return r;
}

namespace {

/// Width, per-scale expected coefficients and height shared by ridge and blob
/// measures. Returns the scale ladder's effective exponents.
struct ScaleLadder {
  std::vector<double> exponents;  // J[j] - scale_offset
  double a = 0.0;
};

ScaleLadder ladder_of(const MoleculeBank& bank) {
  ScaleLadder l;
  l.a = bank.params.a;
  l.exponents.resize(bank.params.scales.size());
  for (size_t i = 0; i < l.exponents.size(); ++i)
    l.exponents[i] = bank.params.scales[i] - bank.params.scale_offset;
  return l;
}

double refine_width(const CoefficientStack& s, const ScaleLadder& ladder,
                    double radius_px, size_t i, int jstar, int t) {
  const int nj = s.n_scales;
  if (jstar == 0 || jstar == nj - 1)
    return 2.0 * std::pow(ladder.a, -ladder.exponents[jstar]) * radius_px;
  const double ym = std::fabs(s.slice(jstar - 1, t)[i]);
  const double y0 = std::fabs(s.slice(jstar, t)[i]);
  const double yp = std::fabs(s.slice(jstar + 1, t)[i]);
  const double x = parabola_refine(ladder.exponents[jstar - 1],
                                   ladder.exponents[jstar],
                                   ladder.exponents[jstar + 1], ym, y0, yp);
  return 2.0 * std::pow(ladder.a, -x) * radius_px;
}

void apply_polarity(FeatureResult& r, ContrastPolarity polarity) {
  if (polarity == ContrastPolarity::both) return;
  const double keep = polarity == ContrastPolarity::positive ? 1.0 : -1.0;
  for (size_t i = 0; i < r.measure.size(); ++i)
    if (r.height[i] * keep < 0.0) r.measure[i] = 0.0;
}

}  // namespace

FeatureResult ridge_measure(const CoefficientStack& stack_even,
                            const CoefficientStack& stack_odd,
                            const MoleculeBank& even_bank,
                            const MeasureParams& params) {
  check_same_shape(stack_even, stack_odd);
  const int nj = stack_even.n_scales;
  if (nj < 3) throw UsageError("ridge_measure: need at least 3 scales");
  const double eps = params.epsilon_for(stack_even.max_abs());
  const ScaleLadder ladder = ladder_of(even_bank);
  const double radius_px = even_bank.radius_px;

  FeatureResult r;
  r.nx = stack_even.width;
  r.ny = stack_even.height;
  const size_t n = r.size();
  std::vector<double> vmax;
  argmax_stack(stack_even, r.scale_index, r.theta_index, vmax);
  r.measure.resize(n);
  r.width.resize(n);
  r.height.resize(n);

#pragma omp parallel
  {
    std::vector<double> k(nj);
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      const int jstar = r.scale_index[i];
      const int t = r.theta_index[i];
      const double wm =
          refine_width(stack_even, ladder, radius_px, i, jstar, t);
      r.width[i] = wm;

      for (int j = 0; j < nj; ++j)
        k[j] = even_bank.k_gen(std::pow(ladder.a, ladder.exponents[j]) * wm /
                               2.0);
      const double kstar = k[jstar];
      const double hm =
          kstar != 0.0 ? stack_even.slice(jstar, t)[i] / kstar : 0.0;
      r.height[i] = hm;

      double num = 0.0, den = 0.0;
      for (int j = 0; j < nj; ++j) {
        const double ce = stack_even.slice(j, t)[i];
        const double hk = hm * k[j];
        num += sign_of(hk) * ce;
        num -= std::fabs(stack_odd.slice(j, t)[i]);
        den += std::max(std::fabs(ce), std::fabs(hk));
      }
      num -= params.beta * nj * std::fabs(kstar);
      r.measure[i] = clamp01(num / (den + eps));
    }
  }
  r.orientation = orientation_measure(stack_even, r.scale_index, r.theta_index,
                                      even_bank.params.orientations);
  apply_polarity(r, params.polarity);
  return r;
}

FeatureResult blob_measure(const CoefficientStack& stack_even2,
                           const CoefficientStack& stack_odd,
                           const MoleculeBank& even2_bank,
                           const MeasureParams& params) {
  check_same_shape(stack_even2, stack_odd);
  if (even2_bank.params.kind != GeneratorKind::even_x_even)
    throw UsageError("blob_measure: primary bank must be tensor-squared even");
  if (std::fabs(even2_bank.params.alpha - 1.0) > 1e-12)
    throw UsageError("blob_measure: blob banks require alpha = 1");
  const int nj = stack_even2.n_scales;
  const int nt = stack_even2.n_thetas;
  if (nj < 3) throw UsageError("blob_measure: need at least 3 scales");
  if (params.blob_symmetry == BlobSymmetry::square && nt % 2 != 0)
    throw UsageError("blob_measure: square symmetry needs an even number of "
                     "orientations");
  const double eps = params.epsilon_for(stack_even2.max_abs());
  const ScaleLadder ladder = ladder_of(even2_bank);
  const double radius_px = even2_bank.radius_px;

  FeatureResult r;
  r.nx = stack_even2.width;
  r.ny = stack_even2.height;
  const size_t n = r.size();
  std::vector<double> vmax;
  argmax_stack(stack_even2, r.scale_index, r.theta_index, vmax);
  r.measure.resize(n);
  r.width.resize(n);
  r.height.resize(n);
  r.orientation.assign(n, std::numeric_limits<double>::quiet_NaN());

#pragma omp parallel
  {
    std::vector<double> k(nj);
    std::vector<int> thetas;
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      const int jstar = r.scale_index[i];
      const int tstar = r.theta_index[i];
      const double wm =
          refine_width(stack_even2, ladder, radius_px, i, jstar, tstar);
      r.width[i] = wm;

      for (int j = 0; j < nj; ++j)
        k[j] = even2_bank.k_gen(std::pow(ladder.a, ladder.exponents[j]) * wm /
                                2.0);
      const double kstar = k[jstar];
      const double hm =
          kstar != 0.0 ? stack_even2.slice(jstar, tstar)[i] / kstar : 0.0;
      r.height[i] = hm;
      const double s = sign_of(hm);

      // Rotation-invariance set: all orientations for circles, the most
      // significant one and its perpendicular for squares.
      thetas.clear();
      if (params.blob_symmetry == BlobSymmetry::circle) {
        for (int t = 0; t < nt; ++t) thetas.push_back(t);
      } else {
        thetas.push_back(tstar);
        thetas.push_back((tstar + nt / 2) % nt);
      }

      double num = 0.0, den = 0.0;
      for (int j = 0; j < nj; ++j) {
        double min_even = std::numeric_limits<double>::infinity();
        double max_odd = 0.0;
        for (int t : thetas) {
          min_even = std::min(min_even, s * stack_even2.slice(j, t)[i]);
          max_odd = std::max(max_odd, std::fabs(stack_odd.slice(j, t)[i]));
        }
        num += min_even - max_odd;
        den += std::max(std::fabs(stack_even2.slice(j, tstar)[i]),
                        std::fabs(hm) * std::fabs(k[j]));
      }
      num -= params.beta * nj * std::fabs(kstar);
      r.measure[i] = clamp01(num / (den + eps));
    }
  }
  apply_polarity(r, params.polarity);
  return r;
}

FeatureResult multiband_ridge(const ImageGrid& f,
                              const std::vector<UserBankParams>& bands,
                              const Wavelet1D& psi_e, const Wavelet1D& psi_o,
                              const MeasureParams& params) {
  if (bands.empty()) throw UsageError("multiband_ridge: no bands configured");
  const double even_radius = wavelet_constants(psi_e).radius;

  FeatureResult best;
  for (size_t b = 0; b < bands.size(); ++b) {
    const MoleculeBank even_bank =
        make_bank(bands[b], GeneratorKind::even_x_gauss, psi_e, even_radius);
    const MoleculeBank odd_bank =
        make_bank(bands[b], GeneratorKind::odd_x_gauss, psi_o, even_radius,
                  params.offset);
    const CoefficientStack ce = analyze(f, even_bank);
    const CoefficientStack co = analyze(f, odd_bank);
    FeatureResult r = ridge_measure(ce, co, even_bank, params);

    // Width readings on the edge of a band's scale ladder are unreliable.
    const int last = even_bank.n_scales() - 1;
    for (size_t i = 0; i < r.size(); ++i)
      if (r.scale_index[i] == 0 || r.scale_index[i] == last) r.width[i] = 0.0;

    if (b == 0) {
      best = std::move(r);
      best.band.assign(best.size(), 0);
    } else {
      for (size_t i = 0; i < best.size(); ++i) {
        if (r.measure[i] > best.measure[i]) {
          best.measure[i] = r.measure[i];
          best.orientation[i] = r.orientation[i];
          best.width[i] = r.width[i];
          best.height[i] = r.height[i];
          best.scale_index[i] = r.scale_index[i];
          best.theta_index[i] = r.theta_index[i];
          best.band[i] = static_cast<int>(b);
        }
      }
    }
  }
  return best;
}

}  // namespace symfeat
