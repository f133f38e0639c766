// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symfeat/reference.hpp"
#include "symfeat/rng.hpp"
#include "symfeat/transform.hpp"

using namespace symfeat;

namespace {

MoleculeBank test_bank(GeneratorKind kind, int k, double alpha = 0.7,
                       int n_orientations = 4) {
  const WaveletPair pair = make_wavelet_pair(k);
  const double radius = wavelet_constants(pair.even).radius;
  UserBankParams u;
  u.min_feature_width = 3.0;
  u.max_feature_width = 6.0;
  u.max_feature_length = 8.0;
  u.scales_per_octave = 2;  // 3 scales
  u.n_orientations = n_orientations;
  u.alpha = alpha;
  return make_bank(u, kind,
                   kind == GeneratorKind::odd_x_gauss ? pair.odd : pair.even,
                   radius);
}

ImageGrid random_image(int w, int h, uint64_t seed) {
  ImageGrid img(w, h);
  Rng rng(seed);
  for (double& v : img.pixels) v = rng.uniform();
  return img;
}

/// Step edge pinned to a pixel column: the edge column carries the midpoint
/// value, as an 8x supersampled rasterization of an edge through the pixel
/// center would.
ImageGrid step_edge(int n, int col, double lo, double hi) {
  ImageGrid img(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      img.at(x, y) = x < col ? lo : (x == col ? 0.5 * (lo + hi) : hi);
  return img;
}

}  // namespace

TEST_CASE("FFT path matches direct sliding-window correlation") {
  const MoleculeBank bank = test_bank(GeneratorKind::odd_x_gauss, 1);
  const ImageGrid img = random_image(32, 32, 7);
  const CoefficientStack fft = analyze(img, bank);
  const CoefficientStack direct = analyze_direct(img, bank);
  REQUIRE(fft.data.size() == direct.data.size());
  double max_diff = 0.0;
  for (size_t i = 0; i < fft.data.size(); ++i)
    max_diff = std::max(max_diff, std::fabs(fft.data[i] - direct.data[i]));
  CHECK(max_diff < 1e-8);
}

TEST_CASE("constant images produce vanishing coefficients") {
  const MoleculeBank bank = test_bank(GeneratorKind::even_x_gauss, 2);
  const ImageGrid img(40, 40, 0.37);
  const CoefficientStack stack = analyze(img, bank);
  CHECK(stack.max_abs() < 1e-6);
}

TEST_CASE("ideal aligned edge: odd coefficient is K_psi_o at every scale") {
  const WaveletPair pair = make_wavelet_pair(1);
  const double radius = wavelet_constants(pair.even).radius;
  UserBankParams u;
  u.min_feature_width = 3.0;
  u.max_feature_width = 10.0;
  u.max_feature_length = 15.0;
  u.scales_per_octave = 4;
  u.n_orientations = 8;
  u.alpha = 1.0;
  const MoleculeBank bank =
      make_bank(u, GeneratorKind::odd_x_gauss, pair.odd, radius);
  const double k_psi_o = bank.k_psi_o();
  CHECK(k_psi_o == doctest::Approx(0.5).epsilon(1e-6));

  const int n = 128;
  const double jump = 0.6;
  const ImageGrid img = step_edge(n, n / 2, 0.2, 0.2 + jump);
  const CoefficientStack stack = analyze(img, bank);

  // At the edge pixel, the max-orientation |coefficient| should equal
  // jump * K_psi_o on every scale (L1 normalization neutralizes the decay).
  const int y = n / 2, x = n / 2;
  double lo = 1e300, hi = 0.0;
  for (int j = 0; j < bank.n_scales(); ++j) {
    double best = 0.0;
    for (int t = 0; t < bank.n_thetas(); ++t)
      best = std::max(best, std::fabs(stack.at(j, t, x, y)));
    CHECK(best == doctest::Approx(jump * k_psi_o).epsilon(0.05));
    lo = std::min(lo, best);
    hi = std::max(hi, best);
  }
  CHECK((hi - lo) / hi < 0.05);  // varies by < 5% across scales
}

TEST_CASE("linearity, contrast covariance, shift covariance") {
  const MoleculeBank bank = test_bank(GeneratorKind::even_x_gauss, 1);
  const ImageGrid a = random_image(48, 40, 11);
  const ImageGrid b = random_image(48, 40, 12);

  ImageGrid sum = a;
  for (size_t i = 0; i < sum.size(); ++i) sum.pixels[i] += b.pixels[i];
  const CoefficientStack ca = analyze(a, bank);
  const CoefficientStack cb = analyze(b, bank);
  const CoefficientStack csum = analyze(sum, bank);
  double max_diff = 0.0;
  for (size_t i = 0; i < csum.data.size(); ++i)
    max_diff =
        std::max(max_diff, std::fabs(csum.data[i] - ca.data[i] - cb.data[i]));
  CHECK(max_diff < 1e-8);

  ImageGrid scaled = a;
  for (double& v : scaled.pixels) v *= 3.5;
  const CoefficientStack cs = analyze(scaled, bank);
  max_diff = 0.0;
  for (size_t i = 0; i < cs.data.size(); ++i)
    max_diff = std::max(max_diff, std::fabs(cs.data[i] - 3.5 * ca.data[i]));
  CHECK(max_diff < 1e-10);

  // Whole-pixel shift: interior coefficients move along.
  const int sx = 3, sy = 2;
  ImageGrid shifted(a.width, a.height);
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x)
      shifted.at(x, y) = a.at(reflect_index(x - sx, a.width),
                              reflect_index(y - sy, a.height));
  const CoefficientStack csh = analyze(shifted, bank);
  const int margin = bank.max_half() + 4;
  max_diff = 0.0;
  for (int j = 0; j < bank.n_scales(); ++j)
    for (int t = 0; t < bank.n_thetas(); ++t)
      for (int y = margin + sy; y < a.height - margin; ++y)
        for (int x = margin + sx; x < a.width - margin; ++x)
          max_diff =
              std::max(max_diff, std::fabs(csh.at(j, t, x, y) -
                                           ca.at(j, t, x - sx, y - sy)));
  CHECK(max_diff < 1e-8);
}

TEST_CASE("empty image is rejected") {
  const MoleculeBank bank = test_bank(GeneratorKind::odd_x_gauss, 1);
  CHECK_THROWS_AS(analyze(ImageGrid{}, bank), UsageError);
}
