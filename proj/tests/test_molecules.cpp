// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symfeat/errors.hpp"
#include "symfeat/molecules.hpp"

using namespace symfeat;

namespace {

UserBankParams small_user(double alpha) {
  UserBankParams u;
  u.min_feature_width = 3.0;
  u.max_feature_width = 8.0;
  u.max_feature_length = 10.0;
  u.scales_per_octave = 2;
  u.n_orientations = 8;
  u.alpha = alpha;
  return u;
}

}  // namespace

TEST_CASE("tensor-product generator symmetries") {
  const WaveletPair pair = make_wavelet_pair(1);

  const Generator2D g_odd =
      make_generator_2d(GeneratorKind::odd_x_gauss, pair.odd, 0.8, 0.5);
  for (double x1 : {0.3, 1.1})
    for (double x2 : {-0.7, 0.2}) {
      CHECK(g_odd(x1, x2) == doctest::Approx(-g_odd(-x1, x2)).epsilon(1e-9));
      CHECK(g_odd(x1, x2) == doctest::Approx(g_odd(x1, -x2)).epsilon(1e-9));
    }

  const Generator2D g_blob =
      make_generator_2d(GeneratorKind::even_x_even, pair.even, 0.6, 0.6);
  for (double x1 : {0.4, 1.3})
    for (double x2 : {0.9, 0.1}) {
      // Four axes of symmetry: sign flips plus the diagonal swap.
      CHECK(g_blob(x1, x2) == doctest::Approx(g_blob(-x1, x2)).epsilon(1e-9));
      CHECK(g_blob(x1, x2) == doctest::Approx(g_blob(x1, -x2)).epsilon(1e-9));
      CHECK(g_blob(x1, x2) == doctest::Approx(g_blob(x2, x1)).epsilon(1e-9));
    }

  // Zero mean factorizes through the tensor product.
  const Generator2D g_even =
      make_generator_2d(GeneratorKind::even_x_gauss, pair.even, 0.8, 0.5);
  double integral = 0.0;
  const double h = 0.05;
  for (double x1 = -14.0; x1 <= 14.0; x1 += h)
    for (double x2 = -14.0; x2 <= 14.0; x2 += h)
      integral += g_even(x1, x2) * h * h;
  CHECK(std::fabs(integral) < 1e-6);

  CHECK_THROWS_AS(
      make_generator_2d(GeneratorKind::even_x_gauss, pair.odd, 1.0, 1.0),
      UsageError);
  CHECK_THROWS_AS(
      make_generator_2d(GeneratorKind::even_x_even, pair.odd, 1.0, 1.0),
      UsageError);
}

TEST_CASE("bank filters are l1-normalized with no DC component") {
  const WaveletPair pair = make_wavelet_pair(1);
  const double radius = wavelet_constants(pair.even).radius;
  for (GeneratorKind kind :
       {GeneratorKind::odd_x_gauss, GeneratorKind::even_x_gauss}) {
    const MoleculeBank bank = make_bank(
        small_user(0.5), kind,
        kind == GeneratorKind::odd_x_gauss ? pair.odd : pair.even, radius);
    for (const Filter2D& f : bank.filters) {
      double sum = 0.0, sabs = 0.0;
      for (double t : f.taps) {
        sum += t;
        sabs += std::fabs(t);
      }
      CHECK(sabs == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(std::fabs(sum) < 1e-6);
    }
  }
}

TEST_CASE("alpha=1 filters rescale isotropically across octaves") {
  const WaveletPair pair = make_wavelet_pair(2);
  const double radius = wavelet_constants(pair.even).radius;
  UserBankParams u = small_user(1.0);
  u.max_feature_width = 13.0;
  u.max_feature_length = 16.0;
  const MoleculeBank bank =
      make_bank(u, GeneratorKind::even_x_gauss, pair.even, radius);
  const int spo = u.scales_per_octave;
  REQUIRE(bank.n_scales() > spo);

  const Filter2D& coarse = bank.filter(0, 3);
  const Filter2D& fine = bank.filter(spo, 3);
  const int common = std::min(coarse.half / 2, fine.half);
  REQUIRE(common > 2);
  // Subsample the coarse filter by 2 and compare shapes on the common core.
  double na = 0.0, nb = 0.0;
  for (int v = -common; v <= common; ++v)
    for (int u2 = -common; u2 <= common; ++u2) {
      na += std::fabs(coarse.at(2 * u2, 2 * v));
      nb += std::fabs(fine.at(u2, v));
    }
  double err2 = 0.0, ref2 = 0.0;
  for (int v = -common; v <= common; ++v)
    for (int u2 = -common; u2 <= common; ++u2) {
      const double a = coarse.at(2 * u2, 2 * v) / na;
      const double b = fine.at(u2, v) / nb;
      err2 += (a - b) * (a - b);
      ref2 += b * b;
    }
  CHECK(std::sqrt(err2 / ref2) < 1e-3);
}

TEST_CASE("alpha=0 leaves the cross axis unscaled") {
  const WaveletPair pair = make_wavelet_pair(2);
  const double radius = wavelet_constants(pair.even).radius;
  const MoleculeBank bank = make_bank(
      small_user(0.0), GeneratorKind::even_x_gauss, pair.even, radius);
  const Filter2D& a = bank.filter(0, bank.n_thetas() / 2);  // theta = 0
  const Filter2D& b = bank.filter(2, bank.n_thetas() / 2);
  const int common = std::min(a.half, b.half);
  for (int v = -common; v <= common; ++v) {
    const double ra = a.at(0, v) / a.at(0, 0);
    const double rb = b.at(0, v) / b.at(0, 0);
    CHECK(ra == doctest::Approx(rb).epsilon(1e-6));
  }
}

TEST_CASE("90-degree rotation is an exact array rotation") {
  const WaveletPair pair = make_wavelet_pair(1);
  const double radius = wavelet_constants(pair.even).radius;
  for (double alpha : {1.0, 0.4}) {
    const MoleculeBank bank = make_bank(
        small_user(alpha), GeneratorKind::odd_x_gauss, pair.odd, radius);
    const int quarter = bank.n_thetas() / 2;  // pi/2 in index steps
    const Filter2D& f0 = bank.filter(1, 0);
    const Filter2D& f90 = bank.filter(1, quarter);
    REQUIRE(f0.half == f90.half);
    for (int v = -f0.half; v <= f0.half; ++v)
      for (int u = -f0.half; u <= f0.half; ++u)
        CHECK(f90.at(u, v) ==
              doctest::Approx(f0.at(v, -u)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("params_from_user scale and orientation ladders") {
  const WaveletPair pair = make_wavelet_pair(1);
  const double radius = wavelet_constants(pair.even).radius;

  UserBankParams u;
  u.min_feature_width = 3.0;
  u.max_feature_width = 10.0;
  u.max_feature_length = 15.0;
  u.scales_per_octave = 6;
  u.n_orientations = 16;
  const BankParams p = params_from_user(u, GeneratorKind::odd_x_gauss, radius);
  CHECK(p.n_scales() == 12);  // ceil(6 * log2(10/3)) + 1
  CHECK(p.n_thetas() == 16);
  CHECK(p.orientations[1] - p.orientations[0] ==
        doctest::Approx(M_PI / 16.0).epsilon(1e-12));
  CHECK(p.a == doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-12));
  // Coarsest preferred width equals maxFeatureWidth.
  CHECK(2.0 * radius / p.c1 == doctest::Approx(10.0).epsilon(1e-12));

  UserBankParams bad = u;
  bad.max_feature_width = 20.0;  // exceeds maxFeatureLength
  CHECK_THROWS_AS(params_from_user(bad, GeneratorKind::odd_x_gauss, radius),
                  UsageError);
  bad = u;
  bad.min_feature_width = 9.5;  // fewer than 3 scales
  CHECK_THROWS_AS(params_from_user(bad, GeneratorKind::odd_x_gauss, radius),
                  UsageError);
}

TEST_CASE("preferred ridge width tracks the scale ladder") {
  const WaveletPair pair = make_wavelet_pair(2);
  const double radius = wavelet_constants(pair.even).radius;
  UserBankParams u = small_user(1.0);
  const MoleculeBank bank =
      make_bank(u, GeneratorKind::even_x_gauss, pair.even, radius);
  CHECK(2.0 * bank.radius_px == doctest::Approx(8.0).epsilon(1e-9));
  // k_gen peaks at the generator radius.
  const double peak = std::fabs(bank.k_gen(bank.radius_px));
  for (double r = 0.5; r < 12.0; r += 0.25)
    CHECK(std::fabs(bank.k_gen(r)) <= peak * (1.0 + 1e-9));
}

TEST_CASE("filters that cannot fit the configured box are rejected") {
  const WaveletPair pair = make_wavelet_pair(1);
  const double radius = wavelet_constants(pair.even).radius;
  BankParams p = params_from_user(small_user(0.5), GeneratorKind::odd_x_gauss,
                                  radius);
  // A generator far wider than the configured feature box: its core cannot
  // fit even after tail truncation.
  p.c1 = 0.002;
  const Generator2D g =
      make_generator_2d(GeneratorKind::odd_x_gauss, pair.odd, p.c1, p.c2);
  CHECK_THROWS_AS(build_bank(g, p), UsageError);
}

TEST_CASE("verify_order: vanishing moments and admissible exponents") {
  const WaveletPair pair2 = make_wavelet_pair(2);
  const Generator2D g2 =
      make_generator_2d(GeneratorKind::even_x_gauss, pair2.even, 1.0, 1.0);
  const OrderReport r2 = verify_order(g2, 0, 2);
  CHECK(r2.zero_mean_ok);
  CHECK(r2.vanishing_moments == 2);
  CHECK(std::fabs(r2.slope_rho0 - 2.0) < 0.1);

  const WaveletPair pair1 = make_wavelet_pair(1);
  const Generator2D g1 =
      make_generator_2d(GeneratorKind::odd_x_gauss, pair1.odd, 1.0, 1.0);
  const OrderReport ok = verify_order(g1, 0, 1);
  REQUIRE(ok.constants.size() == 1);
  CHECK(ok.constants[0].admissible);  // exponent 1 passes
  const OrderReport toobig = verify_order(g1, 0, 2);
  CHECK_FALSE(toobig.constants[0].admissible);  // exponent 2 fails

  // Derivative orders up to L: one constant entry per multi-index.
  const OrderReport deriv = verify_order(g2, 1, 1);
  CHECK(deriv.constants.size() == 3);  // (0,0), (0,1), (1,0)
  for (const auto& entry : deriv.constants) CHECK(entry.constant > 0.0);

  // A non-wavelet "generator" with mass: fails the zero-mean check.
  Wavelet1D flat;
  flat.x0 = -8.0;
  flat.grid_spacing = 16.0 / 512.0;
  flat.samples.assign(512, 1.0 / 16.0);
  flat.symmetry = Symmetry::even;
  flat.l1_norm_applied = true;
  const Generator2D g_flat =
      make_generator_2d(GeneratorKind::even_x_gauss, flat, 1.0, 1.0);
  const OrderReport bad = verify_order(g_flat, 0, 1);
  CHECK_FALSE(bad.zero_mean_ok);
}
