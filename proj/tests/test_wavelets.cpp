// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "symfeat/errors.hpp"
#include "symfeat/fft.hpp"
#include "symfeat/wavelets.hpp"

using namespace symfeat;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double symmetry_error(const Wavelet1D& w) {
  const double sign = w.symmetry == Symmetry::even ? 1.0 : -1.0;
  double err = 0.0;
  for (int i = 0; i < w.size(); ++i)
    err = std::max(err, std::fabs(w.samples[i] - sign * w.samples[w.mirror(i)]));
  return err / max_abs(w.samples);
}

double l2_norm(const Wavelet1D& w) {
  double s = 0.0;
  for (double v : w.samples) s += v * v;
  return std::sqrt(s * w.grid_spacing);
}

}  // namespace

TEST_CASE("gaussian derivative point values") {
  const Wavelet1D g0 = gaussian_derivative(0);
  CHECK(g0.sample_at(0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g0.symmetry == Symmetry::even);

  const Wavelet1D g1 = gaussian_derivative(1);
  CHECK(g1.symmetry == Symmetry::odd);
  CHECK(std::fabs(g1.sample_at(0.0)) < 1e-12);
  for (double x : {-1.7, -0.3, 0.45, 1.2})
    CHECK(g1.sample_at(x) ==
          doctest::Approx(-2.0 * x * std::exp(-x * x)).epsilon(1e-5));
}

TEST_CASE("G_2 zero crossings at +-1/sqrt(2)") {
  // H_2(x) = 4x^2 - 2 vanishes at x = +-1/sqrt(2).
  const Wavelet1D g2 = gaussian_derivative(2);
  const double r = 1.0 / std::sqrt(2.0);
  const double h = g2.grid_spacing;
  for (double x0 : {-r, r}) {
    CHECK(g2.sample_at(x0 - h) * g2.sample_at(x0 + h) < 0.0);
    CHECK(std::fabs(g2.sample_at(x0)) < 4.0 * h);  // |G_2'| <= ~3.3 near the roots
  }
}

TEST_CASE("narrow grid raises truncation error") {
  WaveletGrid narrow;
  narrow.x0 = -2.0;
  narrow.dx = 4.0 / 512.0;
  narrow.n = 512;
  CHECK_THROWS_AS(gaussian_derivative(1, narrow), NumericError);
}

TEST_CASE("sampled spectrum matches (2 pi i xi)^k sqrt(pi) exp(-pi^2 xi^2)") {
  for (int k = 0; k <= 4; ++k) {
    const Wavelet1D w = gaussian_derivative(k);
    const int n = w.size();
    std::vector<std::complex<double>> buf(n);
    for (int i = 0; i < n; ++i) buf[i] = w.samples[i];
    fft::c2c(buf.data(), n, false);

    double peak = 0.0;
    for (int m = 0; m < n / 2; ++m) {
      const double xi = m / (n * w.grid_spacing);
      peak = std::max(peak, std::abs(std::pow(2.0 * M_PI * xi, k)) *
                                std::sqrt(M_PI) * std::exp(-M_PI * M_PI * xi * xi));
    }
    for (int m = 0; m < n / 2; ++m) {
      const double xi = m / (n * w.grid_spacing);
      const std::complex<double> expected =
          std::pow(std::complex<double>(0.0, 2.0 * M_PI * xi), k) *
          std::sqrt(M_PI) * std::exp(-M_PI * M_PI * xi * xi);
      if (std::abs(expected) < 1e-3 * peak) continue;  // in-band only
      // Continuous FT from the DFT: scale by dx and undo the x0 offset phase.
      const std::complex<double> got =
          buf[m] * w.grid_spacing *
          std::exp(std::complex<double>(0.0, -2.0 * M_PI * xi * w.x0));
      CHECK(std::abs(got - expected) / std::abs(expected) < 1e-6);
    }
  }
}

TEST_CASE("Hilbert transform flips symmetry and preserves the l2 norm") {
  for (int k = 1; k <= 4; ++k) {
    const Wavelet1D w = gaussian_derivative(k);
    const Wavelet1D h = hilbert_transform(w);
    CHECK(h.symmetry == (k % 2 == 0 ? Symmetry::odd : Symmetry::even));
    CHECK(symmetry_error(h) < 1e-10);
    CHECK(l2_norm(h) == doctest::Approx(l2_norm(w)).epsilon(1e-8));
    CHECK(std::fabs(h.mean()) < 1e-8);

    const Wavelet1D hh = hilbert_transform(h);
    double err = 0.0;
    for (int i = 0; i < w.size(); ++i)
      err = std::max(err, std::fabs(hh.samples[i] + w.samples[i]));
    CHECK(err < 1e-8);
  }
}

TEST_CASE("L1 normalization") {
  const Wavelet1D g1 = gaussian_derivative(1);
  // ||G_1||_1 = 2 (closed form: 2 * int_0^inf 2x exp(-x^2) dx = 2); the
  // rectangle rule sees the kink of |G_1| at 0, hence the O(h^2) slack.
  CHECK(g1.l1_mass() == doctest::Approx(2.0).epsilon(2e-5));

  const Wavelet1D psi = l1_normalize(g1);
  CHECK(psi.l1_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(psi.l1_norm_applied);
  CHECK(std::fabs(psi.mean()) < 1e-8);

  // Idempotence.
  const Wavelet1D again = l1_normalize(psi);
  for (int i = 0; i < psi.size(); ++i)
    CHECK(again.samples[i] == doctest::Approx(psi.samples[i]).epsilon(1e-14));

  // Integral of the normalized first derivative of the Gaussian over x < 0.
  double half = 0.0;
  for (int i = 0; i < psi.size(); ++i)
    if (psi.x_at(i) < 0.0) half += psi.samples[i];
  CHECK(half * psi.grid_spacing == doctest::Approx(0.5).epsilon(1e-6));

  Wavelet1D zero = g1;
  for (double& v : zero.samples) v = 0.0;
  CHECK_THROWS_AS(l1_normalize(zero), NumericError);
}

TEST_CASE("wavelet constants: K_psi_o and radius") {
  const Wavelet1D psi_o = make_wavelet(1, false);
  const WaveletConstants co = wavelet_constants(psi_o);
  CHECK(co.k_psi_o == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(co.radius == 0.0);

  const Wavelet1D psi_e = make_wavelet(2, false);
  const WaveletConstants ce = wavelet_constants(psi_e);
  CHECK(ce.k_even(0.0) == 0.0);
  // Radius equals the first zero crossing of G_2 at 1/sqrt(2).
  CHECK(ce.radius == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
  // |K| is maximal at the radius over the sampled grid.
  const double kmax = std::fabs(ce.k_even(ce.radius));
  for (double r = 0.0; r < 6.0; r += 0.01)
    CHECK(std::fabs(ce.k_even(r)) <= kmax * (1.0 + 1e-9));

  CHECK_THROWS_AS(wavelet_constants(gaussian_derivative(2)), UsageError);
}

TEST_CASE("radius is the first zero crossing for both even families") {
  for (auto [k, hil] : {std::pair{2, false}, std::pair{1, true}}) {
    const Wavelet1D psi = make_wavelet(k, hil);
    REQUIRE(psi.symmetry == Symmetry::even);
    const WaveletConstants c = wavelet_constants(psi);
    // Scan the sampled wavelet for its first positive zero crossing.
    double crossing = -1.0;
    for (int i = 0; i + 1 < psi.size(); ++i) {
      const double xa = psi.x_at(i);
      if (xa < 0.0) continue;
      if (psi.samples[i] != 0.0 && psi.samples[i] * psi.samples[i + 1] < 0.0) {
        crossing = xa;
        break;
      }
    }
    REQUIRE(crossing > 0.0);
    CHECK(std::fabs(c.radius - crossing) < 2.0 * psi.grid_spacing);
  }
}

TEST_CASE("zero mean preserved by Hilbert transform and normalization") {
  for (int k = 1; k <= 4; ++k) {
    const Wavelet1D w = gaussian_derivative(k);
    CHECK(std::fabs(w.mean()) < 1e-8);
    CHECK(std::fabs(hilbert_transform(w).mean()) < 1e-8);
    CHECK(std::fabs(l1_normalize(w).mean()) < 1e-8);
  }
}

TEST_CASE("wavelet invariants: symmetry and zero mean after construction") {
  for (int k = 1; k <= 4; ++k)
    for (bool hil : {false, true}) {
      const Wavelet1D w = make_wavelet(k, hil);
      CHECK(symmetry_error(w) < 1e-10);
      CHECK(std::fabs(w.mean()) < 1e-8);
      CHECK(w.l1_mass() == doctest::Approx(1.0).epsilon(1e-8));
    }
}
