// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace symfeat {

enum class Symmetry { even, odd };

/// Uniform sampling grid x_i = x0 + i*dx, i = 0..n-1. The default grid spans
/// [-8, 8) at 4096 samples; Gaussian-derivative tails are below 1e-27 there,
/// and treating it as one period of a periodic grid (for the DFT-based
/// Hilbert transform) is safe.
struct WaveletGrid {
  double x0 = -8.0;
  double dx = 16.0 / 4096.0;
  int n = 4096;
};

/// A sampled 1D symmetric wavelet on a uniform grid.
struct Wavelet1D {
  std::vector<double> samples;
  double x0 = 0.0;
  double grid_spacing = 0.0;
  Symmetry symmetry = Symmetry::even;
  int derivative_order = 0;  // k of the underlying Gaussian derivative
  bool hilbert = false;      // whether the Hilbert transform has been applied
  bool l1_norm_applied = false;

  double x_at(int i) const { return x0 + i * grid_spacing; }
  int size() const { return static_cast<int>(samples.size()); }

  /// Mirror index on the periodic grid (index 0 is its own mirror).
  int mirror(int i) const {
    const int n = size();
    return i == 0 ? 0 : n - i;
  }

  /// Linear interpolation; zero outside the grid.
  double sample_at(double x) const;

  /// Largest |x| at which |value| >= tol * max|value|.
  double support_radius(double tol = 1e-8) const;

  double l1_mass() const;  // sum(|samples|) * dx
  double mean() const;     // sum(samples) * dx
};

/// Samples of G_k(x) = (-1)^k H_k(x) exp(-x^2), the k-th derivative of the
/// unnormalized Gaussian (H_k is the k-th Hermite polynomial). Throws
/// NumericError if the grid is too narrow to hold the tails.
Wavelet1D gaussian_derivative(int k, const WaveletGrid& grid = WaveletGrid{});

/// Discrete Hilbert transform through the DFT multiplier -i*sgn(xi); the DC
/// and Nyquist bins are zeroed, which keeps the output real and the transform
/// an l2-isometry on the remaining bins. Swaps even<->odd symmetry. Warns on
/// stderr if the input has a nonzero mean (the output need not be in L1 then).
Wavelet1D hilbert_transform(const Wavelet1D& w);

/// Rescale so that sum(|samples|) * dx = 1. Throws on an all-zero input.
Wavelet1D l1_normalize(const Wavelet1D& w);

/// Convenience: L1-normalized G_k, or its Hilbert transform first when
/// hilbert is set.
Wavelet1D make_wavelet(int k, bool hilbert,
                       const WaveletGrid& grid = WaveletGrid{});

/// Hilbert-transform pair based on G_k: the parity of k decides which member
/// is even. k odd: odd = G_k, even = HT G_k; k even: even = G_k, odd = HT G_k.
struct WaveletPair {
  Wavelet1D odd;
  Wavelet1D even;
};
WaveletPair make_wavelet_pair(int k, const WaveletGrid& grid = WaveletGrid{});

/// Analytic constants of an L1-normalized wavelet used by the measures.
struct WaveletConstants {
  /// Half-line integral of the wavelet over x <= 0 (calibrates edge heights).
  double k_psi_o = 0.0;

  /// argmax_r |K(r)| with K(r) = integral of w over [-r, r]; the preferred
  /// half-width of the wavelet. Zero for odd wavelets (K vanishes there).
  double radius = 0.0;

  /// K(r) sampled at r = i * k_table_dr (even wavelets only).
  std::vector<double> k_table;
  double k_table_dr = 0.0;

  /// Lookup of K(r) with linear interpolation; r is clamped to the table.
  double k_even(double r) const;
};

/// Computes the constants above by quadrature on the wavelet's own grid.
/// Requires an L1-normalized input. The radius search uses the same 3-point
/// parabola refinement as the feature measures; ties resolve to the smallest r.
WaveletConstants wavelet_constants(const Wavelet1D& w);

}  // namespace symfeat
