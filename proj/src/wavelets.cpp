// SPDX-License-Identifier: Apache-2.0
#include "symfeat/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "symfeat/errors.hpp"
#include "symfeat/fft.hpp"
#include "symfeat/refine.hpp"

namespace symfeat {

double Wavelet1D::sample_at(double x) const {
  const double t = (x - x0) / grid_spacing;
  if (t < 0.0 || t > size() - 1) return 0.0;
  const int i = std::min(static_cast<int>(t), size() - 2);
  const double frac = t - i;
  return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
}

double Wavelet1D::support_radius(double tol) const {
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::fabs(v));
  const double cut = tol * peak;
  double radius = 0.0;
  for (int i = 0; i < size(); ++i)
    if (std::fabs(samples[i]) >= cut)
      radius = std::max(radius, std::fabs(x_at(i)));
  return radius;
}

double Wavelet1D::l1_mass() const {
  double s = 0.0;
  for (double v : samples) s += std::fabs(v);
  return s * grid_spacing;
}

double Wavelet1D::mean() const {
  double s = 0.0;
  for (double v : samples) s += v;
  return s * grid_spacing;
}

Wavelet1D gaussian_derivative(int k, const WaveletGrid& grid) {
  if (k < 0) throw UsageError("gaussian_derivative: k must be >= 0");
  if (grid.n < 8 || grid.dx <= 0.0)
    throw UsageError("gaussian_derivative: invalid grid");

  Wavelet1D w;
  w.x0 = grid.x0;
  w.grid_spacing = grid.dx;
  w.symmetry = (k % 2 == 0) ? Symmetry::even : Symmetry::odd;
  w.derivative_order = k;
  w.samples.resize(grid.n);

  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  double peak = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x0 + i * grid.dx;
    // Hermite recurrence H_{m+1} = 2x H_m - 2m H_{m-1}.
    double hm1 = 0.0, h = 1.0;
    for (int m = 0; m < k; ++m) {
      const double next = 2.0 * x * h - 2.0 * m * hm1;
      hm1 = h;
      h = next;
    }
    w.samples[i] = sign * h * std::exp(-x * x);
    peak = std::max(peak, std::fabs(w.samples[i]));
  }
  if (std::fabs(w.samples.front()) > 1e-12 * peak ||
      std::fabs(w.samples.back()) > 1e-12 * peak)
    throw NumericError("gaussian_derivative: grid too narrow, tail mass above tolerance");
  return w;
}

Wavelet1D hilbert_transform(const Wavelet1D& w) {
  if (std::fabs(w.mean()) > 1e-8)
    std::fprintf(stderr,
                 "symfeat: warning: Hilbert transform of a nonzero-mean "
                 "wavelet (mean %.3e); output may not be integrable\n",
                 w.mean());

  const int n = w.size();
  std::vector<std::complex<double>> buf(n);
  for (int i = 0; i < n; ++i) buf[i] = w.samples[i];
  fft::c2c(buf.data(), n, false);
  // Multiplier -i*sgn(xi); DC and (for even n) Nyquist go to zero.
  buf[0] = 0.0;
  for (int m = 1; m < n; ++m) {
    if (n % 2 == 0 && m == n / 2) {
      buf[m] = 0.0;
    } else if (m < (n + 1) / 2) {
      buf[m] *= std::complex<double>(0.0, -1.0);
    } else {
      buf[m] *= std::complex<double>(0.0, 1.0);
    }
  }
  fft::c2c(buf.data(), n, true);

  Wavelet1D out = w;
  for (int i = 0; i < n; ++i) out.samples[i] = buf[i].real() / n;
  out.symmetry = (w.symmetry == Symmetry::even) ? Symmetry::odd : Symmetry::even;
  out.hilbert = !w.hilbert;
  out.l1_norm_applied = false;
  return out;
}

Wavelet1D l1_normalize(const Wavelet1D& w) {
  const double mass = w.l1_mass();
  if (mass <= 0.0) throw NumericError("l1_normalize: all-zero wavelet");
  Wavelet1D out = w;
  for (double& v : out.samples) v /= mass;
  out.l1_norm_applied = true;
  return out;
}

Wavelet1D make_wavelet(int k, bool hilbert, const WaveletGrid& grid) {
  Wavelet1D w = gaussian_derivative(k, grid);
  if (hilbert) w = hilbert_transform(w);
  return l1_normalize(w);
}

WaveletPair make_wavelet_pair(int k, const WaveletGrid& grid) {
  if (k < 1) throw UsageError("make_wavelet_pair: k must be >= 1");
  WaveletPair pair;
  if (k % 2 == 1) {
    pair.odd = make_wavelet(k, false, grid);
    pair.even = make_wavelet(k, true, grid);
  } else {
    pair.even = make_wavelet(k, false, grid);
    pair.odd = make_wavelet(k, true, grid);
  }
  return pair;
}

double WaveletConstants::k_even(double r) const {
  if (k_table.empty() || r <= 0.0) return 0.0;
  const double t = r / k_table_dr;
  const int last = static_cast<int>(k_table.size()) - 1;
  if (t >= last) return k_table[last];
  const int i = static_cast<int>(t);
  const double frac = t - i;
  return k_table[i] * (1.0 - frac) + k_table[i + 1] * frac;
}

WaveletConstants wavelet_constants(const Wavelet1D& w) {
  if (!w.l1_norm_applied)
    throw UsageError("wavelet_constants: wavelet must be L1-normalized");

  WaveletConstants c;
  const double h = w.grid_spacing;

  // Half-line integral over x <= 0, trapezoid with the x=0 sample halved.
  double half = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const double x = w.x_at(i);
    if (x < -1e-12) {
      half += w.samples[i];
    } else if (std::fabs(x) <= 1e-12) {
      half += 0.5 * w.samples[i];
    }
  }
  c.k_psi_o = half * h;

  if (w.symmetry == Symmetry::odd) return c;  // K(r) = 0 identically

  // K(r) = 2 * integral over [0, r] for an even wavelet, cumulative trapezoid
  // over the positive half-grid.
  int i0 = 0;
  double best = 1e300;
  for (int i = 0; i < w.size(); ++i) {
    const double d = std::fabs(w.x_at(i));
    if (d < best) {
      best = d;
      i0 = i;
    }
  }
  const int m = w.size() - i0;
  c.k_table.assign(m, 0.0);
  c.k_table_dr = h;
  for (int i = 1; i < m; ++i)
    c.k_table[i] = c.k_table[i - 1] +
                   h * (w.samples[i0 + i - 1] + w.samples[i0 + i]);

  // argmax of |K| on the table, first hit wins, then parabola-refined.
  int imax = 0;
  double vmax = -1.0;
  for (int i = 0; i < m; ++i) {
    const double v = std::fabs(c.k_table[i]);
    if (v > vmax) {
      vmax = v;
      imax = i;
    }
  }
  if (imax + 1 >= m)
    throw NumericError("wavelet_constants: |K| maximum at grid boundary; widen the grid");
  if (imax == 0) {
    c.radius = 0.0;
  } else {
    c.radius = parabola_refine((imax - 1) * h, imax * h, (imax + 1) * h,
                               std::fabs(c.k_table[imax - 1]), vmax,
                               std::fabs(c.k_table[imax + 1]));
  }
  return c;
}

}  // namespace symfeat
