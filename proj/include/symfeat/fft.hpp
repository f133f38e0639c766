// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace symfeat::fft {

/// In-place 1D complex DFT (unnormalized; inverse is also unnormalized, so a
/// round trip scales by n).
void c2c(std::complex<double>* data, int n, bool inverse);

/// Smallest m >= n whose prime factors are all in {2,3,5,7}.
int good_size(int n);

/// Per-thread 2D real<->complex transform workspace. Plan creation is
/// serialized internally (the FFTW planner is not thread-safe); execution on
/// the owned buffers is safe from the owning thread.
class Workspace2D {
 public:
  Workspace2D(int nx, int ny);
  ~Workspace2D();
  Workspace2D(const Workspace2D&) = delete;
  Workspace2D& operator=(const Workspace2D&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int spectrum_size() const { return ny_ * (nx_ / 2 + 1); }

  double* real() { return real_; }
  std::complex<double>* spectrum() { return spec_; }

  void forward();   // real() -> spectrum()
  void backward();  // spectrum() -> real(), destroys spectrum, unnormalized

 private:
  int nx_, ny_;
  double* real_;
  std::complex<double>* spec_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace symfeat::fft
