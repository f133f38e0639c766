// SPDX-License-Identifier: Apache-2.0
#include "symfeat/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace symfeat::fft {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void c2c(std::complex<double>* data, int n, bool inverse) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(data),
                            reinterpret_cast<fftw_complex*>(data),
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

int good_size(int n) {
  if (n <= 2) return 2;
  for (int m = n;; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

Workspace2D::Workspace2D(int nx, int ny) : nx_(nx), ny_(ny) {
  real_ = fftw_alloc_real(static_cast<size_t>(nx) * ny);
  spec_ = reinterpret_cast<std::complex<double>*>(
      fftw_alloc_complex(static_cast<size_t>(ny) * (nx / 2 + 1)));
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps planning deterministic and cheap.
  plan_fwd_ = fftw_plan_dft_r2c_2d(ny, nx, real_,
                                   reinterpret_cast<fftw_complex*>(spec_),
                                   FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r_2d(ny, nx,
                                   reinterpret_cast<fftw_complex*>(spec_),
                                   real_, FFTW_ESTIMATE);
}

Workspace2D::~Workspace2D() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  }
  fftw_free(real_);
  fftw_free(spec_);
}

void Workspace2D::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }

void Workspace2D::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

}  // namespace symfeat::fft
