// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdio>
#include <memory>

#include "cli_common.hpp"
#include "symfeat/measures.hpp"
#include "symfeat/reference.hpp"
#include "symfeat/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symfeat::cli {

namespace {

struct BenchOpts {
  std::vector<int> sizes = {64, 128, 256};
  int repeat = 3;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ImageGrid random_image(int n, uint64_t seed) {
  ImageGrid img(n, n);
  Rng rng(seed);
  for (double& v : img.pixels) v = rng.uniform();
  return img;
}

void bench_run(const BenchOpts& opts) {
  apply_thread_env();
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  const WaveletPair pair = make_wavelet_pair(1);
  const double even_radius = wavelet_constants(pair.even).radius;
  UserBankParams user;
  user.min_feature_width = 3.0;
  user.max_feature_width = 8.0;
  user.max_feature_length = 12.0;
  user.scales_per_octave = 3;
  user.n_orientations = 8;
  user.alpha = 0.5;
  const MoleculeBank odd_bank =
      make_bank(user, GeneratorKind::odd_x_gauss, pair.odd, even_radius);
  const MoleculeBank even_bank =
      make_bank(user, GeneratorKind::even_x_gauss, pair.even, even_radius, 1.0);

  std::printf("transform: FFT path (%d threads) vs serial direct correlation\n",
              threads);
  std::printf("%8s %10s %14s %14s %9s %12s\n", "size", "filters", "fft [ms]",
              "direct [ms]", "speedup", "max |diff|");
  for (int n : opts.sizes) {
    const ImageGrid img = random_image(n, 42);

    double t_fft = 1e300, t_direct = 1e300;
    CoefficientStack fft_stack, direct_stack;
    for (int r = 0; r < opts.repeat; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      fft_stack = analyze(img, odd_bank);
      t_fft = std::min(t_fft, seconds_since(t0));
    }
    for (int r = 0; r < opts.repeat; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      direct_stack = analyze_direct(img, odd_bank);
      t_direct = std::min(t_direct, seconds_since(t0));
    }
    double max_diff = 0.0;
    for (size_t i = 0; i < fft_stack.data.size(); ++i)
      max_diff = std::max(max_diff,
                          std::fabs(fft_stack.data[i] - direct_stack.data[i]));
    std::printf("%8d %10d %14.2f %14.2f %8.1fx %12.2e\n", n,
                odd_bank.n_scales() * odd_bank.n_thetas(), t_fft * 1e3,
                t_direct * 1e3, t_direct / t_fft, max_diff);
  }

  std::printf("\nmeasures: per-pixel kernels on precomputed stacks\n");
  std::printf("%8s %14s\n", "size", "edge [ms]");
  for (int n : opts.sizes) {
    const ImageGrid img = random_image(n, 43);
    const CoefficientStack co = analyze(img, odd_bank);
    const CoefficientStack ce = analyze(img, even_bank);
    MeasureParams params;
    double t_measure = 1e300;
    for (int r = 0; r < opts.repeat; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      const FeatureResult res = edge_measure(co, ce, odd_bank, params);
      (void)res;
      t_measure = std::min(t_measure, seconds_since(t0));
    }
    std::printf("%8d %14.2f\n", n, t_measure * 1e3);
  }
}

}  // namespace

void register_bench(CLI::App& app) {
  auto opts = std::make_shared<BenchOpts>();
  CLI::App* sub = app.add_subcommand(
      "bench", "Timing report: parallel kernels vs the serial reference");
  sub->add_option("--size", opts->sizes, "Image sizes to time");
  sub->add_option("--repeat", opts->repeat, "Repetitions (best of)");
  sub->callback([opts]() { bench_run(*opts); });
}

}  // namespace symfeat::cli
