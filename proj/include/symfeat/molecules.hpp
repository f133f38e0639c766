// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "symfeat/wavelets.hpp"

namespace symfeat {

/// Which tensor-product generator a bank is built from: an even or odd 1D
/// wavelet against a plain Gaussian cross profile, or an even wavelet against
/// itself (the blob generator with four symmetry axes).
enum class GeneratorKind { even_x_gauss, odd_x_gauss, even_x_even };

/// User-facing sizing of a filter bank, in pixels.
struct UserBankParams {
  double min_feature_width = 3.0;
  double max_feature_width = 10.0;
  double max_feature_length = 15.0;
  int scales_per_octave = 6;
  int n_orientations = 16;
  double alpha = 0.5;
};

struct BankParams {
  double alpha = 0.5;            // anisotropy in [0,1]
  double a = 0.0;                // scale base > 1 (2^(1/scalesPerOctave))
  std::vector<int> scales;       // strictly increasing, consecutive integers
  std::vector<double> orientations;  // uniform on [-pi/2, pi/2)
  GeneratorKind kind = GeneratorKind::odd_x_gauss;
  double c1 = 1.0;               // oscillatory-axis scale of the generator
  double c2 = 1.0;               // cross-axis scale
  double scale_offset = 0.0;     // filters are dilated by a^(j - offset)
  UserBankParams user;

  int n_scales() const { return static_cast<int>(scales.size()); }
  int n_thetas() const { return static_cast<int>(orientations.size()); }
  void validate() const;  // throws UsageError on violated preconditions
};

/// Continuous 2D generator g(x1, x2); x1 is the oscillatory axis.
struct Generator2D {
  GeneratorKind kind = GeneratorKind::odd_x_gauss;
  Wavelet1D psi;   // L1-normalized 1D wavelet on the oscillatory axis
  double c1 = 1.0;
  double c2 = 1.0;

  double operator()(double x1, double x2) const;
  double support_radius_x1() const;  // |g| below tolerance beyond these
  double support_radius_x2() const;
};

/// g(x1,x2) = c1*c2*pi^(-1/2) * psi(c1 x1) * G_0(c2 x2) for the two
/// Gaussian-cross kinds, and c1*c2 * psi(c1 x1) * psi(c2 x2) for even_x_even.
/// psi must be L1-normalized and match the kind's symmetry.
Generator2D make_generator_2d(GeneratorKind kind, const Wavelet1D& psi,
                              double c1, double c2);

/// One sampled digital filter on an odd-sized square pixel grid centered at
/// the origin; taps are l1-renormalized after sampling and carry no residual
/// DC component.
struct Filter2D {
  int half = 0;  // side length is 2*half+1
  std::vector<double> taps;

  int side() const { return 2 * half + 1; }
  double at(int u, int v) const {  // u, v in [-half, half]
    return taps[(v + half) * side() + (u + half)];
  }
};

/// The full stack of 2D digital filters indexed by (scale, orientation),
/// immutable after construction and safe to share across threads.
struct MoleculeBank {
  BankParams params;
  WaveletConstants constants;    // of the oscillatory 1D wavelet
  std::vector<Filter2D> filters; // scale-major: [j_idx * n_thetas + t_idx]
  double radius_px = 0.0;        // preferred half-width at scale exponent 0, px

  int n_scales() const { return params.n_scales(); }
  int n_thetas() const { return params.n_thetas(); }
  const Filter2D& filter(int j_idx, int t_idx) const {
    return filters[j_idx * n_thetas() + t_idx];
  }
  int max_half() const;
  double k_psi_o() const { return constants.k_psi_o; }

  /// Ideal-feature coefficient of the generator: K(half_width) for a ridge of
  /// that half-width (in pixels at scale exponent 0); for even_x_even kinds
  /// this is the square-blob value, the product over both axes.
  double k_gen(double half_width_px) const;
};

/// Samples a^(j(1+alpha)) g(A_{a^j,alpha} R_theta x) on the pixel grid for
/// every (j, theta). The orientation parameter is the direction of the
/// oscillatory axis: theta = 0 oscillates along the image x-axis. Throws if a
/// filter's support exceeds the configured bounding box.
MoleculeBank build_bank(const Generator2D& g, const BankParams& params);

/// Maps user sizing onto bank parameters: c1 makes the coarsest scale's
/// preferred width equal maxFeatureWidth (using the dimensionless radius of
/// the pair's even wavelet), c2 matches the cross-axis length convention, and
/// the integer scale ladder spans minFeatureWidth..maxFeatureWidth with base
/// a = 2^(1/scalesPerOctave).
BankParams params_from_user(const UserBankParams& user, GeneratorKind kind,
                            double even_radius, double scale_offset = 0.0);

/// Builds the generator and bank for one symmetry role in a single call.
MoleculeBank make_bank(const UserBankParams& user, GeneratorKind kind,
                       const Wavelet1D& psi, double even_radius,
                       double scale_offset = 0.0);

/// Numeric report on the molecule order condition for a generator.
struct OrderReport {
  double slope_rho0 = 0.0;        // log|g^| vs log|xi_1| slope as xi_1 -> 0
  int vanishing_moments = 0;      // nearest integer to the slope
  bool zero_mean_ok = false;      // |g^(0)| small relative to the peak
  struct ConstantEntry {
    int rho1 = 0, rho2 = 0;       // derivative multi-index
    double constant = 0.0;        // smallest admissible C on the coarse grid
    double growth = 0.0;          // C(fine grid) / C(coarse grid)
    bool admissible = false;      // growth stays bounded under refinement
  };
  std::vector<ConstantEntry> constants;
};

/// Checks |d^rho g^(xi)| against the decay bound with exponent M for all
/// |rho| <= L on a frequency grid (derivatives by central finite differences
/// of the sampled spectrum, worst case over the scale parameter). The
/// vanishing-moment estimate comes from a log-log slope fit of |g^| along the
/// oscillatory frequency axis.
OrderReport verify_order(const Generator2D& g, int L, int M);

std::string to_string(GeneratorKind kind);

}  // namespace symfeat
