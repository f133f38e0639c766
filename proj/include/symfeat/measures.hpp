// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "symfeat/refine.hpp"
#include "symfeat/transform.hpp"

namespace symfeat {

enum class ContrastPolarity { positive, negative, both };
enum class BlobSymmetry { circle, square };

struct MeasureParams {
  double beta = 0.03;    // minimal contrast (soft threshold)
  double offset = 0.0;   // j_e for edges, j_o for ridges/blobs; realized by
                         // building the secondary bank with this scale offset
  ContrastPolarity polarity = ContrastPolarity::both;
  BlobSymmetry blob_symmetry = BlobSymmetry::circle;

  // epsilon = max(floor, scale * max|coefficient| of the primary stack).
  double epsilon_scale = 1e-12;
  double epsilon_floor = 1e-12;

  double epsilon_for(double max_abs_coeff) const {
    const double e = epsilon_scale * max_abs_coeff;
    return e > epsilon_floor ? e : epsilon_floor;
  }
};

/// Aligned per-pixel maps produced by the 2D measures.
struct FeatureResult {
  int nx = 0, ny = 0;
  std::vector<double> measure;      // in [0, 1]
  std::vector<double> orientation;  // feature tangent in [-pi/2, pi/2); NaN
                                    // where not applicable (blobs)
  std::vector<double> width;        // px; 0 where undefined
  std::vector<double> height;       // signed contrast
  std::vector<int> scale_index;     // j* as index into the bank's J
  std::vector<int> theta_index;     // theta* index
  std::vector<int> band;            // winning band (multiband only)

  size_t size() const { return static_cast<size_t>(nx) * ny; }
};

/// Wraps an angle to the torus [-pi/2, pi/2).
inline double wrap_orientation(double t) {
  return t - M_PI * std::floor((t + M_PI / 2.0) / M_PI);
}

/// One-dimensional reference edge measure on a uniformly sampled signal.
/// Wavelet dilates are lambda_j = base_dilation * a^j (samples^-1) for
/// j = 0..n_scales-1; the even wavelet runs at a scale offset of -offset.
std::vector<double> edge_measure_1d(const std::vector<double>& signal,
                                    const Wavelet1D& psi_o,
                                    const Wavelet1D& psi_e, double a,
                                    int n_scales, double offset, double beta,
                                    double base_dilation);

/// Two-dimensional edge measure. stack_odd is the primary stack (argmax
/// source); stack_even must come from the paired even bank built with the
/// measure's scale offset. odd_bank supplies K_psi_o and the orientation grid.
FeatureResult edge_measure(const CoefficientStack& stack_odd,
                           const CoefficientStack& stack_even,
                           const MoleculeBank& odd_bank,
                           const MeasureParams& params);

/// Two-dimensional ridge measure with width and height estimation; the even
/// stack is primary, the odd stack comes from the offset bank.
FeatureResult ridge_measure(const CoefficientStack& stack_even,
                            const CoefficientStack& stack_odd,
                            const MoleculeBank& even_bank,
                            const MeasureParams& params);

/// Blob measure; the primary stack comes from a tensor-squared even bank
/// with alpha = 1 (throws otherwise).
FeatureResult blob_measure(const CoefficientStack& stack_even2,
                           const CoefficientStack& stack_odd,
                           const MoleculeBank& even2_bank,
                           const MeasureParams& params);

/// Parabola-refined tangent estimate per pixel from coefficient magnitudes of
/// the given stack at the per-pixel (j*, theta*); reports the feature tangent
/// (the oscillatory axis plus pi/2) wrapped to the torus.
std::vector<double> orientation_measure(const CoefficientStack& stack,
                                        const std::vector<int>& scale_index,
                                        const std::vector<int>& theta_index,
                                        const std::vector<double>& orientations);

/// One ridge band: bank sizing plus the wavelet pair is shared by the caller.
struct RidgeBandResult {
  FeatureResult result;
  std::vector<int> boundary_scale;  // 1 where j* was first/last in the band
};

/// Multi-band ridge detection: runs ridge_measure per band and keeps, per
/// pixel, the band with the larger ridge measure. Width estimates whose
/// winning scale is the first or last of its band are discarded (width 0).
FeatureResult multiband_ridge(const ImageGrid& f,
                              const std::vector<UserBankParams>& bands,
                              const Wavelet1D& psi_e, const Wavelet1D& psi_o,
                              const MeasureParams& params);

}  // namespace symfeat
