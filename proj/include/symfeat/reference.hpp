// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "symfeat/transform.hpp"

namespace symfeat {

/// Serial reference path: direct sliding-window correlation in the spatial
/// domain with the same reflective boundary handling as analyze(). Slow but
/// obviously correct; the test suite and the bench subcommand hold the FFT
/// path against it.
CoefficientStack analyze_direct(const ImageGrid& f, const MoleculeBank& bank);

/// Direct correlation of a single filter (one slice of the above).
void correlate_direct(const ImageGrid& f, const Filter2D& filter, double* out);

}  // namespace symfeat
