// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <cstddef>
#include <vector>

#include "ggdshrink/image.hpp"

namespace ggdshrink {

// One level of 2-D detail bands.  The first letter is the row (horizontal)
// filter, the second the column filter: lh = lowpass rows / highpass
// columns, hl the transpose, hh the diagonal band.
struct DetailBands {
  Matrix2d lh;
  Matrix2d hl;
  Matrix2d hh;
};

// Multi-level orthonormal Haar decomposition.  details[0] is the finest
// level (level 1); approx is the remaining LL band after `levels` stages.
struct WaveletPyramid {
  std::size_t levels = 0;
  Matrix2d approx;
  std::vector<DetailBands> details;
  std::size_t original_rows = 0;
  std::size_t original_cols = 0;
  int bit_depth = 8;
};

// Separable orthonormal Haar analysis, recursively applied to the LL band.
// Requires rows and cols divisible by 2^levels (no padding); the transform
// preserves energy exactly up to rounding (Parseval).
WaveletPyramid dwt2_forward(const ImageBuffer& image, std::size_t levels);

// Perfect-reconstruction synthesis.  Throws if any band's dimensions are
// inconsistent with the recorded original size.
ImageBuffer dwt2_inverse(const WaveletPyramid& pyramid);

}  // namespace ggdshrink
