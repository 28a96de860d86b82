// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/image.hpp"

#include <cmath>
#include <stdexcept>

namespace ggdshrink {

void validate(const ImageBuffer& img) {
  if (img.rows() == 0 || img.cols() == 0)
    throw std::invalid_argument("ImageBuffer: empty image");
  if (img.bit_depth != 8 && img.bit_depth != 16)
    throw std::invalid_argument("ImageBuffer: bit_depth must be 8 or 16");
  if (img.pixels.data.size() != img.rows() * img.cols())
    throw std::invalid_argument("ImageBuffer: pixel storage size mismatch");
  for (double v : img.pixels.data)
    if (!std::isfinite(v))
      throw std::invalid_argument("ImageBuffer: non-finite pixel");
}

}  // namespace ggdshrink
