// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <cstddef>
#include <vector>

namespace ggdshrink {

// Dense row-major 2-D array of doubles.
struct Matrix2d {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix2d() = default;
  Matrix2d(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::size_t size() const { return data.size(); }
};

// Grayscale raster with bit-depth metadata. Pixels are stored as doubles;
// the nominal range is [0, 2^bit_depth - 1].
struct ImageBuffer {
  Matrix2d pixels;
  int bit_depth = 8;  // 8 or 16

  std::size_t rows() const { return pixels.rows; }
  std::size_t cols() const { return pixels.cols; }
  double max_value() const { return bit_depth == 16 ? 65535.0 : 255.0; }
};

// Throws std::invalid_argument if dims are zero, bit depth is not 8/16, or
// any pixel is non-finite.
void validate(const ImageBuffer& img);

}  // namespace ggdshrink
