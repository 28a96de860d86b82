// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/wavelet2d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggdshrink {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// One separable analysis stage: rows then columns.
// L[i] = (a + b) / sqrt(2), H[i] = (a - b) / sqrt(2)
void haar_analyze(const Matrix2d& in, Matrix2d& ll, Matrix2d& lh, Matrix2d& hl,
                  Matrix2d& hh) {
  const std::size_t rows = in.rows, cols = in.cols;
  const std::size_t hr = rows / 2, hc = cols / 2;
  Matrix2d low(rows, hc), high(rows, hc);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < hc; ++c) {
      const double a = in(r, 2 * c);
      const double b = in(r, 2 * c + 1);
      low(r, c) = (a + b) * kInvSqrt2;
      high(r, c) = (a - b) * kInvSqrt2;
    }
  }
  ll = Matrix2d(hr, hc);
  lh = Matrix2d(hr, hc);
  hl = Matrix2d(hr, hc);
  hh = Matrix2d(hr, hc);
  for (std::size_t c = 0; c < hc; ++c) {
    for (std::size_t r = 0; r < hr; ++r) {
      const double la = low(2 * r, c);
      const double lb = low(2 * r + 1, c);
      ll(r, c) = (la + lb) * kInvSqrt2;
      lh(r, c) = (la - lb) * kInvSqrt2;
      const double ha = high(2 * r, c);
      const double hb = high(2 * r + 1, c);
      hl(r, c) = (ha + hb) * kInvSqrt2;
      hh(r, c) = (ha - hb) * kInvSqrt2;
    }
  }
}

// Inverse of one stage: columns then rows.
Matrix2d haar_synthesize(const Matrix2d& ll, const Matrix2d& lh,
                         const Matrix2d& hl, const Matrix2d& hh) {
  const std::size_t hr = ll.rows, hc = ll.cols;
  const std::size_t rows = 2 * hr, cols = 2 * hc;
  Matrix2d low(rows, hc), high(rows, hc);
  for (std::size_t c = 0; c < hc; ++c) {
    for (std::size_t r = 0; r < hr; ++r) {
      low(2 * r, c) = (ll(r, c) + lh(r, c)) * kInvSqrt2;
      low(2 * r + 1, c) = (ll(r, c) - lh(r, c)) * kInvSqrt2;
      high(2 * r, c) = (hl(r, c) + hh(r, c)) * kInvSqrt2;
      high(2 * r + 1, c) = (hl(r, c) - hh(r, c)) * kInvSqrt2;
    }
  }
  Matrix2d out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < hc; ++c) {
      out(r, 2 * c) = (low(r, c) + high(r, c)) * kInvSqrt2;
      out(r, 2 * c + 1) = (low(r, c) - high(r, c)) * kInvSqrt2;
    }
  }
  return out;
}

void check_band(const Matrix2d& band, std::size_t rows, std::size_t cols,
                const char* name) {
  if (band.rows != rows || band.cols != cols)
    throw std::invalid_argument(std::string("dwt2_inverse: band ") + name +
                                " has inconsistent dimensions");
}

}  // namespace

WaveletPyramid dwt2_forward(const ImageBuffer& image, std::size_t levels) {
  if (levels < 1)
    throw std::invalid_argument("dwt2_forward: levels must be >= 1");
  const std::size_t rows = image.rows(), cols = image.cols();
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("dwt2_forward: empty image");
  const std::size_t divisor = std::size_t{1} << levels;
  if (rows % divisor != 0 || cols % divisor != 0)
    throw std::invalid_argument(
        "dwt2_forward: image dimensions (" + std::to_string(rows) + "x" +
        std::to_string(cols) + ") must be divisible by 2^levels = " +
        std::to_string(divisor));

  WaveletPyramid pyr;
  pyr.levels = levels;
  pyr.original_rows = rows;
  pyr.original_cols = cols;
  pyr.bit_depth = image.bit_depth;
  pyr.details.resize(levels);

  Matrix2d current = image.pixels;
  for (std::size_t k = 0; k < levels; ++k) {
    Matrix2d ll;
    haar_analyze(current, ll, pyr.details[k].lh, pyr.details[k].hl,
                 pyr.details[k].hh);
    current = std::move(ll);
  }
  pyr.approx = std::move(current);
  return pyr;
}

ImageBuffer dwt2_inverse(const WaveletPyramid& pyramid) {
  if (pyramid.levels == 0 || pyramid.details.size() != pyramid.levels)
    throw std::invalid_argument("dwt2_inverse: malformed pyramid");
  const std::size_t divisor = std::size_t{1} << pyramid.levels;
  if (pyramid.original_rows % divisor != 0 ||
      pyramid.original_cols % divisor != 0)
    throw std::invalid_argument("dwt2_inverse: original dims not divisible");

  std::size_t rows = pyramid.original_rows / divisor;
  std::size_t cols = pyramid.original_cols / divisor;
  check_band(pyramid.approx, rows, cols, "approx");

  Matrix2d current = pyramid.approx;
  for (std::size_t k = pyramid.levels; k-- > 0;) {
    const DetailBands& d = pyramid.details[k];
    check_band(d.lh, rows, cols, "lh");
    check_band(d.hl, rows, cols, "hl");
    check_band(d.hh, rows, cols, "hh");
    current = haar_synthesize(current, d.lh, d.hl, d.hh);
    rows *= 2;
    cols *= 2;
  }

  ImageBuffer out;
  out.pixels = std::move(current);
  out.bit_depth = pyramid.bit_depth;
  return out;
}

}  // namespace ggdshrink
