// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

// Deterministic procedural test images with natural-image-like wavelet
// statistics: piecewise-smooth regions, sharp edges and mid-frequency
// texture, kept away from the extremes of the 8-bit range.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "ggdshrink/image.hpp"

namespace test_support {

inline ggdshrink::ImageBuffer make_image(std::size_t rows, std::size_t cols,
                                         double fill = 0.0, int depth = 8) {
  ggdshrink::ImageBuffer img;
  img.pixels = ggdshrink::Matrix2d(rows, cols, fill);
  img.bit_depth = depth;
  return img;
}

// Smooth blobs plus a few hard discs ("peppers"-like).
inline ggdshrink::ImageBuffer blobs_image(std::size_t n = 512) {
  auto img = make_image(n, n, 110.0);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> upos(0.0, 1.0);
  struct Blob { double x, y, r, a; };
  std::vector<Blob> blobs;
  for (int i = 0; i < 14; ++i)
    blobs.push_back({upos(rng) * n, upos(rng) * n, 10.0 + 55.0 * upos(rng),
                     -55.0 + 125.0 * upos(rng)});
  std::vector<Blob> discs;
  for (int i = 0; i < 5; ++i)
    discs.push_back({upos(rng) * n, upos(rng) * n, 18.0 + 40.0 * upos(rng),
                     -45.0 + 90.0 * upos(rng)});
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double v = 110.0 + 25.0 * std::sin(2.0 * M_PI * r / n) +
                 18.0 * static_cast<double>(c) / n;
      for (const Blob& b : blobs) {
        const double d2 = (r - b.y) * (r - b.y) + (c - b.x) * (c - b.x);
        v += b.a * std::exp(-d2 / (2.0 * b.r * b.r));
      }
      for (const Blob& b : discs) {
        const double d2 = (r - b.y) * (r - b.y) + (c - b.x) * (c - b.x);
        if (d2 < b.r * b.r) v += b.a;
      }
      img.pixels(r, c) = std::clamp(v, 25.0, 230.0);
    }
  }
  return img;
}

// Gradient background with rectangles, bars and rings (piecewise constant,
// edge heavy).
inline ggdshrink::ImageBuffer geometric_image(std::size_t n = 512) {
  auto img = make_image(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      img.pixels(r, c) = 70.0 + 90.0 * static_cast<double>(r) / n +
                         20.0 * static_cast<double>(c) / n;
  auto rect = [&](std::size_t r0, std::size_t c0, std::size_t r1,
                  std::size_t c1, double value) {
    for (std::size_t r = r0; r < std::min(r1, n); ++r)
      for (std::size_t c = c0; c < std::min(c1, n); ++c)
        img.pixels(r, c) = value;
  };
  rect(40, 60, 150, 210, 190.0);
  rect(90, 300, 230, 460, 55.0);
  rect(300, 80, 470, 180, 160.0);
  rect(350, 240, 380, 500, 205.0);
  for (std::size_t i = 0; i < n; i += 24) rect(i, 220, i + 4, 280, 120.0);
  const double cy = 330, cx = 380;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double d = std::hypot(r - cy, c - cx);
      if (d > 60 && d < 75) img.pixels(r, c) = 35.0;
      if (d <= 40) img.pixels(r, c) = 150.0 + 40.0 * std::cos(d / 6.0);
    }
  for (auto& v : img.pixels.data) v = std::clamp(v, 25.0, 230.0);
  return img;
}

// Multi-scale filtered noise plus a step edge ("mandrill"-like texture).
inline ggdshrink::ImageBuffer texture_image(std::size_t n = 512) {
  auto img = make_image(n, n);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ggdshrink::Matrix2d field(n, n);
  for (auto& v : field.data) v = gauss(rng);
  // separable box smoothing at two scales
  auto smooth = [&](const ggdshrink::Matrix2d& in, int radius) {
    ggdshrink::Matrix2d tmp(n, n), out(n, n);
    const double norm = 1.0 / (2 * radius + 1);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const std::size_t cc = (c + n + k) % n;
          acc += in(r, cc);
        }
        tmp(r, c) = acc * norm;
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const std::size_t rr = (r + n + k) % n;
          acc += tmp(rr, c);
        }
        out(r, c) = acc * norm;
      }
    return out;
  };
  const auto coarse = smooth(field, 9);
  const auto fine = smooth(field, 2);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double v = 120.0 + 220.0 * coarse(r, c) + 60.0 * fine(r, c);
      if (c > n / 2 && r < n / 3) v += 35.0;  // one large step region
      img.pixels(r, c) = std::clamp(v, 25.0, 230.0);
    }
  return img;
}

}  // namespace test_support
