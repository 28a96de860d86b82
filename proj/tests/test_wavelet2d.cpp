// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ggdshrink/wavelet2d.hpp"
#include "test_support.hpp"

using namespace ggdshrink;

namespace {

double energy(const Matrix2d& m) {
  double acc = 0.0;
  for (double v : m.data) acc += v * v;
  return acc;
}

double pyramid_energy(const WaveletPyramid& p) {
  double acc = energy(p.approx);
  for (const auto& d : p.details)
    acc += energy(d.lh) + energy(d.hl) + energy(d.hh);
  return acc;
}

ImageBuffer random_image(std::size_t n, std::uint64_t seed) {
  auto img = test_support::make_image(n, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  for (double& v : img.pixels.data) v = u(rng);
  return img;
}

}  // namespace

TEST_CASE("constant 2x2 image concentrates in the approximation") {
  const double c = 7.25;
  auto img = test_support::make_image(2, 2, c);
  const auto pyr = dwt2_forward(img, 1);
  CHECK(pyr.approx(0, 0) == doctest::Approx(2.0 * c).epsilon(1e-15));
  CHECK(pyr.details[0].lh(0, 0) == 0.0);
  CHECK(pyr.details[0].hl(0, 0) == 0.0);
  CHECK(pyr.details[0].hh(0, 0) == 0.0);
}

TEST_CASE("4x4 analysis matches the explicit filter-bank matrices") {
  auto img = test_support::make_image(4, 4);
  double value = 1.0;
  for (auto& v : img.pixels.data) v = value++;  // distinct entries

  // independent oracle: K_low/K_high as explicit 2x4 matrices, bands =
  // K_row * X * K_col^T with the same 1/sqrt(2) taps
  const double s = 1.0 / std::sqrt(2.0);
  const double kl[2][4] = {{s, s, 0, 0}, {0, 0, s, s}};
  const double kh[2][4] = {{s, -s, 0, 0}, {0, 0, s, -s}};
  auto mix = [&](const double (&row)[2][4], const double (&col)[2][4],
                 std::size_t r, std::size_t c) {
    // (row filter over columns of X) then (col filter over rows)
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc += col[r][i] * row[c][j] * img.pixels(i, j);
    return acc;
  };
  const auto pyr = dwt2_forward(img, 1);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(pyr.approx(r, c) == doctest::Approx(mix(kl, kl, r, c)).epsilon(1e-13));
      CHECK(pyr.details[0].lh(r, c) ==
            doctest::Approx(mix(kl, kh, r, c)).epsilon(1e-13));
      CHECK(pyr.details[0].hl(r, c) ==
            doctest::Approx(mix(kh, kl, r, c)).epsilon(1e-13));
      CHECK(pyr.details[0].hh(r, c) ==
            doctest::Approx(mix(kh, kh, r, c)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Parseval and round trip on a 512x512 random image") {
  const auto img = random_image(512, 99);
  const auto pyr = dwt2_forward(img, 5);

  const double ein = energy(img.pixels);
  const double eout = pyramid_energy(pyr);
  CHECK(std::fabs(eout - ein) / ein < 1e-12);

  const auto back = dwt2_inverse(pyr);
  double max_err = 0.0;
  for (std::size_t i = 0; i < img.pixels.data.size(); ++i)
    max_err = std::max(max_err,
                       std::fabs(back.pixels.data[i] - img.pixels.data[i]));
  CHECK(max_err < 1e-10);
  CHECK(back.bit_depth == img.bit_depth);
}

TEST_CASE("subband dimension bookkeeping on 512x512") {
  const auto img = random_image(512, 1);
  for (std::size_t levels = 1; levels <= 5; ++levels) {
    const auto pyr = dwt2_forward(img, levels);
    std::size_t total = pyr.approx.size();
    for (std::size_t k = 0; k < levels; ++k) {
      const std::size_t expect = 512 >> (k + 1);
      CHECK(pyr.details[k].lh.rows == expect);
      CHECK(pyr.details[k].lh.cols == expect);
      CHECK(pyr.details[k].hh.rows == expect);
      total += pyr.details[k].lh.size() + pyr.details[k].hl.size() +
               pyr.details[k].hh.size();
    }
    CHECK(total == 512 * 512);
  }
}

TEST_CASE("all-zero pyramid reconstructs to zeros") {
  const auto img = test_support::make_image(64, 64, 5.0);
  auto pyr = dwt2_forward(img, 3);
  pyr.approx = Matrix2d(pyr.approx.rows, pyr.approx.cols, 0.0);
  for (auto& d : pyr.details) {
    d.lh = Matrix2d(d.lh.rows, d.lh.cols, 0.0);
    d.hl = Matrix2d(d.hl.rows, d.hl.cols, 0.0);
    d.hh = Matrix2d(d.hh.rows, d.hh.cols, 0.0);
  }
  const auto back = dwt2_inverse(pyr);
  for (double v : back.pixels.data) CHECK(v == 0.0);
}

TEST_CASE("a single unit coefficient reconstructs an orthonormal atom") {
  const auto img = test_support::make_image(64, 64, 0.0);
  auto pyr = dwt2_forward(img, 3);
  pyr.details[2].hh(3, 4) = 1.0;  // one coefficient in HH3
  const auto atom = dwt2_inverse(pyr);
  CHECK(energy(atom.pixels) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linearity of the forward transform") {
  const auto x = random_image(64, 2);
  const auto y = random_image(64, 3);
  const double a = 1.7, b = -0.6;
  auto combo = test_support::make_image(64, 64);
  for (std::size_t i = 0; i < combo.pixels.data.size(); ++i)
    combo.pixels.data[i] = a * x.pixels.data[i] + b * y.pixels.data[i];
  const auto px = dwt2_forward(x, 3);
  const auto py = dwt2_forward(y, 3);
  const auto pc = dwt2_forward(combo, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < pc.details[k].hh.data.size(); ++i) {
      const double want =
          a * px.details[k].hh.data[i] + b * py.details[k].hh.data[i];
      CHECK(pc.details[k].hh.data[i] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("white noise keeps its variance in every subband") {
  // fixed seed: the coarsest bands have only 256 coefficients, so the +-5%
  // window leaves little room for sampling noise
  auto img = test_support::make_image(512, 512);
  const double sigma = 3.0;
  std::mt19937_64 rng(185);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (double& v : img.pixels.data) v = gauss(rng);
  const auto pyr = dwt2_forward(img, 5);
  auto check_band = [&](const Matrix2d& band) {
    double mean = 0.0;
    for (double v : band.data) mean += v;
    mean /= band.size();
    double var = 0.0;
    for (double v : band.data) var += (v - mean) * (v - mean);
    var /= band.size();
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.05));
  };
  for (const auto& d : pyr.details) {
    check_band(d.lh);
    check_band(d.hl);
    check_band(d.hh);
  }
}

TEST_CASE("dimension errors") {
  const auto img = random_image(96, 4);  // 96 = 2^5 * 3
  CHECK_THROWS_WITH_AS(static_cast<void>(dwt2_forward(img, 6)),
                       doctest::Contains("divisible"), std::invalid_argument);
  auto pyr = dwt2_forward(img, 3);
  pyr.details[1].hl = Matrix2d(3, 3);
  CHECK_THROWS_AS(static_cast<void>(dwt2_inverse(pyr)), std::invalid_argument);
}
