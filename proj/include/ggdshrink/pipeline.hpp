// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ggdshrink/estimation.hpp"
#include "ggdshrink/image.hpp"
#include "ggdshrink/thresholds.hpp"

namespace ggdshrink {

struct DenoiseReport {
  double sigma_w_hat = 0.0;
  ThresholdRule rule;
  std::size_t levels = 0;
  std::vector<SubbandStats> subbands;  // 3 * levels entries, finest first
  std::chrono::duration<double> elapsed{0.0};
};

struct BenchmarkRow {
  std::optional<double> beta;  // synthetic benchmarks only
  double snr_db = 0.0;
  std::string rule;
  double psnr_db = 0.0;
  double psnr_std = 0.0;
  std::optional<double> ssim;  // image benchmarks only
  int runs = 0;
};

// Stable mixing of a master seed with cell indices, so benchmark cells can
// be evaluated in any order with identical results.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Adds i.i.d. zero-mean Gaussian noise with
// sigma_w = std(image) * 10^(-snr_db/20).  The output is not clipped.
// snr_db = +inf is the no-noise flag and returns the input unchanged.
// Throws for a constant image.
ImageBuffer add_noise(const ImageBuffer& image, double snr_db,
                      std::uint64_t seed);

// Full pipeline: forward Haar DWT, MAD noise estimate on HH1, per-subband
// moment estimation and thresholding, inverse DWT, clamp to pixel range.
// The approximation band passes through untouched.  beta_pin forces the
// shape estimate in every subband (used to demonstrate that BayesShrink is
// the beta = 1 slice of the R-BayesShrink rule).
std::pair<ImageBuffer, DenoiseReport> denoise(
    const ImageBuffer& image, const ThresholdRule& rule, std::size_t levels = 5,
    std::optional<double> beta_pin = std::nullopt);

// 10 log10((2^B - 1)^2 / MSE).  Identical images return +inf.
double psnr(const ImageBuffer& reference, const ImageBuffer& test);

// Mean SSIM index with the standard parameters: 11x11 Gaussian window with
// sigma 1.5, K1 = 0.01, K2 = 0.03, dynamic range 2^B - 1.
double ssim(const ImageBuffer& reference, const ImageBuffer& test);

// Coefficient-domain benchmark: per (beta, snr, rule) cell, draw n GGD
// coefficients at an image-like subband scale (sigma = 30; the LSEB rule is
// not scale free, so the scale is part of the experiment definition), add
// Gaussian noise at the requested SNR, estimate sigma_ybar / beta from the
// noisy data (the true sigma_w is used, since there is no separate
// noise-only band to estimate it from), apply the rule and report PSNR over
// the clean coefficients.  The PSNR peak is the clean coefficient range
// max - min.  All rules share the same noise realization within a run, so
// rule comparisons are paired.
std::vector<BenchmarkRow> benchmark_synthetic(
    std::span<const double> betas, std::span<const double> snrs_db,
    std::span<const ThresholdRule> rules, int runs, std::size_t n,
    std::uint64_t seed, std::optional<double> beta_pin = std::nullopt);

// Image benchmark: per (snr, rule) cell, add noise, denoise, report PSNR and
// SSIM against the clean image.  Rules share noise within a run.
std::vector<BenchmarkRow> benchmark_image(
    const ImageBuffer& image, std::span<const double> snrs_db,
    std::span<const ThresholdRule> rules, int runs, std::uint64_t seed,
    std::size_t levels = 5, std::optional<double> beta_pin = std::nullopt);

}  // namespace ggdshrink
