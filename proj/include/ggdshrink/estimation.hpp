// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "ggdshrink/thresholds.hpp"

namespace ggdshrink {

// Sample moments of one subband.  var_noisy uses the 1/M normalization and
// kurtosis uses sum (y - m)^4 / ((M - 1) var^2); both follow the estimator
// definitions used by the thresholds, not a single consistent convention.
struct MomentStats {
  double mean = 0.0;
  double var_noisy = 0.0;
  double kurtosis = 0.0;
  bool degenerate = false;  // var_noisy == 0, kurtosis undefined
};

// Per-subband record produced by the denoising pipeline.
struct SubbandStats {
  int level = 0;        // 1 = finest
  int orientation = 0;  // 0 = LH, 1 = HL, 2 = HH
  std::size_t n = 0;
  double mean = 0.0;
  double var_noisy = 0.0;
  double kurtosis = 0.0;
  double sigma_ybar = 0.0;
  std::optional<double> beta_hat;
  double threshold = 0.0;  // +inf means the subband was zeroed
  ThresholdRule rule;
};

// median(|x|) / 0.6745 over the finest diagonal subband.  Returns 0 for an
// all-zero band (clean input); throws on empty input.
double estimate_noise_mad(std::span<const double> hh1_coeffs);

// Mean, biased variance and fourth-moment kurtosis.  Requires n >= 4.
MomentStats subband_stats(std::span<const double> coeffs);

// sqrt(max(var_noisy - sigma_w^2, 0)); the clamp marks noise-dominated
// subbands, which the pipeline then kills.
double estimate_signal_sigma(double var_noisy, double sigma_w);

// Moment-matching shape estimate: solves
//   kurtosis_ratio(beta) = (k vy^2 - 6 sw^2 vy + 3 sw^4) / (vy - sw^2)^2
// for beta by bisection on [0.05, 3], clamping the target into the
// attainable range first.  Requires var_noisy > sigma_w^2.
double estimate_beta_mme(double kurtosis, double var_noisy, double sigma_w);

constexpr double kBetaSearchMin = 0.05;
constexpr double kBetaSearchMax = 3.0;

}  // namespace ggdshrink
