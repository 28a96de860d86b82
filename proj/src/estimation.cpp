// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ggdshrink/ggd.hpp"

namespace ggdshrink {

namespace {
// Normal quartile: median(|N(0, s^2)|) = 0.6745 s.
constexpr double kMadScale = 0.6745;
}

double estimate_noise_mad(std::span<const double> hh1_coeffs) {
  if (hh1_coeffs.empty())
    throw std::invalid_argument("estimate_noise_mad: empty subband");
  std::vector<double> mags(hh1_coeffs.size());
  std::transform(hh1_coeffs.begin(), hh1_coeffs.end(), mags.begin(),
                 [](double v) { return std::fabs(v); });
  const std::size_t n = mags.size();
  auto mid = mags.begin() + n / 2;
  std::nth_element(mags.begin(), mid, mags.end());
  double median = *mid;
  if (n % 2 == 0) {
    // lower middle is the max of the left partition
    median = 0.5 * (median + *std::max_element(mags.begin(), mid));
  }
  return median / kMadScale;
}

MomentStats subband_stats(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  if (n < 4)
    throw std::invalid_argument("subband_stats: need at least 4 coefficients");
  double sum = 0.0;
  for (double v : coeffs) sum += v;
  const double mean = sum / static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double v : coeffs) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  MomentStats out;
  out.mean = mean;
  out.var_noisy = m2 / static_cast<double>(n);
  if (out.var_noisy == 0.0) {
    out.degenerate = true;
    out.kurtosis = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.kurtosis =
        m4 / (static_cast<double>(n - 1) * out.var_noisy * out.var_noisy);
  }
  return out;
}

double estimate_signal_sigma(double var_noisy, double sigma_w) {
  if (!std::isfinite(var_noisy) || !std::isfinite(sigma_w) || var_noisy < 0.0 ||
      sigma_w < 0.0)
    throw std::invalid_argument("estimate_signal_sigma: invalid inputs");
  const double diff = var_noisy - sigma_w * sigma_w;
  return diff > 0.0 ? std::sqrt(diff) : 0.0;
}

double estimate_beta_mme(double kurtosis, double var_noisy, double sigma_w) {
  if (!std::isfinite(kurtosis) || !std::isfinite(var_noisy) ||
      !std::isfinite(sigma_w) || sigma_w < 0.0)
    throw std::invalid_argument("estimate_beta_mme: invalid inputs");
  const double sw2 = sigma_w * sigma_w;
  if (!(var_noisy > sw2))
    throw std::invalid_argument(
        "estimate_beta_mme: requires var_noisy > sigma_w^2 (shape is "
        "unidentifiable when noise dominates)");
  const double signal_var = var_noisy - sw2;
  double target = (kurtosis * var_noisy * var_noisy - 6.0 * sw2 * var_noisy +
                   3.0 * sw2 * sw2) /
                  (signal_var * signal_var);

  // kurtosis_ratio is strictly decreasing, so clamping the target into its
  // attainable range keeps the bisection bracketed.
  const double hi_val = kurtosis_ratio(kBetaSearchMin);
  const double lo_val = kurtosis_ratio(kBetaSearchMax);
  target = std::clamp(target, lo_val, hi_val);

  double lo = kBetaSearchMin, hi = kBetaSearchMax;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (kurtosis_ratio(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ggdshrink
