// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ggdshrink/wavelet2d.hpp"

namespace ggdshrink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scale of the synthetic GGD coefficients.  The LSEB rule is not scale
// free (sigma_w^2 / sigma_ybar^beta has dimension sigma^(2-beta)), so the
// benchmark pins an image-like detail-subband scale instead of unit
// variance.
constexpr double kSyntheticPriorSigma = 30.0;

double population_std(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) {
    const double d = x - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double mse(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

void check_beta_pin(const std::optional<double>& pin) {
  if (pin && (!(*pin >= kBetaSearchMin) || !(*pin <= kBetaSearchMax)))
    throw std::invalid_argument("beta_pin must lie in [0.05, 3]");
}

// Threshold for one subband under a rule.  sigma_w == 0 means a clean input:
// adaptive rules then leave the band untouched.
double threshold_for_rule(const ThresholdRule& rule, double sigma_w,
                          double sigma_ybar, std::optional<double> beta_hat) {
  if (rule.kind == ThresholdKind::Fixed) {
    if (!(rule.fixed_value >= 0.0))
      throw std::invalid_argument("fixed threshold must be >= 0");
    return rule.fixed_value;
  }
  if (sigma_w == 0.0) return 0.0;
  switch (rule.kind) {
    case ThresholdKind::BayesShrink:
      return threshold_bayes(sigma_w, sigma_ybar);
    case ThresholdKind::MAPLaplace:
      return threshold_map_laplace(sigma_w, sigma_ybar);
    case ThresholdKind::RBayesShrink:
      if (sigma_ybar == 0.0) return kInf;
      if (!beta_hat) throw std::logic_error("rbayes rule without a shape estimate");
      return threshold_r_bayes(sigma_w, sigma_ybar, *beta_hat);
    case ThresholdKind::LSEB:
      if (sigma_ybar == 0.0) return kInf;
      if (!beta_hat) throw std::logic_error("lseb rule without a shape estimate");
      return threshold_lseb(sigma_w, sigma_ybar, *beta_hat);
    case ThresholdKind::Fixed:
      break;
  }
  throw std::logic_error("unknown threshold rule");
}

void apply_threshold(Matrix2d& band, double t) {
  if (t == 0.0) return;
  if (t == kInf) {
    std::fill(band.data.begin(), band.data.end(), 0.0);
    return;
  }
  for (double& c : band.data) c = soft_threshold(c, t);
}

struct RunStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / n; }
  double stddev() const {
    const double m = mean();
    const double v = sum_sq / n - m * m;
    return v > 0.0 ? std::sqrt(v) : 0.0;
  }
};

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step over the combined words
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ImageBuffer add_noise(const ImageBuffer& image, double snr_db,
                      std::uint64_t seed) {
  validate(image);
  if (snr_db == kInf) return image;  // no-noise flag
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("add_noise: snr_db must be finite or +inf");
  const double sd = population_std(image.pixels.data);
  if (sd == 0.0)
    throw std::invalid_argument("add_noise: constant image has no SNR scale");
  const double sigma_w = sd * std::pow(10.0, -snr_db / 20.0);

  ImageBuffer out = image;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma_w);
  for (double& v : out.pixels.data) v += gauss(rng);
  return out;
}

std::pair<ImageBuffer, DenoiseReport> denoise(const ImageBuffer& image,
                                              const ThresholdRule& rule,
                                              std::size_t levels,
                                              std::optional<double> beta_pin) {
  const auto start = std::chrono::steady_clock::now();
  validate(image);
  check_beta_pin(beta_pin);
  // every subband needs at least 4 coefficients for its moment estimates
  if ((image.rows() >> levels) * (image.cols() >> levels) < 4)
    throw std::invalid_argument(
        "denoise: too many levels for this image size (coarsest subband "
        "smaller than 4 coefficients)");
  WaveletPyramid pyr = dwt2_forward(image, levels);

  DenoiseReport report;
  report.rule = rule;
  report.levels = levels;
  report.sigma_w_hat = estimate_noise_mad(pyr.details[0].hh.data);
  const double sw = report.sigma_w_hat;
  const double sw2 = sw * sw;

  for (std::size_t k = 0; k < levels; ++k) {
    Matrix2d* bands[3] = {&pyr.details[k].lh, &pyr.details[k].hl,
                          &pyr.details[k].hh};
    for (int orient = 0; orient < 3; ++orient) {
      Matrix2d& band = *bands[orient];
      const MomentStats ms = subband_stats(band.data);
      const double sigma_ybar = estimate_signal_sigma(ms.var_noisy, sw);

      std::optional<double> beta_hat;
      if (beta_pin)
        beta_hat = *beta_pin;
      else if (!ms.degenerate && ms.var_noisy > sw2)
        beta_hat = estimate_beta_mme(ms.kurtosis, ms.var_noisy, sw);

      const double t = threshold_for_rule(rule, sw, sigma_ybar, beta_hat);
      apply_threshold(band, t);

      SubbandStats ss;
      ss.level = static_cast<int>(k + 1);
      ss.orientation = orient;
      ss.n = band.size();
      ss.mean = ms.mean;
      ss.var_noisy = ms.var_noisy;
      ss.kurtosis = ms.kurtosis;
      ss.sigma_ybar = sigma_ybar;
      ss.beta_hat = beta_hat;
      ss.threshold = t;
      ss.rule = rule;
      report.subbands.push_back(ss);
    }
  }

  ImageBuffer out = dwt2_inverse(pyr);
  const double peak = out.max_value();
  for (double& v : out.pixels.data) v = std::clamp(v, 0.0, peak);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(out), std::move(report)};
}

double psnr(const ImageBuffer& reference, const ImageBuffer& test) {
  validate(reference);
  validate(test);
  if (reference.rows() != test.rows() || reference.cols() != test.cols())
    throw std::invalid_argument("psnr: image dimensions differ");
  if (reference.bit_depth != test.bit_depth)
    throw std::invalid_argument("psnr: bit depths differ");
  const double err = mse(reference.pixels.data, test.pixels.data);
  if (err == 0.0) return kInf;
  const double peak = reference.max_value();
  return 10.0 * std::log10(peak * peak / err);
}

namespace {

// Separable valid-mode filtering with a normalized 1-D kernel.
Matrix2d filter_valid(const Matrix2d& in, std::span<const double> kernel) {
  const std::size_t k = kernel.size();
  Matrix2d horiz(in.rows, in.cols - k + 1);
  for (std::size_t r = 0; r < in.rows; ++r) {
    for (std::size_t c = 0; c < horiz.cols; ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += kernel[i] * in(r, c + i);
      horiz(r, c) = acc;
    }
  }
  Matrix2d out(in.rows - k + 1, horiz.cols);
  for (std::size_t c = 0; c < out.cols; ++c) {
    for (std::size_t r = 0; r < out.rows; ++r) {
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += kernel[i] * horiz(r + i, c);
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const ImageBuffer& reference, const ImageBuffer& test) {
  validate(reference);
  validate(test);
  if (reference.rows() != test.rows() || reference.cols() != test.cols())
    throw std::invalid_argument("ssim: image dimensions differ");
  if (reference.bit_depth != test.bit_depth)
    throw std::invalid_argument("ssim: bit depths differ");
  constexpr std::size_t kWindow = 11;
  if (reference.rows() < kWindow || reference.cols() < kWindow)
    throw std::invalid_argument("ssim: images must be at least 11x11");

  double kernel[kWindow];
  constexpr double kSigma = 1.5;
  double ksum = 0.0;
  for (std::size_t i = 0; i < kWindow; ++i) {
    const double d = static_cast<double>(i) - 5.0;
    kernel[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    ksum += kernel[i];
  }
  for (double& v : kernel) v /= ksum;

  const Matrix2d& x = reference.pixels;
  const Matrix2d& y = test.pixels;
  Matrix2d xx(x.rows, x.cols), yy(x.rows, x.cols), xy(x.rows, x.cols);
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    xx.data[i] = x.data[i] * x.data[i];
    yy.data[i] = y.data[i] * y.data[i];
    xy.data[i] = x.data[i] * y.data[i];
  }

  const Matrix2d mu_x = filter_valid(x, kernel);
  const Matrix2d mu_y = filter_valid(y, kernel);
  const Matrix2d s_xx = filter_valid(xx, kernel);
  const Matrix2d s_yy = filter_valid(yy, kernel);
  const Matrix2d s_xy = filter_valid(xy, kernel);

  const double peak = reference.max_value();
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);

  double acc = 0.0;
  for (std::size_t i = 0; i < mu_x.data.size(); ++i) {
    const double mx = mu_x.data[i], my = mu_y.data[i];
    const double vx = s_xx.data[i] - mx * mx;
    const double vy = s_yy.data[i] - my * my;
    const double cov = s_xy.data[i] - mx * my;
    const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
    const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
    acc += num / den;
  }
  return acc / static_cast<double>(mu_x.data.size());
}

std::vector<BenchmarkRow> benchmark_synthetic(
    std::span<const double> betas, std::span<const double> snrs_db,
    std::span<const ThresholdRule> rules, int runs, std::size_t n,
    std::uint64_t seed, std::optional<double> beta_pin) {
  if (runs < 1) throw std::invalid_argument("benchmark_synthetic: runs >= 1");
  if (n < 1024) throw std::invalid_argument("benchmark_synthetic: n >= 1024");
  check_beta_pin(beta_pin);
  if (betas.empty() || snrs_db.empty() || rules.empty())
    throw std::invalid_argument("benchmark_synthetic: empty parameter list");

  std::vector<BenchmarkRow> out;
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    for (std::size_t si = 0; si < snrs_db.size(); ++si) {
      std::vector<RunStats> per_rule(rules.size());
      for (int run = 0; run < runs; ++run) {
        // One seed per (beta, snr, run) cell: every rule sees the same data,
        // so rule comparisons are paired.
        const std::uint64_t cell =
            (bi * snrs_db.size() + si) * static_cast<std::uint64_t>(runs) + run;
        const std::uint64_t child = mix_seed(seed, cell);

        const GgdModel prior{kSyntheticPriorSigma, betas[bi]};
        std::vector<double> clean = ggd_sample(prior, n, mix_seed(child, 1));
        const double sd = population_std(clean);
        const double sigma_w = sd * std::pow(10.0, -snrs_db[si] / 20.0);

        std::vector<double> noisy(clean.size());
        std::mt19937_64 rng(mix_seed(child, 2));
        std::normal_distribution<double> gauss(0.0, sigma_w);
        for (std::size_t i = 0; i < clean.size(); ++i)
          noisy[i] = clean[i] + gauss(rng);

        const auto [min_it, max_it] =
            std::minmax_element(clean.begin(), clean.end());
        const double peak = *max_it - *min_it;

        const MomentStats ms = subband_stats(noisy);
        const double sigma_ybar = estimate_signal_sigma(ms.var_noisy, sigma_w);
        std::optional<double> beta_hat;
        if (beta_pin)
          beta_hat = *beta_pin;
        else if (!ms.degenerate && ms.var_noisy > sigma_w * sigma_w)
          beta_hat = estimate_beta_mme(ms.kurtosis, ms.var_noisy, sigma_w);

        std::vector<double> denoised(noisy.size());
        for (std::size_t ri = 0; ri < rules.size(); ++ri) {
          const double t =
              threshold_for_rule(rules[ri], sigma_w, sigma_ybar, beta_hat);
          if (t == kInf) {
            std::fill(denoised.begin(), denoised.end(), 0.0);
          } else {
            for (std::size_t i = 0; i < noisy.size(); ++i)
              denoised[i] = soft_threshold(noisy[i], t);
          }
          const double err = mse(clean, denoised);
          per_rule[ri].add(err == 0.0 ? kInf
                                      : 10.0 * std::log10(peak * peak / err));
        }
      }
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        BenchmarkRow row;
        row.beta = betas[bi];
        row.snr_db = snrs_db[si];
        row.rule = rule_name(rules[ri]);
        row.psnr_db = per_rule[ri].mean();
        row.psnr_std = per_rule[ri].stddev();
        row.runs = runs;
        out.push_back(std::move(row));
      }
    }
  }
  return out;
}

std::vector<BenchmarkRow> benchmark_image(const ImageBuffer& image,
                                          std::span<const double> snrs_db,
                                          std::span<const ThresholdRule> rules,
                                          int runs, std::uint64_t seed,
                                          std::size_t levels,
                                          std::optional<double> beta_pin) {
  if (runs < 1) throw std::invalid_argument("benchmark_image: runs >= 1");
  if (snrs_db.empty() || rules.empty())
    throw std::invalid_argument("benchmark_image: empty parameter list");
  validate(image);

  std::vector<BenchmarkRow> out;
  for (std::size_t si = 0; si < snrs_db.size(); ++si) {
    std::vector<RunStats> psnr_stats(rules.size());
    std::vector<RunStats> ssim_stats(rules.size());
    for (int run = 0; run < runs; ++run) {
      const std::uint64_t cell =
          si * static_cast<std::uint64_t>(runs) + run;
      const ImageBuffer noisy =
          add_noise(image, snrs_db[si], mix_seed(seed, cell));
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        auto [denoised, report] = denoise(noisy, rules[ri], levels, beta_pin);
        psnr_stats[ri].add(psnr(image, denoised));
        ssim_stats[ri].add(ssim(image, denoised));
      }
    }
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      BenchmarkRow row;
      row.snr_db = snrs_db[si];
      row.rule = rule_name(rules[ri]);
      row.psnr_db = psnr_stats[ri].mean();
      row.psnr_std = psnr_stats[ri].stddev();
      row.ssim = ssim_stats[ri].mean();
      row.runs = runs;
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace ggdshrink
