// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/ggd.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ggdshrink {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

void validate(const GgdModel& model) {
  if (!(model.sigma > 0.0) || !std::isfinite(model.sigma))
    throw std::invalid_argument("GgdModel: sigma must be positive and finite");
  if (!(model.beta > 0.0) || !std::isfinite(model.beta))
    throw std::invalid_argument("GgdModel: beta must be positive and finite");
}

void validate(const NoiseModel& model) {
  if (!(model.sigma_w > 0.0) || !std::isfinite(model.sigma_w))
    throw std::invalid_argument("NoiseModel: sigma_w must be positive and finite");
}

GgdDensity::GgdDensity(const GgdModel& model) {
  validate(model);
  beta_ = model.beta;
  // Gamma ratios in the log domain; for small beta the arguments 3/beta and
  // 1/beta are large and the plain ratio overflows.
  const double lg1 = std::lgamma(1.0 / beta_);
  const double lg3 = std::lgamma(3.0 / beta_);
  log_alpha_ = -std::log(model.sigma) + 0.5 * (lg3 - lg1);
  alpha_ = std::exp(log_alpha_);
  log_norm_ = std::log(beta_) + log_alpha_ - kLn2 - lg1;
}

double GgdDensity::log_pdf(double x) const {
  x = std::fabs(x);
  if (x == 0.0) return log_norm_;
  // (alpha*x)^beta computed as exp(beta * log(alpha*x)); overflow of the
  // exponent just drives the density to zero.
  return log_norm_ - std::exp(beta_ * (log_alpha_ + std::log(x)));
}

double GgdDensity::pdf(double x) const { return std::exp(log_pdf(x)); }

double GgdDensity::tail_radius(double exponent) const {
  return std::exp(std::log(exponent) / beta_ - log_alpha_);
}

double ggd_pdf(const GgdModel& model, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ggd_pdf: x must be finite");
  return GgdDensity(model).pdf(x);
}

std::vector<double> ggd_sample(const GgdModel& model, std::size_t n,
                               std::uint64_t seed) {
  validate(model);
  std::vector<double> out(n);
  if (n == 0) return out;

  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0 / model.beta, 1.0);
  std::bernoulli_distribution coin(0.5);
  const double scale = std::exp(-GgdDensity(model).log_alpha());  // a = 1/alpha
  const double inv_beta = 1.0 / model.beta;
  for (std::size_t i = 0; i < n; ++i) {
    const double magnitude = scale * std::pow(gamma(rng), inv_beta);
    out[i] = coin(rng) ? magnitude : -magnitude;
  }
  return out;
}

double kurtosis_ratio(double beta) {
  if (!(beta >= kKurtosisRatioBetaMin) || !(beta <= kKurtosisRatioBetaMax))
    throw std::invalid_argument("kurtosis_ratio: beta outside [0.05, 5]");
  return std::exp(std::lgamma(1.0 / beta) + std::lgamma(5.0 / beta) -
                  2.0 * std::lgamma(3.0 / beta));
}

}  // namespace ggdshrink
