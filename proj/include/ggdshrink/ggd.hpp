// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ggdshrink {

// Zero-mean generalized Gaussian prior with standard-deviation
// parameterization:
//
//   f(x) = C(sigma, beta) * exp(-[alpha(sigma, beta) * |x|]^beta)
//
// where alpha = sqrt(Gamma(3/beta) / Gamma(1/beta)) / sigma and
// C = beta * alpha / (2 * Gamma(1/beta)).  With this alpha the variance of
// the density is exactly sigma^2 for every beta; beta = 2 is the normal
// distribution, beta = 1 is Laplace.
struct GgdModel {
  double sigma = 1.0;  // standard deviation of the noiseless coefficient
  double beta = 1.0;   // shape parameter
};

// Additive white Gaussian noise.
struct NoiseModel {
  double sigma_w = 1.0;
};

void validate(const GgdModel& model);   // sigma > 0, beta > 0, both finite
void validate(const NoiseModel& model); // sigma_w > 0, finite

// Precomputed density evaluator; use this when evaluating the same model
// many times (quadrature inner loops).
class GgdDensity {
 public:
  explicit GgdDensity(const GgdModel& model);

  double log_pdf(double x) const;
  double pdf(double x) const;

  double alpha() const { return alpha_; }
  double log_alpha() const { return log_alpha_; }
  double beta() const { return beta_; }

  // Distance at which the exponent (alpha*x)^beta reaches `exponent`;
  // the density has decayed by exp(-exponent) there.  Used to pick
  // quadrature truncation points.
  double tail_radius(double exponent) const;

 private:
  double beta_;
  double alpha_;
  double log_alpha_;
  double log_norm_;  // log C
};

double ggd_pdf(const GgdModel& model, double x);

// n i.i.d. draws, reproducible for a given seed.  Uses the gamma-power
// construction sign * a * G^(1/beta) with G ~ Gamma(1/beta, 1) and
// a = 1/alpha, which is exact for every beta.
std::vector<double> ggd_sample(const GgdModel& model, std::size_t n,
                               std::uint64_t seed);

// Gamma(1/beta)*Gamma(5/beta) / Gamma(3/beta)^2 -- the kurtosis of a GGD
// with shape beta.  Strictly decreasing on the supported range [0.05, 5].
double kurtosis_ratio(double beta);

constexpr double kKurtosisRatioBetaMin = 0.05;
constexpr double kKurtosisRatioBetaMax = 5.0;

}  // namespace ggdshrink
