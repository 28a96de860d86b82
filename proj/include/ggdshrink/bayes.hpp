// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <stdexcept>
#include <string>

#include "ggdshrink/ggd.hpp"

namespace ggdshrink {

// Controls for the adaptive quadrature behind the numeric posterior mean.
struct EstimatorConfig {
  double rel_tol = 1e-9;        // in (0, 1e-3]
  int max_subdivisions = 200;   // >= 10
  double slope_eval_multiple = 30.0;  // evaluation point for the slope, in sigma_w
};

void validate(const EstimatorConfig& cfg);

// Raised when the adaptive quadrature cannot reach the requested tolerance
// within max_subdivisions.  Carries the error estimate it did achieve.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error)
      : std::runtime_error(what), achieved_(achieved_rel_error) {}

  double achieved_rel_error() const { return achieved_; }

 private:
  double achieved_;
};

// Upper tail of the standard normal, Q(x) = P(Z > x).
double q_function(double x);

// log Q(x), accurate over the whole real line (asymptotic series for large
// positive x where erfc underflows).
double log_q_function(double x);

// e^a * Q(b) evaluated in the log domain so it stays finite whenever
// a + log Q(b) is representable, even if e^a alone overflows.
double scaled_exp_q(double a, double b);

// Posterior mean E[noiseless | noisy = theta] together with the log of the
// marginal density of the noisy coefficient (the normalizing integral).
struct PosteriorEval {
  double mean;
  double log_marginal;
};

PosteriorEval posterior_mean_and_marginal(double theta, const NoiseModel& noise,
                                          const GgdModel& prior,
                                          const EstimatorConfig& cfg);

// Posterior mean by adaptive quadrature, valid for any shape beta.
double bayes_estimate_numeric(double theta, const NoiseModel& noise,
                              const GgdModel& prior,
                              const EstimatorConfig& cfg);

// Closed form for beta = 2: linear shrinkage sigma^2 / (sigma^2 + sigma_w^2).
double bayes_estimate_gaussian(double theta, const NoiseModel& noise,
                               double prior_sigma);

// Closed form for beta = 1 (Laplace prior), evaluated via scaled_exp_q so it
// is stable for |theta| far beyond the overflow range of the naive formula.
double bayes_estimate_laplace(double theta, const NoiseModel& noise,
                              double prior_sigma);

// Central finite-difference slope of the numeric posterior mean at
// theta = slope_eval_multiple * sigma_w with step sigma_w / 10.  For GGD
// priors with beta <= 1 this slope is close to one, which is what makes a
// soft threshold a good surrogate for the posterior mean.
double asymptotic_slope(const NoiseModel& noise, const GgdModel& prior,
                        const EstimatorConfig& cfg);

}  // namespace ggdshrink
