// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ggdshrink/bayes.hpp"
#include "ggdshrink/ggd.hpp"

namespace ggdshrink {

// Subband thresholding rules.  A +inf threshold is the subband-kill
// sentinel: the consuming pipeline zeroes the whole subband.
enum class ThresholdKind { RBayesShrink, BayesShrink, LSEB, MAPLaplace, Fixed };

struct ThresholdRule {
  ThresholdKind kind = ThresholdKind::RBayesShrink;
  double fixed_value = 0.0;  // used when kind == Fixed; must be >= 0

  static ThresholdRule r_bayes() { return {ThresholdKind::RBayesShrink, 0.0}; }
  static ThresholdRule bayes() { return {ThresholdKind::BayesShrink, 0.0}; }
  static ThresholdRule lseb() { return {ThresholdKind::LSEB, 0.0}; }
  static ThresholdRule map_laplace() { return {ThresholdKind::MAPLaplace, 0.0}; }
  static ThresholdRule fixed(double t) { return {ThresholdKind::Fixed, t}; }
};

std::string rule_name(const ThresholdRule& rule);

double soft_threshold(double theta, double t);
double hard_threshold(double theta, double t);

// T_R = (1/sqrt(beta)) * sigma_w * (sigma_w / sigma_ybar)^sqrt(beta).
// Reduces exactly to the BayesShrink threshold at beta = 1.
double threshold_r_bayes(double sigma_w, double sigma_ybar, double beta);

// T_B = sigma_w^2 / sigma_ybar.
double threshold_bayes(double sigma_w, double sigma_ybar);

// T_LSEB = sqrt(2) * beta^1.8 * sigma_w^2 / sigma_ybar^beta.
double threshold_lseb(double sigma_w, double sigma_ybar, double beta);

// T_MAP = sqrt(2) * sigma_w^2 / sigma_ybar (Laplace-prior MAP estimate).
double threshold_map_laplace(double sigma_w, double sigma_ybar);

// Weighted mean-squared disagreement between the Bayes posterior mean and a
// soft threshold map, as a function of the threshold.  The weight is the
// marginal density of the noisy coefficient, so objective(T) is the expected
// squared difference between the two estimators under the observation law.
// Bayes-estimate evaluations are cached on a fixed quadrature grid at
// construction, so objective() itself is cheap.
class ThresholdFitProblem {
 public:
  ThresholdFitProblem(const NoiseModel& noise, const GgdModel& prior,
                      const EstimatorConfig& cfg);
  ~ThresholdFitProblem();
  ThresholdFitProblem(ThresholdFitProblem&&) noexcept;

  double objective(double t) const;

  // Coarse grid scan over [0, 10 sigma_w] followed by golden-section
  // refinement to |dT| <= 1e-4 sigma_w.  Throws std::runtime_error when the
  // grid scan finds more than one prominent local minimum.
  double minimize() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// argmin_T of the weighted disagreement above.
double fit_optimal_threshold(const NoiseModel& noise, const GgdModel& prior,
                             const EstimatorConfig& cfg);

// Power-law surface fitted through optimal thresholds over a parameter grid:
//   log T* = log a + b1 log beta + b2(beta) log sigma_w + b3(beta) log sigma_ybar
// with separate sigma_w / sigma_ybar exponents per grid beta.
struct SurfaceFitResult {
  double a = 0.0;
  double b1 = 0.0;
  std::map<double, double> b2_samples;  // beta -> b2(beta)
  std::map<double, double> b3_samples;  // beta -> b3(beta)
  double residual = 0.0;                // RMS log-domain fit error
};

SurfaceFitResult fit_threshold_surface(std::span<const double> beta_grid,
                                       std::span<const double> sigma_w_grid,
                                       std::span<const double> sigma_ybar_grid,
                                       const EstimatorConfig& cfg);

// Default fitting grid; sigma_ybar <= sigma_w / 2 combinations are skipped
// inside fit_threshold_surface.
inline const std::vector<double> kDefaultSurfaceBetas = {0.4, 0.6, 0.8, 1.0};
inline const std::vector<double> kDefaultSurfaceSigmaW = {1.0, 2.0, 5.0, 10.0};
inline const std::vector<double> kDefaultSurfaceSigmaYbar = {2.0, 5.0, 10.0, 20.0};

}  // namespace ggdshrink
