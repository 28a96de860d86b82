// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace ggdshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))

// Exponent at which the quadrature truncates the prior tail; the density has
// decayed by e^-45 there, far below the tightest tolerance in use.
constexpr double kTailExponent = 45.0;

}  // namespace

void validate(const EstimatorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol <= 1e-3))
    throw std::invalid_argument("EstimatorConfig: rel_tol must be in (0, 1e-3]");
  if (cfg.max_subdivisions < 10)
    throw std::invalid_argument("EstimatorConfig: max_subdivisions must be >= 10");
  if (!(cfg.slope_eval_multiple > 0.0))
    throw std::invalid_argument("EstimatorConfig: slope_eval_multiple must be > 0");
}

double q_function(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("q_function: x must be finite");
  return 0.5 * std::erfc(x / kSqrt2);
}

double log_q_function(double x) {
  if (x <= -8.0) {
    // Q(x) = 1 - Q(-x) with Q(-x) tiny.
    return std::log1p(-0.5 * std::erfc(-x / kSqrt2));
  }
  if (x < 20.0) {
    return std::log(0.5 * std::erfc(x / kSqrt2));
  }
  // Asymptotic series Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - ...); at x = 20
  // eight terms leave a relative truncation error near 1e-13.
  const double inv2 = 1.0 / (x * x);
  double term = 1.0;
  double series = 0.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    series += term;
  }
  return -0.5 * x * x - std::log(x) - kLogSqrt2Pi + std::log1p(series);
}

double scaled_exp_q(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("scaled_exp_q: arguments must be finite");
  return std::exp(a + log_q_function(b));
}

double bayes_estimate_gaussian(double theta, const NoiseModel& noise,
                               double prior_sigma) {
  validate(noise);
  if (!(prior_sigma > 0.0) || !std::isfinite(prior_sigma))
    throw std::invalid_argument("bayes_estimate_gaussian: prior_sigma must be positive");
  const double sy2 = prior_sigma * prior_sigma;
  const double sw2 = noise.sigma_w * noise.sigma_w;
  return sy2 / (sy2 + sw2) * theta;
}

double bayes_estimate_laplace(double theta, const NoiseModel& noise,
                              double prior_sigma) {
  validate(noise);
  if (!(prior_sigma > 0.0) || !std::isfinite(prior_sigma))
    throw std::invalid_argument("bayes_estimate_laplace: prior_sigma must be positive");
  const double sw = noise.sigma_w;
  const double sy = prior_sigma;
  const double lam = kSqrt2 / sy;       // Laplace rate of the prior
  const double base = kSqrt2 * sw / sy;
  // The two exp * Q products of the closed form, normalized by the larger
  // one so the ratio stays finite far beyond the naive overflow range.
  const double log_a = lam * theta + log_q_function(base + theta / sw);
  const double log_b = -(lam * theta) + log_q_function(base - theta / sw);
  const double m = std::max(log_a, log_b);
  const double wa = std::exp(log_a - m);
  const double wb = std::exp(log_b - m);
  const double c1 = 2.0 * sw * sw + kSqrt2 * sy * theta;
  const double c2 = 2.0 * sw * sw - kSqrt2 * sy * theta;
  return (c1 * wa - c2 * wb) / (kSqrt2 * sy * (wa + wb));
}

namespace {

// QUADPACK 15-point Kronrod nodes/weights with the embedded 7-point Gauss
// rule (nodes at odd indices plus the center).
constexpr int kHalfNodes = 8;
constexpr double kKronrodNodes[kHalfNodes] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[kHalfNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

// Integrand state: exp(log f_v(theta - x) + log f(x) - shift) together with
// x times that value.
struct PosteriorIntegrand {
  const GgdDensity* prior;
  double theta;
  double inv_two_sw2;
  double log_noise_norm;
  double shift;

  double log_value(double x) const {
    const double d = theta - x;
    return log_noise_norm - d * d * inv_two_sw2 + prior->log_pdf(x);
  }
  void eval(double x, double& g, double& xg) const {
    g = std::exp(log_value(x) - shift);
    xg = x * g;
  }
};

struct Interval {
  double a, b;
  double i0, i1;  // Kronrod estimates of the two integrals
  double e0, e1;  // |Kronrod - Gauss| error estimates
  double priority;
};

Interval evaluate_interval(const PosteriorIntegrand& f, double a, double b,
                           double char_scale) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k0 = 0.0, k1 = 0.0, g0 = 0.0, g1 = 0.0;
  for (int i = 0; i < kHalfNodes; ++i) {
    const double dx = h * kKronrodNodes[i];
    double vg_p, vxg_p, vg_m, vxg_m;
    f.eval(c + dx, vg_p, vxg_p);
    if (i == kHalfNodes - 1) {  // center node, count once
      k0 += kKronrodWeights[i] * vg_p;
      k1 += kKronrodWeights[i] * vxg_p;
      g0 += kGaussWeights[3] * vg_p;
      g1 += kGaussWeights[3] * vxg_p;
      break;
    }
    f.eval(c - dx, vg_m, vxg_m);
    k0 += kKronrodWeights[i] * (vg_p + vg_m);
    k1 += kKronrodWeights[i] * (vxg_p + vxg_m);
    if (i % 2 == 1) {
      g0 += kGaussWeights[i / 2] * (vg_p + vg_m);
      g1 += kGaussWeights[i / 2] * (vxg_p + vxg_m);
    }
  }
  Interval iv;
  iv.a = a;
  iv.b = b;
  iv.i0 = h * k0;
  iv.i1 = h * k1;
  iv.e0 = std::fabs(h * (k0 - g0));
  iv.e1 = std::fabs(h * (k1 - g1));
  iv.priority = iv.e0 * char_scale + iv.e1;
  return iv;
}

struct QuadTotals {
  double i0 = 0.0, i1 = 0.0, e0 = 0.0, e1 = 0.0;
};

}  // namespace

PosteriorEval posterior_mean_and_marginal(double theta, const NoiseModel& noise,
                                          const GgdModel& prior,
                                          const EstimatorConfig& cfg) {
  validate(noise);
  validate(prior);
  validate(cfg);
  if (!std::isfinite(theta))
    throw std::invalid_argument("posterior_mean_and_marginal: theta must be finite");

  const GgdDensity density(prior);
  const double sw = noise.sigma_w;

  // Truncation: the likelihood confines the integrand to theta +- 12 sigma_w
  // and the prior to the radius where its exponent reaches kTailExponent.
  const double prior_radius = std::max(12.0 * prior.sigma,
                                       density.tail_radius(kTailExponent));
  const double lo = std::min(theta - 12.0 * sw, -prior_radius);
  const double hi = std::max(theta + 12.0 * sw, prior_radius);

  // Initial breakpoints: the prior cusp at 0, the likelihood peak at theta
  // and a few scale markers around both, so the first pass already sees the
  // narrow features.
  std::vector<double> pts = {lo,
                             hi,
                             0.0,
                             theta,
                             theta - 3.0 * sw,
                             theta + 3.0 * sw,
                             theta - 12.0 * sw,
                             theta + 12.0 * sw,
                             -prior.sigma,
                             prior.sigma};
  std::vector<double> breaks;
  for (double p : pts)
    if (p > lo && p < hi) breaks.push_back(p);
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  const double merge_eps = 1e-12 * (hi - lo);
  std::vector<double> edges;
  for (double p : breaks)
    if (edges.empty() || p - edges.back() > merge_eps) edges.push_back(p);
  edges.back() = hi;

  PosteriorIntegrand f{&density, theta, 1.0 / (2.0 * sw * sw),
                       -std::log(sw) - kLogSqrt2Pi, 0.0};

  // Log-domain scaling: subtract the maximum of the log integrand over a
  // candidate scan before exponentiating.
  double shift = -std::numeric_limits<double>::infinity();
  auto consider = [&](double x) {
    if (x < lo || x > hi) return;
    shift = std::max(shift, f.log_value(x));
  };
  for (double p : edges) consider(p);
  consider(theta - sw);
  consider(theta + sw);
  for (int i = 0; i <= 64; ++i) consider(lo + (hi - lo) * i / 64.0);
  f.shift = shift;

  const double char_scale = std::fabs(theta) + sw + prior.sigma;

  auto cmp = [](const Interval& x, const Interval& y) {
    return x.priority < y.priority;
  };
  std::priority_queue<Interval, std::vector<Interval>, decltype(cmp)> heap(cmp);

  QuadTotals tot;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Interval iv = evaluate_interval(f, edges[i], edges[i + 1], char_scale);
    tot.i0 += iv.i0;
    tot.i1 += iv.i1;
    tot.e0 += iv.e0;
    tot.e1 += iv.e1;
    heap.push(iv);
  }

  // Convergence demands rel_tol on the marginal and rel_tol on the odd
  // integral, the latter with an absolute floor so a near-cancelled
  // numerator (theta near 0) does not demand impossible accuracy.
  const double odd_floor = 1e-3 * sw;
  auto achieved_error = [&]() {
    if (!(tot.i0 > 0.0)) return std::numeric_limits<double>::infinity();
    const double err0 = tot.e0 / tot.i0;
    if (theta == 0.0) return err0;  // mean is pinned to 0 by symmetry
    const double err1 =
        tot.e1 / std::max(std::fabs(tot.i1), tot.i0 * odd_floor);
    return std::max(err0, err1);
  };

  int splits = 0;
  while (achieved_error() > cfg.rel_tol && splits < cfg.max_subdivisions) {
    Interval worst = heap.top();
    heap.pop();
    tot.i0 -= worst.i0;
    tot.i1 -= worst.i1;
    tot.e0 -= worst.e0;
    tot.e1 -= worst.e1;
    const double mid = 0.5 * (worst.a + worst.b);
    for (Interval iv : {evaluate_interval(f, worst.a, mid, char_scale),
                        evaluate_interval(f, mid, worst.b, char_scale)}) {
      tot.i0 += iv.i0;
      tot.i1 += iv.i1;
      tot.e0 += iv.e0;
      tot.e1 += iv.e1;
      heap.push(iv);
    }
    ++splits;
  }

  if (!(tot.i0 > 0.0))
    throw QuadratureError("posterior quadrature: integrand underflowed to zero",
                          std::numeric_limits<double>::infinity());
  const double achieved = achieved_error();
  if (achieved > cfg.rel_tol)
    throw QuadratureError(
        "posterior quadrature: tolerance not reached after " +
            std::to_string(cfg.max_subdivisions) + " subdivisions",
        achieved);

  PosteriorEval out;
  out.mean = (theta == 0.0) ? 0.0 : tot.i1 / tot.i0;  // odd integrand at 0
  out.log_marginal = shift + std::log(tot.i0);
  return out;
}

double bayes_estimate_numeric(double theta, const NoiseModel& noise,
                              const GgdModel& prior,
                              const EstimatorConfig& cfg) {
  return posterior_mean_and_marginal(theta, noise, prior, cfg).mean;
}

double asymptotic_slope(const NoiseModel& noise, const GgdModel& prior,
                        const EstimatorConfig& cfg) {
  validate(noise);
  validate(prior);
  validate(cfg);
  const double t0 = cfg.slope_eval_multiple * noise.sigma_w;
  const double h = noise.sigma_w / 10.0;
  const double fp = bayes_estimate_numeric(t0 + h, noise, prior, cfg);
  const double fm = bayes_estimate_numeric(t0 - h, noise, prior, cfg);
  return (fp - fm) / (2.0 * h);
}

}  // namespace ggdshrink
