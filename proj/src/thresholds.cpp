// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ggdshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sigma_w(double sigma_w) {
  if (!(sigma_w > 0.0) || !std::isfinite(sigma_w))
    throw std::invalid_argument("threshold rule: sigma_w must be positive");
}

void check_sigma_ybar(double sigma_ybar) {
  if (!(sigma_ybar >= 0.0) || !std::isfinite(sigma_ybar))
    throw std::invalid_argument("threshold rule: sigma_ybar must be >= 0");
}

}  // namespace

std::string rule_name(const ThresholdRule& rule) {
  switch (rule.kind) {
    case ThresholdKind::RBayesShrink: return "rbayes";
    case ThresholdKind::BayesShrink: return "bayes";
    case ThresholdKind::LSEB: return "lseb";
    case ThresholdKind::MAPLaplace: return "map";
    case ThresholdKind::Fixed: {
      std::ostringstream os;
      os << "fixed:" << rule.fixed_value;
      return os.str();
    }
  }
  return "unknown";
}

double soft_threshold(double theta, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("soft_threshold: t must be >= 0");
  const double mag = std::fabs(theta) - t;
  if (mag <= 0.0) return 0.0;
  return theta < 0.0 ? -mag : mag;
}

double hard_threshold(double theta, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("hard_threshold: t must be >= 0");
  return std::fabs(theta) < t ? 0.0 : theta;
}

double threshold_bayes(double sigma_w, double sigma_ybar) {
  check_sigma_w(sigma_w);
  check_sigma_ybar(sigma_ybar);
  if (sigma_ybar == 0.0) return kInf;  // noise dominates: kill the subband
  return sigma_w * (sigma_w / sigma_ybar);
}

double threshold_r_bayes(double sigma_w, double sigma_ybar, double beta) {
  check_sigma_w(sigma_w);
  check_sigma_ybar(sigma_ybar);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("threshold_r_bayes: beta must be positive");
  if (sigma_ybar == 0.0) return kInf;
  if (beta == 1.0) return threshold_bayes(sigma_w, sigma_ybar);  // exact special case
  const double root = std::sqrt(beta);
  return (1.0 / root) * sigma_w * std::pow(sigma_w / sigma_ybar, root);
}

double threshold_map_laplace(double sigma_w, double sigma_ybar) {
  check_sigma_w(sigma_w);
  check_sigma_ybar(sigma_ybar);
  if (sigma_ybar == 0.0) return kInf;
  return kSqrt2 * (sigma_w * (sigma_w / sigma_ybar));
}

double threshold_lseb(double sigma_w, double sigma_ybar, double beta) {
  check_sigma_w(sigma_w);
  check_sigma_ybar(sigma_ybar);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("threshold_lseb: beta must be positive");
  if (sigma_ybar == 0.0) return kInf;
  // Grouped so that the beta = 1 value is bit-identical to the MAP/Laplace
  // threshold (pow(x, 1) == x and 1 * x == x hold exactly).
  return std::pow(beta, 1.8) *
         (kSqrt2 * (sigma_w * (sigma_w / std::pow(sigma_ybar, beta))));
}

// ---------------------------------------------------------------------------
// Threshold fitting
// ---------------------------------------------------------------------------

namespace {

// Gauss-Legendre 8-point nodes/weights on [-1, 1] (positive half).
constexpr double kGlNodes[4] = {0.1834346424956498, 0.5255324099163290,
                                0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeights[4] = {0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

constexpr double kGoldenRatio = 0.6180339887498949;  // 1/phi

}  // namespace

struct ThresholdFitProblem::Impl {
  std::vector<double> theta;   // quadrature abscissae on (0, theta_max)
  std::vector<double> weight;  // panel weight times normalized marginal
  std::vector<double> bayes;   // cached posterior means
  double sigma_w = 0.0;
};

ThresholdFitProblem::~ThresholdFitProblem() = default;
ThresholdFitProblem::ThresholdFitProblem(ThresholdFitProblem&&) noexcept = default;

ThresholdFitProblem::ThresholdFitProblem(const NoiseModel& noise,
                                         const GgdModel& prior,
                                         const EstimatorConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  validate(noise);
  validate(prior);
  validate(cfg);
  const double sw = noise.sigma_w;
  impl_->sigma_w = sw;

  // The disagreement integrand is even in theta, so integrate [0, theta_max]
  // only.  The dense region covers the full threshold scan range; beyond it
  // geometric panels reach out to where the marginal density has died.
  const double dense_hi = 10.0 * sw;
  const double theta_max =
      std::max(12.0 * std::hypot(sw, prior.sigma),
               GgdDensity(prior).tail_radius(45.0) + 12.0 * sw);
  std::vector<double> edges;
  const int dense_panels = 20;
  for (int i = 0; i <= dense_panels; ++i)
    edges.push_back(dense_hi * i / dense_panels);
  const int tail_panels = 10;
  const double ratio = std::pow(theta_max / dense_hi, 1.0 / tail_panels);
  double edge = dense_hi;
  for (int i = 1; i <= tail_panels; ++i) {
    edge *= ratio;
    edges.push_back(edge);
  }
  edges.back() = theta_max;

  std::vector<double> log_marginal;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < 4; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double x = c + sgn * h * kGlNodes[i];
        PosteriorEval pe = posterior_mean_and_marginal(x, noise, prior, cfg);
        impl_->theta.push_back(x);
        impl_->bayes.push_back(pe.mean);
        impl_->weight.push_back(h * kGlWeights[i]);
        log_marginal.push_back(pe.log_marginal);
      }
    }
  }

  // Fold the marginal density into the weights, scaled by its maximum to
  // dodge underflow, then normalize so objective() is the expected squared
  // disagreement under the observation law.
  const double m = *std::max_element(log_marginal.begin(), log_marginal.end());
  double mass = 0.0;
  for (std::size_t i = 0; i < impl_->weight.size(); ++i) {
    impl_->weight[i] *= std::exp(log_marginal[i] - m);
    mass += impl_->weight[i];
  }
  for (double& w : impl_->weight) w /= mass;
}

double ThresholdFitProblem::objective(double t) const {
  if (!(t >= 0.0))
    throw std::invalid_argument("ThresholdFitProblem: threshold must be >= 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < impl_->theta.size(); ++i) {
    const double d = impl_->bayes[i] - soft_threshold(impl_->theta[i], t);
    acc += impl_->weight[i] * d * d;
  }
  return acc;
}

double ThresholdFitProblem::minimize() const {
  const double sw = impl_->sigma_w;
  const int n_grid = 64;
  const double t_hi = 10.0 * sw;
  std::vector<double> j(n_grid);
  for (int i = 0; i < n_grid; ++i)
    j[i] = objective(t_hi * i / (n_grid - 1));

  const auto [min_it, max_it] = std::minmax_element(j.begin(), j.end());
  const int k = static_cast<int>(min_it - j.begin());
  const double range = *max_it - *min_it;

  // Unimodality guard: any second local minimum with nontrivial prominence
  // means the grid-plus-refine strategy cannot be trusted.
  const double prominence = 1e-4 * range;
  int minima = 0;
  for (int i = 1; i + 1 < n_grid; ++i) {
    if (j[i] < j[i - 1] - prominence && j[i] < j[i + 1] - prominence &&
        i != k) {
      ++minima;
    }
  }
  if (minima > 0) {
    throw std::runtime_error(
        "fit_optimal_threshold: objective is not unimodal over [0, 10 sigma_w] (" +
        std::to_string(minima + 1) + " local minima found)");
  }

  double lo = t_hi * std::max(k - 1, 0) / (n_grid - 1);
  double hi = t_hi * std::min(k + 1, n_grid - 1) / (n_grid - 1);
  double x1 = hi - kGoldenRatio * (hi - lo);
  double x2 = lo + kGoldenRatio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-4 * sw) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGoldenRatio * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGoldenRatio * (hi - lo);
      f2 = objective(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double fit_optimal_threshold(const NoiseModel& noise, const GgdModel& prior,
                             const EstimatorConfig& cfg) {
  return ThresholdFitProblem(noise, prior, cfg).minimize();
}

// ---------------------------------------------------------------------------
// Surface fit
// ---------------------------------------------------------------------------

namespace {

// Least squares via normal equations; fine for the tiny systems here.
// Throws when the design matrix is rank deficient.
std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& x,
                                        const std::vector<double>& y) {
  const std::size_t m = x.front().size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) a[i][j] += x[r][i] * x[r][j];
      a[i][m] += x[r][i] * y[r];
    }
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-10 * scale)
      throw std::runtime_error(
          "fit_threshold_surface: regression is underdetermined for this grid");
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> beta(m);
  for (std::size_t i = 0; i < m; ++i) beta[i] = a[i][m] / a[i][i];
  return beta;
}

}  // namespace

SurfaceFitResult fit_threshold_surface(std::span<const double> beta_grid,
                                       std::span<const double> sigma_w_grid,
                                       std::span<const double> sigma_ybar_grid,
                                       const EstimatorConfig& cfg) {
  if (beta_grid.empty() || sigma_w_grid.empty() || sigma_ybar_grid.empty())
    throw std::invalid_argument("fit_threshold_surface: grids must be non-empty");
  for (double b : beta_grid)
    if (!(b >= 0.3) || !(b <= 1.2))
      throw std::invalid_argument(
          "fit_threshold_surface: beta grid must lie within [0.3, 1.2]");

  struct Point {
    std::size_t beta_index;
    double log_beta, log_sw, log_sy, log_t;
  };
  std::vector<Point> points;
  std::size_t attempted = 0;
  std::size_t failed = 0;
  for (std::size_t bi = 0; bi < beta_grid.size(); ++bi) {
    for (double sw : sigma_w_grid) {
      for (double sy : sigma_ybar_grid) {
        if (!(sy > sw / 2.0)) continue;  // keep the noise from dominating
        ++attempted;
        try {
          const double t = fit_optimal_threshold({sw}, {sy, beta_grid[bi]}, cfg);
          if (!(t > 1e-12 * sw)) throw std::runtime_error("degenerate threshold");
          points.push_back({bi, std::log(beta_grid[bi]), std::log(sw),
                            std::log(sy), std::log(t)});
        } catch (const std::exception&) {
          ++failed;
        }
      }
    }
  }
  if (attempted == 0)
    throw std::invalid_argument(
        "fit_threshold_surface: no grid point satisfies sigma_ybar > sigma_w/2");
  if (failed * 5 > attempted)
    throw std::runtime_error(
        "fit_threshold_surface: more than 20% of grid points failed (" +
        std::to_string(failed) + "/" + std::to_string(attempted) + ")");

  // Unknowns: [log a, b1, b2(beta_0..), b3(beta_0..)].
  const std::size_t nb = beta_grid.size();
  const std::size_t m = 2 + 2 * nb;
  std::vector<std::vector<double>> design;
  std::vector<double> target;
  for (const Point& p : points) {
    std::vector<double> row(m, 0.0);
    row[0] = 1.0;
    row[1] = p.log_beta;
    row[2 + p.beta_index] = p.log_sw;
    row[2 + nb + p.beta_index] = p.log_sy;
    design.push_back(std::move(row));
    target.push_back(p.log_t);
  }
  const std::vector<double> coef = solve_least_squares(design, target);

  SurfaceFitResult result;
  result.a = std::exp(coef[0]);
  result.b1 = coef[1];
  for (std::size_t bi = 0; bi < nb; ++bi) {
    result.b2_samples[beta_grid[bi]] = coef[2 + bi];
    result.b3_samples[beta_grid[bi]] = coef[2 + nb + bi];
  }
  double ss = 0.0;
  for (std::size_t r = 0; r < design.size(); ++r) {
    double fit = 0.0;
    for (std::size_t i = 0; i < m; ++i) fit += design[r][i] * coef[i];
    const double res = target[r] - fit;
    ss += res * res;
  }
  result.residual = std::sqrt(ss / static_cast<double>(design.size()));
  return result;
}

}  // namespace ggdshrink
