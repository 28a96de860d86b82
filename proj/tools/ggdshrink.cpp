// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ggdshrink/coeff_io.hpp"
#include "ggdshrink/csv_io.hpp"
#include "ggdshrink/estimation.hpp"
#include "ggdshrink/pgm_io.hpp"
#include "ggdshrink/pipeline.hpp"
#include "ggdshrink/thresholds.hpp"
#include "ggdshrink/wavelet2d.hpp"

namespace {

using namespace ggdshrink;

ThresholdRule parse_rule(const std::string& name) {
  if (name == "rbayes") return ThresholdRule::r_bayes();
  if (name == "bayes") return ThresholdRule::bayes();
  if (name == "lseb") return ThresholdRule::lseb();
  if (name == "map") return ThresholdRule::map_laplace();
  if (name.rfind("fixed:", 0) == 0) {
    const double t = std::stod(name.substr(6));
    if (!(t >= 0.0))
      throw CLI::ValidationError("--rule", "fixed threshold must be >= 0");
    return ThresholdRule::fixed(t);
  }
  throw CLI::ValidationError(
      "--rule", "expected one of rbayes|bayes|lseb|map|fixed:T, got " + name);
}

std::vector<ThresholdRule> parse_rules(const std::string& csv) {
  std::vector<ThresholdRule> rules;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) rules.push_back(parse_rule(token));
  if (rules.empty()) throw CLI::ValidationError("--rules", "empty rule list");
  return rules;
}

// Comma list of numbers; an element may be a range a..b or a..b:step
// (step defaults to 5, the spacing of the benchmark SNR ladder).
std::vector<double> parse_number_list(const std::string& csv,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(std::stod(token));
      continue;
    }
    const double from = std::stod(token.substr(0, dots));
    std::string rest = token.substr(dots + 2);
    double step = 5.0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double to = std::stod(rest);
    if (!(step > 0.0) || to < from)
      throw CLI::ValidationError(flag, "bad range " + token);
    for (double v = from; v <= to + 1e-9; v += step) values.push_back(v);
  }
  if (values.empty()) throw CLI::ValidationError(flag, "empty list");
  return values;
}

// Classic quadrant layout: approximation top-left, then per level HL to the
// right, LH below, HH diagonal.
Matrix2d flatten_pyramid(const WaveletPyramid& pyr) {
  Matrix2d out(pyr.original_rows, pyr.original_cols, 0.0);
  for (std::size_t r = 0; r < pyr.approx.rows; ++r)
    for (std::size_t c = 0; c < pyr.approx.cols; ++c)
      out(r, c) = pyr.approx(r, c);
  for (std::size_t k = 0; k < pyr.levels; ++k) {
    const DetailBands& d = pyr.details[k];
    const std::size_t hr = d.lh.rows, hc = d.lh.cols;
    for (std::size_t r = 0; r < hr; ++r)
      for (std::size_t c = 0; c < hc; ++c) {
        out(r, hc + c) = d.hl(r, c);
        out(hr + r, c) = d.lh(r, c);
        out(hr + r, hc + c) = d.hh(r, c);
      }
  }
  return out;
}

std::string format_threshold(double t) {
  if (std::isinf(t)) return "kill";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", t);
  return buf;
}

int cmd_denoise(const std::string& in, const std::string& out,
                const std::string& rule_name, std::size_t levels,
                std::optional<double> beta_pin,
                const std::string& dump_path) {
  const ThresholdRule rule = parse_rule(rule_name);
  const ImageBuffer image = read_pgm(in);
  auto [result, report] = denoise(image, rule, levels, beta_pin);
  write_pgm(result, out);
  std::printf("sigma_w_hat %.6f\n", report.sigma_w_hat);
  for (const auto& s : report.subbands) {
    static const char* names[3] = {"LH", "HL", "HH"};
    std::printf("level %d %s  n %zu  sigma_y %.4f  sigma_ybar %.4f  beta %s  T %s\n",
                s.level, names[s.orientation], s.n, std::sqrt(s.var_noisy),
                s.sigma_ybar,
                s.beta_hat ? std::to_string(*s.beta_hat).c_str() : "-",
                format_threshold(s.threshold).c_str());
  }
  std::printf("elapsed_s %.3f\n", report.elapsed.count());
  if (!dump_path.empty())
    write_coeff_dump(flatten_pyramid(dwt2_forward(result, levels)), dump_path);
  return 0;
}

int cmd_estimate(const std::string& in, std::size_t levels) {
  const ImageBuffer image = read_pgm(in);
  const WaveletPyramid pyr = dwt2_forward(image, levels);
  const double sw = estimate_noise_mad(pyr.details[0].hh.data);
  std::printf("sigma_w_hat %.6f\n", sw);
  std::printf("%-5s %-4s %8s %12s %12s %12s %8s %10s %10s %10s %10s\n", "level",
              "band", "n", "sigma_y", "kappa", "sigma_ybar", "beta", "T_rbayes",
              "T_bayes", "T_lseb", "T_map");
  for (std::size_t k = 0; k < levels; ++k) {
    const Matrix2d* bands[3] = {&pyr.details[k].lh, &pyr.details[k].hl,
                                &pyr.details[k].hh};
    static const char* names[3] = {"LH", "HL", "HH"};
    for (int orient = 0; orient < 3; ++orient) {
      const MomentStats ms = subband_stats(bands[orient]->data);
      const double sy = estimate_signal_sigma(ms.var_noisy, sw);
      std::optional<double> beta;
      if (!ms.degenerate && ms.var_noisy > sw * sw && sw > 0.0)
        beta = estimate_beta_mme(ms.kurtosis, ms.var_noisy, sw);
      auto tcell = [&](double t) { return format_threshold(t); };
      const double t_rb =
          sw == 0.0 ? 0.0
                    : (beta ? threshold_r_bayes(sw, sy, *beta)
                            : std::numeric_limits<double>::infinity());
      const double t_b =
          sw == 0.0 ? 0.0 : threshold_bayes(sw, sy);
      const double t_l =
          sw == 0.0 ? 0.0
                    : (beta ? threshold_lseb(sw, sy, *beta)
                            : std::numeric_limits<double>::infinity());
      const double t_m = sw == 0.0 ? 0.0 : threshold_map_laplace(sw, sy);
      std::printf("%-5zu %-4s %8zu %12.4f %12.4f %12.4f %8s %10s %10s %10s %10s\n",
                  k + 1, names[orient], bands[orient]->size(),
                  std::sqrt(ms.var_noisy), ms.kurtosis, sy,
                  beta ? std::to_string(*beta).substr(0, 6).c_str() : "-",
                  tcell(t_rb).c_str(), tcell(t_b).c_str(), tcell(t_l).c_str(),
                  tcell(t_m).c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-domain image denoiser with GGD-adaptive soft thresholds"};
  app.require_subcommand(1);

  std::string in_path, out_path, ref_path, test_path, rule = "rbayes";
  std::string rules_csv = "rbayes,bayes", snrs_csv = "5..30",
              betas_csv = "0.1,0.3,0.5,0.8,1.0";
  std::string dump_path;
  std::size_t levels = 5;
  double snr = 15.0;
  std::uint64_t seed = 0;
  int runs = 100;
  std::size_t n = 262144;
  double beta_pin_value = 0.0;

  auto add_levels = [&](CLI::App* cmd) {
    cmd->add_option("--levels", levels, "decomposition levels")
        ->check(CLI::Range(std::size_t{1}, std::size_t{8}))
        ->capture_default_str();
  };

  auto* den = app.add_subcommand("denoise", "denoise a PGM image");
  den->add_option("--in", in_path, "input PGM")->required();
  den->add_option("--out", out_path, "output PGM")->required();
  den->add_option("--rule", rule, "rbayes|bayes|lseb|map|fixed:T")
      ->capture_default_str();
  add_levels(den);
  auto* den_pin = den->add_option("--beta-pin", beta_pin_value,
                                  "force the shape estimate in every subband");
  den->add_option("--dump-coeffs", dump_path,
                  "write the output image's coefficient plane (raw dump)");

  auto* add = app.add_subcommand("add-noise", "add white Gaussian noise");
  add->add_option("--in", in_path)->required();
  add->add_option("--out", out_path)->required();
  add->add_option("--snr", snr, "target SNR in dB ('inf' for none)")
      ->required();
  add->add_option("--seed", seed)->capture_default_str();

  auto* met = app.add_subcommand("metrics", "PSNR and SSIM between two images");
  met->add_option("--ref", ref_path)->required();
  met->add_option("--test", test_path)->required();

  auto* est = app.add_subcommand("estimate",
                                 "per-subband estimates and rule thresholds");
  est->add_option("--in", in_path)->required();
  add_levels(est);

  auto* bsy = app.add_subcommand("bench-synth",
                                 "coefficient-domain benchmark over GGD data");
  bsy->add_option("--betas", betas_csv)->capture_default_str();
  bsy->add_option("--snrs", snrs_csv, "list or a..b[:step]")
      ->capture_default_str();
  bsy->add_option("--rules", rules_csv)->capture_default_str();
  bsy->add_option("--runs", runs)->check(CLI::PositiveNumber)
      ->capture_default_str();
  bsy->add_option("--n", n, "coefficients per run")->capture_default_str();
  bsy->add_option("--seed", seed)->capture_default_str();
  bsy->add_option("--out", out_path, "output CSV")->required();
  auto* bsy_pin = bsy->add_option("--beta-pin", beta_pin_value);

  auto* bim = app.add_subcommand("bench-image", "image benchmark over SNRs");
  bim->add_option("--in", in_path)->required();
  bim->add_option("--snrs", snrs_csv)->capture_default_str();
  bim->add_option("--rules", rules_csv)->capture_default_str();
  bim->add_option("--runs", runs)->check(CLI::PositiveNumber)
      ->capture_default_str();
  bim->add_option("--seed", seed)->capture_default_str();
  bim->add_option("--out", out_path, "output CSV")->required();
  add_levels(bim);
  auto* bim_pin = bim->add_option("--beta-pin", beta_pin_value);

  auto* fit = app.add_subcommand("fit-surface",
                                 "fit the optimal-threshold power-law surface");
  fit->add_option("--out", out_path, "output CSV")->required();
  std::string fit_betas = "0.4,0.6,0.8,1.0", fit_sw = "1,2,5,10",
              fit_sy = "2,5,10,20";
  fit->add_option("--betas", fit_betas)->capture_default_str();
  fit->add_option("--sigma-w", fit_sw)->capture_default_str();
  fit->add_option("--sigma-y", fit_sy)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0)
      std::cerr << "error: usage: " << e.what() << "\n";
    else
      return app.exit(e);  // --help and friends
    return 2;
  }

  try {
    if (den->parsed()) {
      return cmd_denoise(in_path, out_path, rule, levels,
                         den_pin->count() ? std::optional<double>(beta_pin_value)
                                          : std::nullopt,
                         dump_path);
    }
    if (add->parsed()) {
      const ImageBuffer image = read_pgm(in_path);
      ImageBuffer noisy = add_noise(image, snr, seed);
      const double peak = noisy.max_value();
      for (double& v : noisy.pixels.data) v = std::clamp(v, 0.0, peak);
      write_pgm(noisy, out_path);
      return 0;
    }
    if (met->parsed()) {
      const ImageBuffer ref = read_pgm(ref_path);
      const ImageBuffer test = read_pgm(test_path);
      const double p = psnr(ref, test);
      if (std::isinf(p))
        std::printf("psnr_db=inf\n");
      else
        std::printf("psnr_db=%.4f\n", p);
      std::printf("ssim=%.6f\n", ssim(ref, test));
      return 0;
    }
    if (est->parsed()) return cmd_estimate(in_path, levels);
    if (bsy->parsed()) {
      const auto rows = benchmark_synthetic(
          parse_number_list(betas_csv, "--betas"),
          parse_number_list(snrs_csv, "--snrs"), parse_rules(rules_csv), runs,
          n, seed,
          bsy_pin->count() ? std::optional<double>(beta_pin_value)
                           : std::nullopt);
      emit_csv(rows, out_path);
      std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
      return 0;
    }
    if (bim->parsed()) {
      const ImageBuffer image = read_pgm(in_path);
      const auto rows = benchmark_image(
          image, parse_number_list(snrs_csv, "--snrs"), parse_rules(rules_csv),
          runs, seed, levels,
          bim_pin->count() ? std::optional<double>(beta_pin_value)
                           : std::nullopt);
      emit_csv(rows, out_path);
      std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
      return 0;
    }
    if (fit->parsed()) {
      EstimatorConfig cfg;
      const auto betas = parse_number_list(fit_betas, "--betas");
      const auto res = fit_threshold_surface(
          betas, parse_number_list(fit_sw, "--sigma-w"),
          parse_number_list(fit_sy, "--sigma-y"), cfg);
      std::ofstream out(out_path, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + out_path);
      out << "beta,b2,b3,a,b1,residual\n";
      for (const auto& [beta, b2] : res.b2_samples) {
        char line[160];
        std::snprintf(line, sizeof line, "%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                      beta, b2, res.b3_samples.at(beta), res.a, res.b1,
                      res.residual);
        out << line;
      }
      std::printf("a %.4f b1 %.4f residual %.4f -> %s\n", res.a, res.b1,
                  res.residual, out_path.c_str());
      return 0;
    }
  } catch (const ggdshrink::PgmError& e) {
    const auto cat = e.kind() == PgmErrorKind::Io ? "io" : "format";
    std::cerr << "error: " << cat << ": " << e.what() << " ["
              << to_string(e.kind()) << "]\n";
    return e.kind() == PgmErrorKind::Io ? 3 : 4;
  } catch (const ggdshrink::QuadratureError& e) {
    std::cerr << "error: numeric: " << e.what() << "\n";
    return 5;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid-argument: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
