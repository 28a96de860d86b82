// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ggdshrink {

namespace {

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

void emit_csv(std::span<const BenchmarkRow> rows,
              const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("emit_csv: cannot open " + path.string());
  out << "beta,snr_db,rule,psnr_db,psnr_std,ssim,runs\n";
  for (const BenchmarkRow& row : rows) {
    out << (row.beta ? format_value(*row.beta) : "") << ","
        << format_value(row.snr_db) << "," << row.rule << ","
        << format_value(row.psnr_db) << "," << format_value(row.psnr_std)
        << "," << (row.ssim ? format_value(*row.ssim) : "") << "," << row.runs
        << "\n";
  }
  if (!out)
    throw std::runtime_error("emit_csv: write failure on " + path.string());
}

}  // namespace ggdshrink
