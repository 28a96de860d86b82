// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <filesystem>
#include <span>

#include "ggdshrink/pipeline.hpp"

namespace ggdshrink {

// Writes benchmark rows as CSV with header
//   beta,snr_db,rule,psnr_db,psnr_std,ssim,runs
// Floats use 4 decimal places and '.' as the decimal point; absent beta/ssim
// become empty fields.  Throws on empty input or I/O failure.
void emit_csv(std::span<const BenchmarkRow> rows,
              const std::filesystem::path& path);

}  // namespace ggdshrink
