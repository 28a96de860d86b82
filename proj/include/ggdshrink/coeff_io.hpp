// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <filesystem>

#include "ggdshrink/image.hpp"

namespace ggdshrink {

// Raw coefficient dump, for debugging and as an oracle interchange format:
// 16-byte header (8-byte magic "GGDWAV1\0", then rows and cols as 32-bit
// little-endian counts) followed by rows*cols little-endian 64-bit floats.
void write_coeff_dump(const Matrix2d& m, const std::filesystem::path& path);
Matrix2d read_coeff_dump(const std::filesystem::path& path);

}  // namespace ggdshrink
