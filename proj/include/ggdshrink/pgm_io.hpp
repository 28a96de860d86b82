// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ggdshrink/image.hpp"

namespace ggdshrink {

enum class PgmErrorKind {
  Io,                  // unreadable / unwritable path
  BadMagic,            // not a PNM signature at all
  UnsupportedVariant,  // PNM but not binary P5
  BadHeader,           // malformed width/height/maxval
  UnsupportedMaxval,   // maxval outside {255, 65535}
  Truncated,           // payload shorter than header promises
  OutOfRangePixel,     // write: rounded pixel outside [0, 2^B - 1]
};

std::string to_string(PgmErrorKind kind);

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  PgmErrorKind kind() const { return kind_; }

 private:
  PgmErrorKind kind_;
};

// Binary PGM ("P5") reader.  maxval 255 maps to bit_depth 8, maxval 65535 to
// bit_depth 16 with big-endian samples; '#' comment lines in the header are
// skipped.
ImageBuffer read_pgm(const std::filesystem::path& path);

// Writes binary PGM.  Pixels are rounded half away from zero and must land
// in [0, 2^B - 1]; callers clamp first.
void write_pgm(const ImageBuffer& image, const std::filesystem::path& path);

}  // namespace ggdshrink
