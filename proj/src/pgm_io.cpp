// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/pgm_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace ggdshrink {

std::string to_string(PgmErrorKind kind) {
  switch (kind) {
    case PgmErrorKind::Io: return "io";
    case PgmErrorKind::BadMagic: return "bad-magic";
    case PgmErrorKind::UnsupportedVariant: return "unsupported-variant";
    case PgmErrorKind::BadHeader: return "bad-header";
    case PgmErrorKind::UnsupportedMaxval: return "unsupported-maxval";
    case PgmErrorKind::Truncated: return "truncated";
    case PgmErrorKind::OutOfRangePixel: return "out-of-range-pixel";
  }
  return "unknown";
}

namespace {

bool is_pnm_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

// Header scanner over the raw bytes; skips whitespace and '#' comments.
struct HeaderScanner {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      if (is_pnm_space(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  long next_int(const char* what) {
    skip_space_and_comments();
    if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9')
      throw PgmError(PgmErrorKind::BadHeader,
                     std::string("pgm: malformed ") + what + " field");
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1'000'000'000)
        throw PgmError(PgmErrorKind::BadHeader,
                       std::string("pgm: ") + what + " out of range");
      ++pos;
    }
    return value;
  }
};

}  // namespace

ImageBuffer read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw PgmError(PgmErrorKind::Io, "pgm: cannot open " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  if (in.bad())
    throw PgmError(PgmErrorKind::Io, "pgm: read failure on " + path.string());

  if (bytes.size() < 2 || bytes[0] != 'P')
    throw PgmError(PgmErrorKind::BadMagic, "pgm: missing PNM signature");
  if (bytes[1] != '5') {
    if (bytes[1] >= '1' && bytes[1] <= '7')
      throw PgmError(PgmErrorKind::UnsupportedVariant,
                     std::string("pgm: only binary P5 is supported, got P") +
                         static_cast<char>(bytes[1]));
    throw PgmError(PgmErrorKind::BadMagic, "pgm: missing PNM signature");
  }

  HeaderScanner scan{bytes, 2};
  const long width = scan.next_int("width");
  const long height = scan.next_int("height");
  const long maxval = scan.next_int("maxval");
  if (width < 1 || height < 1)
    throw PgmError(PgmErrorKind::BadHeader, "pgm: non-positive dimensions");
  if (maxval != 255 && maxval != 65535)
    throw PgmError(PgmErrorKind::UnsupportedMaxval,
                   "pgm: maxval must be 255 or 65535, got " +
                       std::to_string(maxval));
  // single whitespace byte separates maxval from the raster
  if (scan.pos >= bytes.size() || !is_pnm_space(bytes[scan.pos]))
    throw PgmError(PgmErrorKind::BadHeader,
                   "pgm: missing raster separator after maxval");
  ++scan.pos;

  const std::size_t n = static_cast<std::size_t>(width) * height;
  const std::size_t bytes_per_sample = maxval == 65535 ? 2 : 1;
  if (bytes.size() - scan.pos < n * bytes_per_sample)
    throw PgmError(PgmErrorKind::Truncated,
                   "pgm: raster shorter than header promises");

  ImageBuffer img;
  img.bit_depth = maxval == 65535 ? 16 : 8;
  img.pixels = Matrix2d(static_cast<std::size_t>(height),
                        static_cast<std::size_t>(width));
  const unsigned char* p = bytes.data() + scan.pos;
  if (bytes_per_sample == 1) {
    for (std::size_t i = 0; i < n; ++i) img.pixels.data[i] = p[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      // 16-bit samples are big-endian
      img.pixels.data[i] = 256.0 * p[2 * i] + p[2 * i + 1];
    }
  }
  return img;
}

void write_pgm(const ImageBuffer& image, const std::filesystem::path& path) {
  validate(image);
  const double peak = image.max_value();
  const std::size_t n = image.pixels.data.size();
  std::vector<std::uint16_t> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rounded = std::round(image.pixels.data[i]);
    if (!(rounded >= 0.0) || !(rounded <= peak))
      throw PgmError(PgmErrorKind::OutOfRangePixel,
                     "pgm: pixel " + std::to_string(image.pixels.data[i]) +
                         " outside [0, " + std::to_string(peak) +
                         "] after rounding; clamp before writing");
    samples[i] = static_cast<std::uint16_t>(rounded);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw PgmError(PgmErrorKind::Io, "pgm: cannot open " + path.string() +
                                         " for writing");
  out << "P5\n"
      << image.cols() << " " << image.rows() << "\n"
      << (image.bit_depth == 16 ? 65535 : 255) << "\n";
  if (image.bit_depth == 8) {
    std::vector<unsigned char> raw(n);
    for (std::size_t i = 0; i < n; ++i)
      raw[i] = static_cast<unsigned char>(samples[i]);
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  } else {
    std::vector<unsigned char> raw(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      raw[2 * i] = static_cast<unsigned char>(samples[i] >> 8);
      raw[2 * i + 1] = static_cast<unsigned char>(samples[i] & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  }
  if (!out)
    throw PgmError(PgmErrorKind::Io, "pgm: write failure on " + path.string());
}

}  // namespace ggdshrink
