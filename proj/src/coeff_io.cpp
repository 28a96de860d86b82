// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#include "ggdshrink/coeff_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace ggdshrink {

namespace {

constexpr char kMagic[8] = {'G', 'G', 'D', 'W', 'A', 'V', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "coefficient dumps assume a little-endian host");

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back((v >> (8 * i)) & 0xFF);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_coeff_dump(const Matrix2d& m, const std::filesystem::path& path) {
  if (m.rows == 0 || m.cols == 0 || m.data.size() != m.rows * m.cols)
    throw std::invalid_argument("write_coeff_dump: malformed matrix");
  std::vector<unsigned char> header;
  header.insert(header.end(), kMagic, kMagic + 8);
  put_u32(header, static_cast<std::uint32_t>(m.rows));
  put_u32(header, static_cast<std::uint32_t>(m.cols));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("write_coeff_dump: cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (!out)
    throw std::runtime_error("write_coeff_dump: write failure on " +
                             path.string());
}

Matrix2d read_coeff_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("read_coeff_dump: cannot open " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw std::runtime_error("read_coeff_dump: bad header in " + path.string());
  const std::uint32_t rows = get_u32(bytes.data() + 8);
  const std::uint32_t cols = get_u32(bytes.data() + 12);
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  if (bytes.size() - 16 < n * sizeof(double))
    throw std::runtime_error("read_coeff_dump: truncated payload in " +
                             path.string());
  Matrix2d m(rows, cols);
  std::memcpy(m.data.data(), bytes.data() + 16, n * sizeof(double));
  return m;
}

}  // namespace ggdshrink
