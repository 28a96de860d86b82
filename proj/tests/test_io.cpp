// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ggdshrink contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "ggdshrink/coeff_io.hpp"
#include "ggdshrink/csv_io.hpp"
#include "ggdshrink/pgm_io.hpp"
#include "test_support.hpp"

using namespace ggdshrink;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ggdshrink-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("read_pgm parses a minimal 8-bit file") {
  TempDir tmp;
  const auto p = tmp.path / "min.pgm";
  write_bytes(p, std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\x80' +
                     '\x40');
  const auto img = read_pgm(p);
  CHECK(img.bit_depth == 8);
  CHECK(img.rows() == 2);
  CHECK(img.cols() == 2);
  CHECK(img.pixels(0, 0) == 0.0);
  CHECK(img.pixels(0, 1) == 255.0);
  CHECK(img.pixels(1, 0) == 128.0);
  CHECK(img.pixels(1, 1) == 64.0);
}

TEST_CASE("read_pgm parses 16-bit big-endian samples") {
  TempDir tmp;
  const auto p = tmp.path / "wide.pgm";
  write_bytes(p, std::string("P5 1 1 65535 ") + '\x01' + '\x02');
  const auto img = read_pgm(p);
  CHECK(img.bit_depth == 16);
  CHECK(img.pixels(0, 0) == 258.0);
}

TEST_CASE("read_pgm skips header comments") {
  TempDir tmp;
  const auto p = tmp.path / "comment.pgm";
  write_bytes(p, std::string("P5\n# made by hand\n2 1\n# maxval next\n255\n") +
                     '\x05' + '\x06');
  const auto img = read_pgm(p);
  CHECK(img.pixels(0, 0) == 5.0);
  CHECK(img.pixels(0, 1) == 6.0);
}

TEST_CASE("read_pgm error kinds are distinct") {
  TempDir tmp;
  auto expect_kind = [&](const std::string& bytes, PgmErrorKind kind,
                         const char* name) {
    const auto p = tmp.path / name;
    write_bytes(p, bytes);
    try {
      read_pgm(p);
      FAIL("expected PgmError for ", name);
    } catch (const PgmError& e) {
      CHECK(e.kind() == kind);
    }
  };
  expect_kind("P2\n2 2\n255\n0 1 2 3\n", PgmErrorKind::UnsupportedVariant,
              "ascii.pgm");
  expect_kind("XY junk", PgmErrorKind::BadMagic, "junk.pgm");
  expect_kind("P5\n2 2\n300\n....", PgmErrorKind::UnsupportedMaxval,
              "maxval.pgm");
  expect_kind(std::string("P5\n4 4\n255\n") + "ab", PgmErrorKind::Truncated,
              "short.pgm");
  expect_kind("P5\nnope\n", PgmErrorKind::BadHeader, "header.pgm");
  CHECK_THROWS_AS(read_pgm(tmp.path / "does-not-exist.pgm"), PgmError);
}

TEST_CASE("write_pgm round trips an 8-bit image") {
  TempDir tmp;
  auto img = test_support::make_image(512, 512);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(0, 255);
  for (double& v : img.pixels.data) v = u(rng);
  const auto p = tmp.path / "rt.pgm";
  write_pgm(img, p);
  const auto back = read_pgm(p);
  CHECK(back.bit_depth == 8);
  CHECK(back.pixels.data == img.pixels.data);
}

TEST_CASE("write_pgm rounds half away from zero") {
  TempDir tmp;
  auto img = test_support::make_image(1, 2);
  img.pixels(0, 0) = 254.5;
  img.pixels(0, 1) = 3.4;
  const auto p = tmp.path / "round.pgm";
  write_pgm(img, p);
  const auto back = read_pgm(p);
  CHECK(back.pixels(0, 0) == 255.0);
  CHECK(back.pixels(0, 1) == 3.0);
}

TEST_CASE("write_pgm rejects out-of-range pixels") {
  TempDir tmp;
  auto img = test_support::make_image(1, 1, 255.6);
  try {
    write_pgm(img, tmp.path / "bad.pgm");
    FAIL("expected PgmError");
  } catch (const PgmError& e) {
    CHECK(e.kind() == PgmErrorKind::OutOfRangePixel);
  }
}

TEST_CASE("write then read is the identity on rounded 16-bit data") {
  TempDir tmp;
  auto img = test_support::make_image(32, 16, 0.0, 16);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 65535.0);
  for (double& v : img.pixels.data) v = u(rng);
  const auto p = tmp.path / "wide-rt.pgm";
  write_pgm(img, p);
  const auto back = read_pgm(p);
  for (std::size_t i = 0; i < img.pixels.data.size(); ++i)
    CHECK(back.pixels.data[i] == std::round(img.pixels.data[i]));
}

TEST_CASE("coefficient dump round trip and header layout") {
  TempDir tmp;
  Matrix2d m(3, 5);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 10.0);
  for (double& v : m.data) v = g(rng);
  const auto p = tmp.path / "coeffs.bin";
  write_coeff_dump(m, p);

  std::ifstream in(p, std::ios::binary);
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  REQUIRE(bytes.size() == 16 + 3 * 5 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 7) == "GGDWAV1");
  CHECK(bytes[7] == 0);
  CHECK(bytes[8] == 3);   // rows, little-endian
  CHECK(bytes[12] == 5);  // cols, little-endian

  const Matrix2d back = read_coeff_dump(p);
  CHECK(back.rows == 3);
  CHECK(back.cols == 5);
  CHECK(back.data == m.data);
}

TEST_CASE("emit_csv formatting") {
  TempDir tmp;
  const auto p = tmp.path / "table.csv";

  BenchmarkRow synth;
  synth.beta = 0.5;
  synth.snr_db = 15.0;
  synth.rule = "rbayes";
  synth.psnr_db = 38.65432;
  synth.psnr_std = 0.12345;
  synth.runs = 100;

  BenchmarkRow imagerow;
  imagerow.snr_db = 25.0;
  imagerow.rule = "bayes";
  imagerow.psnr_db = 33.82;
  imagerow.psnr_std = 0.0;
  imagerow.ssim = 0.98;
  imagerow.runs = 20;

  const std::vector<BenchmarkRow> rows{synth, imagerow};
  emit_csv(rows, p);

  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "beta,snr_db,rule,psnr_db,psnr_std,ssim,runs");
  std::getline(in, line);
  CHECK(line == "0.5000,15.0000,rbayes,38.6543,0.1235,,100");
  std::getline(in, line);
  CHECK(line == ",25.0000,bayes,33.8200,0.0000,0.9800,20");
  CHECK_FALSE(std::getline(in, line));

  CHECK_THROWS_AS(emit_csv(std::vector<BenchmarkRow>{}, p),
                  std::invalid_argument);
}

TEST_CASE("emit_csv single row gives a two-line file") {
  TempDir tmp;
  const auto p = tmp.path / "one.csv";
  BenchmarkRow row;
  row.snr_db = 5.0;
  row.rule = "map";
  row.psnr_db = 20.0;
  row.runs = 1;
  emit_csv(std::vector<BenchmarkRow>{row}, p);
  std::ifstream in(p);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2);
}
