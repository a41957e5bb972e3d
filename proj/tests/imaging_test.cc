/*
 * Copyright 2026 The WCT Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wct/imaging.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "wct/errors.h"
#include "wct/rng.h"

namespace wct {
namespace {

std::vector<std::uint8_t> Bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

GrayImage RandomImage(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng.UniformIndex(256));
  return GrayImage(w, h, std::move(px));
}

PgmError::Kind KindOf(const std::string& text) {
  try {
    LoadPgm(Bytes(text));
  } catch (const PgmError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no PgmError for: " << text;
  return PgmError::Kind::kMalformedHeader;
}

TEST(PgmTest, AsciiWithComments) {
  const GrayImage img =
      LoadPgm(Bytes("P2\n# a comment\n3 2\n# another\n10\n0 5 10\n1 2 3\n"));
  EXPECT_EQ(img.width(), 3);
  EXPECT_EQ(img.height(), 2);
  EXPECT_EQ(img.at(0, 2), 10);
  EXPECT_EQ(img.at(1, 0), 1);
}

TEST(PgmTest, BinaryRoundTrip) {
  const GrayImage img = RandomImage(17, 9, 3);
  EXPECT_EQ(LoadPgm(WritePgm(img)), img);
}

TEST(PgmTest, BinaryPayloadMayStartWithWhitespaceByte) {
  std::vector<std::uint8_t> bytes = Bytes("P5 2 1 255\n");
  bytes.push_back(' ');
  bytes.push_back('\n');
  const GrayImage img = LoadPgm(bytes);
  EXPECT_EQ(img.at(0, 0), ' ');
  EXPECT_EQ(img.at(0, 1), '\n');
}

TEST(PgmTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "wct_imaging_rt.pgm";
  const GrayImage img = RandomImage(8, 5, 11);
  WritePgmFile(path, img);
  EXPECT_EQ(ReadPgmFile(path), img);
  std::filesystem::remove(path);
}

TEST(PgmTest, ErrorKinds) {
  using Kind = PgmError::Kind;
  EXPECT_EQ(KindOf("P6\n1 1\n255\n"), Kind::kMalformedHeader);
  EXPECT_EQ(KindOf("P2\nx 1\n255\n0"), Kind::kMalformedHeader);
  EXPECT_EQ(KindOf("P2\n0 1\n255\n"), Kind::kMalformedHeader);
  EXPECT_EQ(KindOf("P2\n1 1\n65535\n0"), Kind::kMaxvalTooLarge);
  EXPECT_EQ(KindOf("P2\n2 2\n255\n1 2 3"), Kind::kTruncatedPayload);
  EXPECT_EQ(KindOf("P5\n4 4\n255\nabc"), Kind::kTruncatedPayload);
  EXPECT_EQ(KindOf("P2\n2 1\n100\n5 101"), Kind::kBadValue);
  EXPECT_EQ(KindOf("P2\n2 1\n255\n5 z"), Kind::kBadValue);
}

TEST(PgmTest, ErrorOffsetPointsAtValue) {
  try {
    LoadPgm(Bytes("P2\n2 1\n100\n5 101"));
    FAIL();
  } catch (const PgmError& e) {
    EXPECT_EQ(e.offset(), 13u);
  }
}

TEST(PgmTest, MissingFileIsDataError) {
  EXPECT_THROW(ReadPgmFile("/nonexistent/wct/x.pgm"), DataError);
}

TEST(QuantizeTest, UniformBins) {
  std::vector<std::uint8_t> px(256);
  for (int i = 0; i < 256; ++i) px[i] = static_cast<std::uint8_t>(i);
  const QuantizedImage q = Quantize(GrayImage(256, 1, px), 64);
  for (int i = 0; i < 256; ++i) EXPECT_EQ(q.at(0, i), i / 4);
  const QuantizedImage q8 = Quantize(GrayImage(256, 1, px), 8);
  EXPECT_EQ(q8.at(0, 31), 0);
  EXPECT_EQ(q8.at(0, 32), 1);
  EXPECT_EQ(q8.at(0, 255), 7);
}

TEST(QuantizeTest, RejectsBadLevels) {
  const GrayImage img(4, 4, std::uint8_t{0});
  EXPECT_THROW(Quantize(img, 1), ConfigError);
  EXPECT_THROW(Quantize(img, 257), ConfigError);
}

TEST(BlocksTest, GridAndContents) {
  const GrayImage img = RandomImage(10, 7, 5);
  const BlockSpec spec{4, 3};
  const BlockGrid grid = ComputeBlockGrid(img, spec);
  EXPECT_EQ(grid.rows, 2);
  EXPECT_EQ(grid.cols, 3);
  const auto blocks = ExtractBlocks(img, spec);
  ASSERT_EQ(blocks.size(), 6u);
  // Block (1, 2) starts at pixel (3, 6).
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(blocks[5].at(r, c), img.at(3 + r, 6 + c));
}

TEST(BlocksTest, CenteredTilesDropMarginsEvenly) {
  const GrayImage img = RandomImage(70, 36, 9);
  const auto tiles = ExtractCenteredTiles(img, 16);
  ASSERT_EQ(tiles.size(), 8u);  // 2 rows x 4 cols
  // Margins: rows (36 - 32) / 2 = 2, cols (70 - 64) / 2 = 3.
  EXPECT_EQ(tiles[0].at(0, 0), img.at(2, 3));
  EXPECT_EQ(tiles[7].at(15, 15), img.at(2 + 31, 3 + 63));
}

TEST(BlocksTest, RejectsOversizedBlocks) {
  const GrayImage img(8, 8, std::uint8_t{1});
  EXPECT_THROW(ComputeBlockGrid(img, BlockSpec{16, 16}), ConfigError);
  EXPECT_THROW(ComputeBlockGrid(img, BlockSpec{4, 0}), ConfigError);
  EXPECT_THROW(ExtractCenteredTiles(img, 9), ConfigError);
  EXPECT_THROW(Crop(img, 5, 5, 4, 4), DataError);
}

TEST(GrayImageTest, RejectsMismatchedPixels) {
  EXPECT_THROW(GrayImage(3, 3, std::vector<std::uint8_t>(8)), DataError);
  EXPECT_THROW(GrayImage(0, 3, std::vector<std::uint8_t>()), DataError);
}

}  // namespace
}  // namespace wct
