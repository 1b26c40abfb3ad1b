// Copyright 2026 The mapeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstring>
#include <functional>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "mapeval/error.hpp"
#include "mapeval/pointcloud_io.hpp"
#include "test_support.hpp"

namespace mapeval {
namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string ascii_header(std::size_t points, const std::string& fields = "x y z", const std::string& size = "4 4 4",
                         const std::string& type = "F F F", const std::string& count = "1 1 1") {
  return "VERSION 0.7\nFIELDS " + fields + "\nSIZE " + size + "\nTYPE " + type + "\nCOUNT " + count +
         "\nWIDTH " + std::to_string(points) + "\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS " +
         std::to_string(points) + "\nDATA ascii\n";
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected mapeval::Error";
  return ErrorCode::InvalidConfig;
}

class PcdTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::temp_dir(std::string("pcd_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  fs::path dir_;
};

TEST_F(PcdTest, AsciiKeepsFileOrder) {
  write_text(dir_ / "a.pcd", ascii_header(3) + "0 0 0\n1 0 0\n0 1 0\n");
  const auto r = read_pcd(dir_ / "a.pcd");
  ASSERT_EQ(r.cloud.size(), 3u);
  EXPECT_EQ(r.cloud.points[0], Point3(0, 0, 0));
  EXPECT_EQ(r.cloud.points[1], Point3(1, 0, 0));
  EXPECT_EQ(r.cloud.points[2], Point3(0, 1, 0));
  EXPECT_EQ(r.dropped_non_finite, 0u);
}

TEST_F(PcdTest, NanRowsAreDroppedAndCounted) {
  std::string body;
  for (int i = 0; i < 10; ++i) body += i == 4 ? "nan nan nan\n" : std::to_string(i) + " 1 2\n";
  write_text(dir_ / "n.pcd", ascii_header(10) + body);
  const auto r = read_pcd(dir_ / "n.pcd");
  EXPECT_EQ(r.cloud.size(), 9u);
  EXPECT_EQ(r.dropped_non_finite, 1u);
}

TEST_F(PcdTest, ExtraFieldsAreSkipped) {
  write_text(dir_ / "e.pcd",
             ascii_header(2, "intensity x y z rgb", "4 4 4 4 4", "F F F F U", "1 1 1 1 1") +
                 "7 1 2 3 255\n8 4 5 6 0\n");
  const auto r = read_pcd(dir_ / "e.pcd");
  ASSERT_EQ(r.cloud.size(), 2u);
  EXPECT_EQ(r.cloud.points[1], Point3(4, 5, 6));
}

TEST_F(PcdTest, BinaryWithExtraFields) {
  // x y z intensity(double) ring(u16), hand-assembled.
  const std::string header =
      "VERSION 0.7\nFIELDS x y z intensity ring\nSIZE 4 4 4 8 2\nTYPE F F F F U\nCOUNT 1 1 1 1 1\n"
      "WIDTH 2\nHEIGHT 1\nPOINTS 2\nDATA binary\n";
  std::string body;
  for (float base : {1.5f, -2.25f}) {
    const float xyz[3] = {base, base * 2, base * 3};
    const double intensity = 99.0;
    const std::uint16_t ring = 7;
    body.append(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    body.append(reinterpret_cast<const char*>(&intensity), sizeof(intensity));
    body.append(reinterpret_cast<const char*>(&ring), sizeof(ring));
  }
  write_text(dir_ / "b.pcd", header + body);
  const auto r = read_pcd(dir_ / "b.pcd");
  ASSERT_EQ(r.cloud.size(), 2u);
  EXPECT_EQ(r.cloud.points[1], Point3(-2.25, -4.5, -6.75));
}

TEST_F(PcdTest, EmptyCloudRoundTrip) {
  write_pcd(PointCloud{}, dir_ / "empty.pcd", PcdEncoding::Ascii);
  std::ifstream in(dir_ / "empty.pcd");
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("POINTS 0\n"), std::string::npos);
  EXPECT_TRUE(read_pcd(dir_ / "empty.pcd").cloud.empty());
}

TEST_F(PcdTest, AsciiRoundTripWithinFloatPrecision) {
  PointCloud c;
  c.points = {{0.1, -0.2, 0.3}, {15.123456789, -7.5, 1e-3}, {-1e4, 2.5e-7, 3}};
  write_pcd(c, dir_ / "r.pcd", PcdEncoding::Ascii);
  const auto back = read_pcd(dir_ / "r.pcd").cloud;
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      EXPECT_EQ(back.points[i][axis], static_cast<double>(static_cast<float>(c.points[i][axis])));
      EXPECT_NEAR(back.points[i][axis], c.points[i][axis], 1e-6 * std::max(1.0, std::abs(c.points[i][axis])));
    }
  }
}

TEST_F(PcdTest, BinaryRoundTripIsBitExactAndMatchesAscii) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  PointCloud c;
  for (int i = 0; i < 1000; ++i) c.points.emplace_back(coord(rng), coord(rng), coord(rng));

  write_pcd(c, dir_ / "bin.pcd", PcdEncoding::Binary);
  write_pcd(c, dir_ / "asc.pcd", PcdEncoding::Ascii);
  const auto bin = read_pcd(dir_ / "bin.pcd").cloud;
  const auto asc = read_pcd(dir_ / "asc.pcd").cloud;
  ASSERT_EQ(bin.size(), 1000u);
  ASSERT_EQ(asc.size(), 1000u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      const float expected = static_cast<float>(c.points[i][axis]);
      const float got = static_cast<float>(bin.points[i][axis]);
      EXPECT_EQ(std::memcmp(&expected, &got, sizeof(float)), 0);
      EXPECT_EQ(asc.points[i][axis], bin.points[i][axis]);
    }
  }

  // Writing the parsed cloud again reproduces the same bytes.
  write_pcd(bin, dir_ / "bin2.pcd", PcdEncoding::Binary);
  std::ifstream a(dir_ / "bin.pcd", std::ios::binary);
  std::ifstream b(dir_ / "bin2.pcd", std::ios::binary);
  EXPECT_EQ(std::string((std::istreambuf_iterator<char>(a)), {}), std::string((std::istreambuf_iterator<char>(b)), {}));
}

TEST_F(PcdTest, HeaderErrors) {
  write_text(dir_ / "nofields.pcd", "VERSION 0.7\nPOINTS 1\nDATA ascii\n0 0 0\n");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "nofields.pcd"); }), ErrorCode::MalformedHeader);

  write_text(dir_ / "nodata.pcd", "FIELDS x y z\nPOINTS 1\n");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "nodata.pcd"); }), ErrorCode::MalformedHeader);

  write_text(dir_ / "empty.pcd", "");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "empty.pcd"); }), ErrorCode::MalformedHeader);

  write_text(dir_ / "noz.pcd", ascii_header(1, "x y", "4 4", "F F", "1 1") + "0 0\n");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "noz.pcd"); }), ErrorCode::MalformedHeader);

  write_text(dir_ / "compressed.pcd", "FIELDS x y z\nSIZE 4 4 4\nTYPE F F F\nPOINTS 1\nDATA binary_compressed\n");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "compressed.pcd"); }), ErrorCode::UnsupportedEncoding);

  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "missing.pcd"); }), ErrorCode::IoFailure);
}

TEST_F(PcdTest, TruncatedBodies) {
  write_text(dir_ / "short.pcd", ascii_header(3) + "0 0 0\n1 1 1\n");
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "short.pcd"); }), ErrorCode::TruncatedBody);

  write_text(dir_ / "shortbin.pcd", "FIELDS x y z\nSIZE 4 4 4\nTYPE F F F\nPOINTS 2\nDATA binary\n" + std::string(12, '\0'));
  EXPECT_EQ(code_of([&] { read_pcd(dir_ / "shortbin.pcd"); }), ErrorCode::TruncatedBody);
}

TEST_F(PcdTest, WriteToUnwritablePathFails) {
  EXPECT_EQ(code_of([&] { write_pcd(PointCloud{}, dir_ / "no" / "such" / "dir.pcd", PcdEncoding::Ascii); }),
            ErrorCode::IoFailure);
}

TEST_F(PcdTest, ParsingIsDeterministic) {
  write_text(dir_ / "d.pcd", ascii_header(2) + "0.1 0.2 0.3\n1e-3 -4 5.5\n");
  const auto a = read_pcd(dir_ / "d.pcd").cloud;
  const auto b = read_pcd(dir_ / "d.pcd").cloud;
  EXPECT_EQ(a.points, b.points);
}

class GpsCsvTest : public PcdTest {};

TEST_F(GpsCsvTest, ReadsRowsInOrder) {
  write_text(dir_ / "g.csv", "target_id,x,y,z\nt1,0,0,0\nt2,1,2,3\nt3,-1,0.5,2\nt4,4,4,4\nt5,9,8,7\n");
  const auto poses = read_gps_poses(dir_ / "g.csv");
  ASSERT_EQ(poses.size(), 5u);
  EXPECT_EQ(poses[1].target_id, "t2");
  EXPECT_EQ(poses[1].position, Point3(1, 2, 3));
  EXPECT_EQ(poses[4].target_id, "t5");
}

TEST_F(GpsCsvTest, CrlfAndBlankLinesAreTolerated) {
  write_text(dir_ / "g.csv", "target_id,x,y,z\r\n\r\nt1,0,0,0\r\nt2,1,2,3\r\n");
  EXPECT_EQ(read_gps_poses(dir_ / "g.csv").size(), 2u);
}

TEST_F(GpsCsvTest, Errors) {
  write_text(dir_ / "dup.csv", "target_id,x,y,z\nt1,0,0,0\nt1,1,1,1\n");
  EXPECT_EQ(code_of([&] { read_gps_poses(dir_ / "dup.csv"); }), ErrorCode::DuplicateTargetId);

  write_text(dir_ / "bad.csv", "target_id,x,y,z\nt1,1.0,two,3.0\n");
  try {
    read_gps_poses(dir_ / "bad.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRow);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }

  write_text(dir_ / "cols.csv", "target_id,x,y,z\nt1,1,2\n");
  EXPECT_EQ(code_of([&] { read_gps_poses(dir_ / "cols.csv"); }), ErrorCode::MalformedRow);

  write_text(dir_ / "empty.csv", "");
  EXPECT_EQ(code_of([&] { read_gps_poses(dir_ / "empty.csv"); }), ErrorCode::EmptyFile);

  write_text(dir_ / "headeronly.csv", "target_id,x,y,z\n");
  EXPECT_EQ(code_of([&] { read_gps_poses(dir_ / "headeronly.csv"); }), ErrorCode::EmptyFile);
}

TEST_F(GpsCsvTest, WriterRoundTripsExactly) {
  const std::vector<GpsTargetPose> poses = {{"a", {0.1, 1.0 / 3.0, -2e-9}}, {"b", {15.000000000000002, 0, 0.6}}};
  write_gps_poses(poses, dir_ / "w.csv");
  const auto back = read_gps_poses(dir_ / "w.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].position, poses[0].position);
  EXPECT_EQ(back[1].position, poses[1].position);
}

}  // namespace
}  // namespace mapeval
