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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mapeval/geometry.hpp"

namespace mapeval {

enum class PcdEncoding { Ascii, Binary };

struct PcdReadResult {
  PointCloud cloud;
  /// Rows dropped because x, y or z was NaN or infinite.
  std::size_t dropped_non_finite = 0;
};

/// Reads a PCD v0.7 file with DATA ascii or binary (little-endian). FIELDS
/// must include x, y and z as 4-byte floats; other fields are skipped.
/// binary_compressed is rejected with UnsupportedEncoding.
PcdReadResult read_pcd(const std::filesystem::path& path);

/// Writes FIELDS x y z as float32. Coordinates are narrowed to float.
void write_pcd(const PointCloud& cloud, const std::filesystem::path& path,
               PcdEncoding encoding);

struct GpsTargetPose {
  std::string target_id;
  Point3 position = Point3::Zero();
};

/// Parses `target_id,x,y,z` CSV. Rows keep file order.
std::vector<GpsTargetPose> read_gps_poses(const std::filesystem::path& path);

void write_gps_poses(const std::vector<GpsTargetPose>& poses,
                     const std::filesystem::path& path);

}  // namespace mapeval
