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

// Test-only helpers: independent oracles and random generators. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "mapeval/geometry.hpp"

namespace mapeval::testing {

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Two unit vectors spanning the plane orthogonal to `normal`.
inline std::pair<Eigen::Vector3d, Eigen::Vector3d> plane_basis(const Eigen::Vector3d& normal) {
  const Eigen::Vector3d helper = std::abs(normal.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d a = normal.cross(helper).normalized();
  return {a, normal.cross(a).normalized()};
}

inline double sum_squared_distances(const std::vector<Point3>& pts, const Eigen::Vector3d& unit_normal,
                                    double offset) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double d = unit_normal.dot(p) + offset;
    s += d * d;
  }
  return s;
}

/// Angle between two unoriented unit vectors, radians.
inline double unoriented_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

/// Plane normal for a vertical plane at `yaw_deg` from the x axis, rotated
/// `tilt_deg` out of vertical about its in-plane horizontal axis.
inline Eigen::Vector3d vertical_plane_normal(double yaw_deg, double tilt_deg = 0.0) {
  const double yaw = yaw_deg * std::numbers::pi / 180.0;
  const double tilt = tilt_deg * std::numbers::pi / 180.0;
  const Eigen::Vector3d along(std::cos(yaw), std::sin(yaw), 0.0);
  const Eigen::Vector3d horizontal_normal(-std::sin(yaw), std::cos(yaw), 0.0);
  return Eigen::AngleAxisd(tilt, along) * horizontal_normal;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mapeval_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mapeval::testing
