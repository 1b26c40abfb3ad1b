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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapeval/geometry.hpp"
#include "mapeval/pointcloud_io.hpp"
#include "mapeval/random.hpp"

namespace mapeval {

struct SceneTarget {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  double yaw_deg = 0.0;
};

struct SceneSpec {
  std::vector<SceneTarget> targets;
  double plate_edge = 0.6;              // m
  double plate_point_density = 400.0;   // points / m^2
  double ground_extent = 30.0;          // half-width of the ground square, m
  double ground_point_density = 100.0;  // points / m^2
  double noise_sigma = 0.01;            // m
  double outlier_fraction = 0.0;
  double hole_fraction = 0.3;           // [0, 1)
  Seed seed = 0;

  /// Throws InvalidConfig or OverlappingTargets.
  void validate() const;
};

enum class PointLabel : std::uint8_t { Ground, Plate, Outlier };

std::string_view to_string(PointLabel label);

struct Scene {
  PointCloud map;
  std::vector<GpsTargetPose> truth;   // (x, y, plate_edge) per target, spec order
  std::vector<PointLabel> labels;     // one per map point
  /// Target index per point; -1 for ground and outliers.
  std::vector<int> target_of_point;
};

/// Ground square at z = 0 plus one L-shaped target per entry: two vertical
/// plate_edge x plate_edge plates meeting at 90 degrees along the vertical
/// edge through (x, y). Deterministic in `spec.seed`.
Scene generate_scene(const SceneSpec& spec);

/// Noise-free planes of a target's two plates.
std::pair<PlaneModel, PlaneModel> analytic_plate_planes(const SceneTarget& target);

/// Targets evenly spaced on an axis-aligned ellipse centred at the origin,
/// ids t1..tn.
std::vector<SceneTarget> ellipse_targets(int count, double semi_major, double semi_minor);

}  // namespace mapeval
