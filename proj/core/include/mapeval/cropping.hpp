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

#include "mapeval/geometry.hpp"
#include "mapeval/random.hpp"

namespace mapeval {

struct CropConfig {
  double loose_radius = 5.0;                 // m
  double ground_inlier_threshold = 0.05;     // m
  double ground_min_inlier_fraction = 0.2;   // (0, 1)
  double above_ground_clearance = 0.05;      // m
  int ground_ransac_iterations = 200;
  /// Ground hypotheses must have a normal within this angle of +z.
  double ground_max_tilt_deg = 30.0;

  void validate() const;
};

/// Points inside the closed ball ||p - center|| <= radius, in input order.
/// Throws EmptyCrop when nothing survives.
PointCloud loose_crop(const PointCloud& map, const Point3& center, double radius);

struct GroundRemoval {
  PointCloud above;     // points strictly above the clearance band
  PlaneModel ground;    // canonical, normal.z > 0
};

/// Fits the ground by RANSAC (near-horizontal hypotheses only, refined by a
/// least-squares fit of the winning inliers) and drops every point within
/// `above_ground_clearance` of it or below it.
GroundRemoval remove_ground(const PointCloud& cloud, const CropConfig& cfg, Seed seed);

}  // namespace mapeval
