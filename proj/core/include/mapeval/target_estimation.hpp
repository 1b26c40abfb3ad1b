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
#include <string>
#include <utility>
#include <vector>

#include "mapeval/geometry.hpp"
#include "mapeval/random.hpp"

namespace mapeval {

struct EstimationConfig {
  int k = 2;  // fixed: one cluster per plate
  double ransac_inlier_threshold = 0.03;  // m
  int ransac_iterations = 1000;
  double perpendicularity_tolerance = 1.0;  // deg
  int sample_count = 100;
  int max_retries_per_sample = 50;
  std::size_t min_points_per_cluster = 20;
  int kmeans_max_iterations = 100;
  double kmeans_tolerance = 1e-6;  // m
  /// Workers used for the independent samples of estimate_target. Results do
  /// not depend on this value.
  unsigned threads = 1;

  /// Throws InvalidConfig naming the first offending field.
  void validate() const;
};

// --- clustering -------------------------------------------------------------

struct Clusters {
  PointCloud first;
  PointCloud second;
  /// Original index of every point, per cluster, in input order.
  std::vector<std::size_t> first_indices;
  std::vector<std::size_t> second_indices;
  Point3 first_centroid = Point3::Zero();
  Point3 second_centroid = Point3::Zero();
  int iterations = 0;
};

/// Two-cluster Lloyd k-means seeded with a far-apart pair of points. Clusters
/// are ordered by lexicographic (x, y, z) order of their centroids.
Clusters kmeans2(const PointCloud& cloud, Seed seed, const EstimationConfig& cfg);

// --- plane fitting ----------------------------------------------------------

struct RansacResult {
  PointCloud inliers;
  std::vector<std::size_t> inlier_indices;
  PlaneModel model;
};

/// 3-point RANSAC plane. Inliers satisfy |n.p + d| <= ransac_inlier_threshold
/// against the returned (canonical) model.
RansacResult ransac_plane(const PointCloud& cloud, Seed seed, const EstimationConfig& cfg);

/// Total-least-squares plane through the centroid.
PlaneModel svd_plane(const PointCloud& points);

struct GateResult {
  bool passed = false;
  double plates_angle = 0.0;   // deg, between the two plates
  double first_to_ground = 0.0;
  double second_to_ground = 0.0;
};

GateResult perpendicularity_gate(const PlaneModel& first, const PlaneModel& second,
                                 const PlaneModel& ground, double tolerance_deg);

/// Line shared by two planes; `point` is its closest point to the origin.
Line3 intersect_planes(const PlaneModel& first, const PlaneModel& second);

// --- pose -------------------------------------------------------------------

struct PoseSample {
  Point3 position = Point3::Zero();
  PlaneModel first_plate;
  PlaneModel second_plate;
  int retries = 0;
};

/// One full clustering / RANSAC / SVD / gate pass, retried with fresh seeds
/// while the gate rejects the plane pair.
PoseSample sample_target_pose(const PointCloud& tight, const PlaneModel& ground, Seed seed,
                              const EstimationConfig& cfg);

struct TargetEstimate {
  std::string target_id;
  Point3 position = Point3::Zero();
  std::vector<Point3> sample_positions;
  Eigen::Vector3d sample_spread = Eigen::Vector3d::Zero();  // per-axis population std, m
  std::pair<PlaneModel, PlaneModel> plane_pair;
  int retries_used = 0;
};

/// Averages `sample_count` independent pose samples. Per-sample seeds come
/// from the sample index.
TargetEstimate estimate_target(const PointCloud& tight, const PlaneModel& ground,
                               const std::string& target_id, Seed seed,
                               const EstimationConfig& cfg);

}  // namespace mapeval
