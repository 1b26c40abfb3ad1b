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

#include "mapeval/cropping.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "internal/plane_hypothesis.hpp"
#include "mapeval/error.hpp"
#include "mapeval/target_estimation.hpp"

namespace mapeval {

void CropConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(loose_radius > 0.0)) fail("loose_radius must be > 0");
  if (!(ground_inlier_threshold > 0.0)) fail("ground_inlier_threshold must be > 0");
  if (!(ground_min_inlier_fraction > 0.0 && ground_min_inlier_fraction < 1.0)) {
    fail("ground_min_inlier_fraction must be in (0, 1)");
  }
  if (!(above_ground_clearance > 0.0)) fail("above_ground_clearance must be > 0");
  if (ground_ransac_iterations < 1) fail("ground_ransac_iterations must be >= 1");
  if (!(ground_max_tilt_deg > 0.0 && ground_max_tilt_deg <= 90.0)) fail("ground_max_tilt_deg must be in (0, 90]");
}

PointCloud loose_crop(const PointCloud& map, const Point3& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidConfig, "crop radius must be > 0");
  PointCloud out;
  out.frame_label = map.frame_label;
  for (const auto& p : map.points) {
    if ((p - center).norm() <= radius) out.points.push_back(p);
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyCrop, "no map points within " + std::to_string(radius) + " m of (" +
                                          std::to_string(center.x()) + ", " + std::to_string(center.y()) + ", " +
                                          std::to_string(center.z()) + ")");
  }
  return out;
}

GroundRemoval remove_ground(const PointCloud& cloud, const CropConfig& cfg, Seed seed) {
  cfg.validate();
  const std::size_t n = cloud.size();
  if (n < 3) throw Error(ErrorCode::TooFewPoints, "ground fit needs >= 3 points, got " + std::to_string(n));

  const double min_normal_z = std::cos(cfg.ground_max_tilt_deg * std::numbers::pi / 180.0);
  Rng rng(seed);
  std::optional<PlaneModel> best;
  std::size_t best_count = 0;

  auto count_inliers = [&](const PlaneModel& plane) {
    std::size_t count = 0;
    for (const auto& p : cloud.points) {
      if (std::abs(plane.signed_distance(p)) <= cfg.ground_inlier_threshold) ++count;
    }
    return count;
  };

  for (int iter = 0; iter < cfg.ground_ransac_iterations; ++iter) {
    const auto [i, j, k] = internal::sample_triple(rng, n);
    const auto hypothesis = internal::plane_from_triple(cloud.points[i], cloud.points[j], cloud.points[k]);
    if (!hypothesis || hypothesis->normal.z() < min_normal_z) continue;
    const std::size_t count = count_inliers(*hypothesis);
    if (count > best_count) {
      best = hypothesis;
      best_count = count;
    }
  }

  const double fraction = static_cast<double>(best_count) / static_cast<double>(n);
  if (!best || fraction < cfg.ground_min_inlier_fraction) {
    throw Error(ErrorCode::NoGroundFound, "best ground hypothesis covers " + std::to_string(fraction) +
                                              " of the crop, need " + std::to_string(cfg.ground_min_inlier_fraction));
  }

  // Least-squares refinement on the consensus set.
  PointCloud consensus;
  for (const auto& p : cloud.points) {
    if (std::abs(best->signed_distance(p)) <= cfg.ground_inlier_threshold) consensus.points.push_back(p);
  }
  PlaneModel ground = *best;
  try {
    const PlaneModel refined = svd_plane(consensus);
    if (refined.normal.z() >= min_normal_z) ground = refined;
  } catch (const Error&) {
    // Keep the RANSAC hypothesis.
  }
  ground.inlier_count = count_inliers(ground);

  GroundRemoval result;
  result.ground = ground;
  result.above.frame_label = cloud.frame_label;
  for (const auto& p : cloud.points) {
    if (ground.signed_distance(p) > cfg.above_ground_clearance) result.above.points.push_back(p);
  }
  if (result.above.empty()) {
    throw Error(ErrorCode::EmptyAfterRemoval, "no points remain above the ground plane");
  }
  return result;
}

}  // namespace mapeval
