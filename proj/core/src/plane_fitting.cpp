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

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "internal/plane_hypothesis.hpp"
#include "mapeval/error.hpp"
#include "mapeval/target_estimation.hpp"

namespace mapeval {

RansacResult ransac_plane(const PointCloud& cloud, Seed seed, const EstimationConfig& cfg) {
  const std::size_t n = cloud.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints, "ransac_plane needs >= 3 points, got " + std::to_string(n));
  }
  const double threshold = cfg.ransac_inlier_threshold;

  Rng rng(seed);
  std::optional<PlaneModel> best;
  std::size_t best_count = 0;
  double best_mean = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < cfg.ransac_iterations; ++iter) {
    const auto [i, j, k] = internal::sample_triple(rng, n);
    const auto hypothesis = internal::plane_from_triple(cloud.points[i], cloud.points[j], cloud.points[k]);
    if (!hypothesis) continue;

    std::size_t count = 0;
    double sum = 0.0;
    for (const auto& p : cloud.points) {
      const double dist = std::abs(hypothesis->signed_distance(p));
      if (dist <= threshold) {
        ++count;
        sum += dist;
      }
    }
    const double mean = sum / static_cast<double>(count);
    if (count > best_count || (count == best_count && count > 0 && mean < best_mean)) {
      best = hypothesis;
      best_count = count;
      best_mean = mean;
    }
  }

  if (!best || best_count < cfg.min_points_per_cluster) {
    throw Error(ErrorCode::NoConsensus, "best plane hypothesis has " + std::to_string(best_count) +
                                            " inliers, need " + std::to_string(cfg.min_points_per_cluster));
  }

  RansacResult result;
  result.model = *best;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (std::abs(result.model.signed_distance(cloud.points[idx])) <= threshold) {
      result.inliers.points.push_back(cloud.points[idx]);
      result.inlier_indices.push_back(idx);
    }
  }
  result.inliers.frame_label = cloud.frame_label;
  result.model.inlier_count = result.inliers.size();
  return result;
}

PlaneModel svd_plane(const PointCloud& points) {
  const std::size_t n = points.size();
  if (n < 3) {
    throw Error(ErrorCode::DegeneratePlane, "svd_plane needs >= 3 points, got " + std::to_string(n));
  }

  Point3 centroid = Point3::Zero();
  for (const auto& p : points.points) centroid += p;
  centroid /= static_cast<double>(n);

  Eigen::MatrixX3d centered(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) centered.row(static_cast<Eigen::Index>(i)) = (points.points[i] - centroid).transpose();

  const Eigen::JacobiSVD<Eigen::MatrixX3d> svd(centered, Eigen::ComputeThinV);
  const Eigen::Vector3d sigma = svd.singularValues();
  if (!(sigma(0) > 0.0) || (sigma(1) < 1e-12 * sigma(0) && sigma(2) < 1e-12 * sigma(0))) {
    throw Error(ErrorCode::DegeneratePlane, "points are collinear or coincident");
  }
  return PlaneModel::through(centroid, svd.matrixV().col(2), n);
}

GateResult perpendicularity_gate(const PlaneModel& first, const PlaneModel& second,
                                 const PlaneModel& ground, double tolerance_deg) {
  GateResult gate;
  gate.plates_angle = angle_between_planes(first, second);
  gate.first_to_ground = angle_between_planes(first, ground);
  gate.second_to_ground = angle_between_planes(second, ground);
  gate.passed = std::abs(gate.plates_angle - 90.0) <= tolerance_deg &&
                std::abs(gate.first_to_ground - 90.0) <= tolerance_deg &&
                std::abs(gate.second_to_ground - 90.0) <= tolerance_deg;
  return gate;
}

Line3 intersect_planes(const PlaneModel& first, const PlaneModel& second) {
  const Eigen::Vector3d direction = first.normal.cross(second.normal);
  if (direction.norm() < 1e-6) {
    throw Error(ErrorCode::NearParallel, "plane normals are parallel within 1e-6");
  }
  // Minimum-norm solution of the two plane equations: p = A^T (A A^T)^-1 b.
  Eigen::Matrix<double, 2, 3> a;
  a.row(0) = first.normal.transpose();
  a.row(1) = second.normal.transpose();
  const Eigen::Vector2d b(-first.offset, -second.offset);
  const Eigen::Matrix2d gram = a * a.transpose();
  const Point3 point = a.transpose() * gram.inverse() * b;
  return Line3::make(point, direction);
}

}  // namespace mapeval
