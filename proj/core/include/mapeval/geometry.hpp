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
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mapeval {

/// A map point in meters. Clouds never hold non-finite coordinates; parsers
/// drop them on the way in.
using Point3 = Eigen::Vector3d;

struct PointCloud {
  std::vector<Point3> points;
  std::string frame_label;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Unoriented plane `normal.dot(p) + offset == 0` with a unit normal.
///
/// Instances built through `PlaneModel::make` are canonical: normal.z >= 0
/// when |normal.z| > 1e-9, otherwise normal.x >= 0, otherwise normal.y >= 0.
struct PlaneModel {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
  std::size_t inlier_count = 0;

  /// Normalizes `normal` (scaling `offset` with it) and applies the sign
  /// convention. `normal` must be non-zero.
  static PlaneModel make(const Eigen::Vector3d& normal, double offset,
                         std::size_t inlier_count = 0);

  /// Plane through `point` with the given normal.
  static PlaneModel through(const Point3& point, const Eigen::Vector3d& normal,
                            std::size_t inlier_count = 0);

  PlaneModel canonical() const;

  double signed_distance(const Point3& p) const { return normal.dot(p) + offset; }
};

/// Unoriented line; canonical direction has z >= 0 (x >= 0 then y >= 0 for
/// horizontal lines).
struct Line3 {
  Point3 point = Point3::Zero();
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();

  static Line3 make(const Point3& point, const Eigen::Vector3d& direction);
};

/// Proper planar rigid motion p -> rotation * p + translation.
struct Transform2D {
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  static Transform2D identity() { return {}; }
  static Transform2D from_angle(double radians, const Eigen::Vector2d& translation);

  /// Rotation angle in radians, in (-pi, pi].
  double angle() const;
  Transform2D inverse() const;
  Eigen::Vector2d operator()(const Eigen::Vector2d& p) const {
    return rotation * p + translation;
  }
};

/// `lhs ∘ rhs`: applies rhs first.
Transform2D compose(const Transform2D& lhs, const Transform2D& rhs);

/// Maps (x, y) through the transform and leaves z untouched.
Point3 apply_transform(const Transform2D& t, const Point3& p);

struct TargetPosePair {
  std::string target_id;
  Point3 estimated = Point3::Zero();     // map frame
  Point3 ground_truth = Point3::Zero();  // GPS frame
};

/// Acute angle between two planes, degrees in [0, 90].
double angle_between_planes(const PlaneModel& a, const PlaneModel& b);

/// Angle between a line and a plane, degrees in [0, 90]. A line along the
/// plane normal gives 90.
double plane_line_intersection_angle(const PlaneModel& p, const Line3& l);

bool is_finite(const Point3& p);

}  // namespace mapeval
