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

#include "mapeval/geometry.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace mapeval {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// True when v should be negated to satisfy the z, then x, then y convention.
bool needs_flip(const Eigen::Vector3d& v, double z_eps) {
  if (std::abs(v.z()) > z_eps) return v.z() < 0.0;
  if (v.x() != 0.0) return v.x() < 0.0;
  return v.y() < 0.0;
}

}  // namespace

PlaneModel PlaneModel::make(const Eigen::Vector3d& normal, double offset,
                            std::size_t inlier_count) {
  const double norm = normal.norm();
  assert(norm > 0.0);
  PlaneModel plane;
  plane.normal = normal / norm;
  plane.offset = offset / norm;
  plane.inlier_count = inlier_count;
  return plane.canonical();
}

PlaneModel PlaneModel::through(const Point3& point, const Eigen::Vector3d& normal,
                               std::size_t inlier_count) {
  const Eigen::Vector3d n = normal.normalized();
  return make(n, -n.dot(point), inlier_count);
}

PlaneModel PlaneModel::canonical() const {
  PlaneModel out = *this;
  if (needs_flip(normal, 1e-9)) {
    out.normal = -normal;
    out.offset = -offset;
  }
  return out;
}

Line3 Line3::make(const Point3& point, const Eigen::Vector3d& direction) {
  Line3 line;
  line.point = point;
  line.direction = direction.normalized();
  if (needs_flip(line.direction, 0.0)) line.direction = -line.direction;
  return line;
}

Transform2D Transform2D::from_angle(double radians, const Eigen::Vector2d& translation) {
  Transform2D t;
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  t.rotation << c, -s, s, c;
  t.translation = translation;
  return t;
}

double Transform2D::angle() const { return std::atan2(rotation(1, 0), rotation(0, 0)); }

Transform2D Transform2D::inverse() const {
  Transform2D inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

Transform2D compose(const Transform2D& lhs, const Transform2D& rhs) {
  Transform2D out;
  out.rotation = lhs.rotation * rhs.rotation;
  out.translation = lhs.rotation * rhs.translation + lhs.translation;
  return out;
}

Point3 apply_transform(const Transform2D& t, const Point3& p) {
  const Eigen::Vector2d xy = t(p.head<2>());
  return {xy.x(), xy.y(), p.z()};
}

// Both angles go through atan2(|cross|, |dot|), which stays accurate near 0
// and 90 degrees where acos/asin lose digits.
double angle_between_planes(const PlaneModel& a, const PlaneModel& b) {
  const double dot = std::abs(a.normal.dot(b.normal));
  const double cross = a.normal.cross(b.normal).norm();
  return std::atan2(cross, dot) * kRadToDeg;
}

double plane_line_intersection_angle(const PlaneModel& p, const Line3& l) {
  const double dot = std::abs(p.normal.dot(l.direction));
  const double cross = p.normal.cross(l.direction).norm();
  return std::atan2(dot, cross) * kRadToDeg;
}

bool is_finite(const Point3& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z());
}

}  // namespace mapeval
