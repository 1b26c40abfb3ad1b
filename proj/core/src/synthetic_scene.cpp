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

#include "mapeval/synthetic_scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mapeval/error.hpp"

namespace mapeval {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Plate "grill" openings: candidate (i, j) is removed when it falls on a
// regular lattice covering hole_fraction of each period.
constexpr int kHolePeriod = 10;

bool in_hole(int i, int j, int holes_per_period) {
  return (i + 3 * j) % kHolePeriod < holes_per_period;
}

Eigen::Vector3d plate_direction(const SceneTarget& t, int plate) {
  const double yaw = t.yaw_deg * kDegToRad + (plate == 0 ? 0.0 : std::numbers::pi / 2.0);
  return {std::cos(yaw), std::sin(yaw), 0.0};
}

}  // namespace

std::string_view to_string(PointLabel label) {
  switch (label) {
    case PointLabel::Ground: return "ground";
    case PointLabel::Plate: return "plate";
    case PointLabel::Outlier: return "outlier";
  }
  return "unknown";
}

void SceneSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(plate_edge > 0.0)) fail("plate_edge must be > 0");
  if (!(plate_point_density > 0.0)) fail("plate_point_density must be > 0");
  if (!(ground_extent > 0.0)) fail("ground_extent must be > 0");
  if (!(ground_point_density > 0.0)) fail("ground_point_density must be > 0");
  if (!(noise_sigma >= 0.0)) fail("noise_sigma must be >= 0");
  if (!(outlier_fraction >= 0.0)) fail("outlier_fraction must be >= 0");
  if (!(hole_fraction >= 0.0 && hole_fraction < 1.0)) fail("hole_fraction must be in [0, 1)");

  std::set<std::string> ids;
  for (const auto& t : targets) {
    if (t.id.empty()) fail("target id must be non-empty");
    if (!ids.insert(t.id).second) fail("duplicate target id '" + t.id + "'");
    if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.yaw_deg)) {
      fail("target '" + t.id + "' has non-finite pose");
    }
  }
  for (std::size_t a = 0; a < targets.size(); ++a) {
    for (std::size_t b = a + 1; b < targets.size(); ++b) {
      const double d = std::hypot(targets[a].x - targets[b].x, targets[a].y - targets[b].y);
      if (d < 2.0 * plate_edge) {
        throw Error(ErrorCode::OverlappingTargets, "targets '" + targets[a].id + "' and '" + targets[b].id +
                                                       "' are " + std::to_string(d) + " m apart, need >= " +
                                                       std::to_string(2.0 * plate_edge));
      }
    }
  }
}

std::pair<PlaneModel, PlaneModel> analytic_plate_planes(const SceneTarget& target) {
  const Point3 corner(target.x, target.y, 0.0);
  // A plate spanned by direction u and +z has horizontal normal u x z.
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  return {PlaneModel::through(corner, plate_direction(target, 0).cross(z)),
          PlaneModel::through(corner, plate_direction(target, 1).cross(z))};
}

std::vector<SceneTarget> ellipse_targets(int count, double semi_major, double semi_minor) {
  std::vector<SceneTarget> targets;
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    // Yaw varies per target so plates are not all axis-aligned.
    targets.push_back({"t" + std::to_string(i + 1), semi_major * std::cos(phi), semi_minor * std::sin(phi),
                       17.0 + 37.0 * i});
  }
  return targets;
}

Scene generate_scene(const SceneSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Scene scene;
  scene.map.frame_label = "map";
  auto& pts = scene.map.points;

  auto add = [&](const Point3& p, PointLabel label, int target) {
    pts.push_back(p);
    scene.labels.push_back(label);
    scene.target_of_point.push_back(target);
  };

  const double ground_step = 1.0 / std::sqrt(spec.ground_point_density);
  const int ground_cells = std::max(1, static_cast<int>(std::floor(2.0 * spec.ground_extent / ground_step)));
  const double ground_pitch = 2.0 * spec.ground_extent / ground_cells;
  pts.reserve(static_cast<std::size_t>(ground_cells) * ground_cells);
  for (int i = 0; i < ground_cells; ++i) {
    for (int j = 0; j < ground_cells; ++j) {
      add({-spec.ground_extent + (i + 0.5) * ground_pitch, -spec.ground_extent + (j + 0.5) * ground_pitch, 0.0},
          PointLabel::Ground, -1);
    }
  }

  // Grid over the closed plate rectangle [0, edge] x [0, edge]. The shared
  // vertical edge (along == 0) is sampled once, by the first plate.
  const int plate_cells =
      std::max(1, static_cast<int>(std::lround(spec.plate_edge * std::sqrt(spec.plate_point_density))));
  const double plate_pitch = spec.plate_edge / plate_cells;
  const int holes_per_period = static_cast<int>(std::lround(spec.hole_fraction * kHolePeriod));
  for (std::size_t t = 0; t < spec.targets.size(); ++t) {
    const auto& target = spec.targets[t];
    const Point3 corner(target.x, target.y, 0.0);
    for (int plate = 0; plate < 2; ++plate) {
      const Eigen::Vector3d dir = plate_direction(target, plate);
      for (int i = plate == 0 ? 0 : 1; i <= plate_cells; ++i) {
        for (int j = 0; j <= plate_cells; ++j) {
          if (in_hole(i, j, holes_per_period)) continue;
          const double along = i * plate_pitch;
          const double height = j * plate_pitch;
          add(corner + along * dir + Eigen::Vector3d(0.0, 0.0, height), PointLabel::Plate, static_cast<int>(t));
        }
      }
    }
    scene.truth.push_back({target.id, Point3(target.x, target.y, spec.plate_edge)});
  }

  if (spec.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (auto& p : pts) {
      p.x() += noise(rng);
      p.y() += noise(rng);
      p.z() += noise(rng);
    }
  }

  const auto outliers = static_cast<std::size_t>(std::llround(spec.outlier_fraction * static_cast<double>(pts.size())));
  if (outliers > 0) {
    Point3 lo = pts.empty() ? Point3::Zero() : pts.front();
    Point3 hi = lo;
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < outliers; ++k) {
      const Point3 u(unit(rng), unit(rng), unit(rng));
      add(lo + u.cwiseProduct(hi - lo), PointLabel::Outlier, -1);
    }
  }
  return scene;
}

}  // namespace mapeval
