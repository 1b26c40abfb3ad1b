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

#include <algorithm>
#include <array>
#include <limits>

#include "mapeval/error.hpp"
#include "mapeval/target_estimation.hpp"

namespace mapeval {
namespace {

bool lexicographic_less(const Point3& a, const Point3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

std::size_t farthest_from(const PointCloud& cloud, const Point3& q, double& distance) {
  std::size_t best = 0;
  distance = -1.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double d = (cloud.points[i] - q).squaredNorm();
    if (d > distance) {
      distance = d;
      best = i;
    }
  }
  return best;
}

// The seed only picks the starting point; the two centroids are the
// farthest point from it and the farthest point from that one.
std::array<Point3, 2> seed_centroids(const PointCloud& cloud, Seed seed) {
  Rng rng(seed);
  const Point3 start = cloud.points[std::uniform_int_distribution<std::size_t>(0, cloud.size() - 1)(rng)];
  double distance = 0.0;
  const Point3 a = cloud.points[farthest_from(cloud, start, distance)];
  const Point3 b = cloud.points[farthest_from(cloud, a, distance)];
  if (!(distance > 0.0)) {
    throw Error(ErrorCode::DegenerateCluster, "all points coincide; cannot form two clusters");
  }
  return {a, b};
}

}  // namespace

Clusters kmeans2(const PointCloud& cloud, Seed seed, const EstimationConfig& cfg) {
  const std::size_t n = cloud.size();
  if (n < 2 * cfg.min_points_per_cluster || n < 2) {
    throw Error(ErrorCode::TooFewPoints, "kmeans2 needs >= " + std::to_string(2 * cfg.min_points_per_cluster) +
                                             " points, got " + std::to_string(n));
  }

  std::array<Point3, 2> centroid = seed_centroids(cloud, seed);
  std::vector<std::uint8_t> label(n, 0);

  auto assign = [&] {
    std::array<std::size_t, 2> count{0, 0};
    std::array<Point3, 2> sum{Point3::Zero(), Point3::Zero()};
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = cloud.points[i];
      label[i] = (p - centroid[0]).squaredNorm() <= (p - centroid[1]).squaredNorm() ? 0 : 1;
      ++count[label[i]];
      sum[label[i]] += p;
    }
    if (count[0] == 0 || count[1] == 0) {
      throw Error(ErrorCode::DegenerateCluster, "a cluster became empty");
    }
    return std::array<Point3, 2>{sum[0] / static_cast<double>(count[0]), sum[1] / static_cast<double>(count[1])};
  };

  int iterations = 0;
  while (iterations < cfg.kmeans_max_iterations) {
    const auto updated = assign();
    ++iterations;
    const double moved = std::max((updated[0] - centroid[0]).norm(), (updated[1] - centroid[1]).norm());
    centroid = updated;
    if (moved < cfg.kmeans_tolerance) break;
  }
  // Final partition is the one induced by the final centroids.
  centroid = assign();

  const bool swap = lexicographic_less(centroid[1], centroid[0]);
  Clusters out;
  out.iterations = iterations;
  out.first_centroid = centroid[swap ? 1 : 0];
  out.second_centroid = centroid[swap ? 0 : 1];
  out.first.frame_label = out.second.frame_label = cloud.frame_label;
  for (std::size_t i = 0; i < n; ++i) {
    const bool to_first = (label[i] == 0) != swap;
    (to_first ? out.first : out.second).points.push_back(cloud.points[i]);
    (to_first ? out.first_indices : out.second_indices).push_back(i);
  }

  const std::size_t smallest = std::min(out.first.size(), out.second.size());
  if (smallest < cfg.min_points_per_cluster) {
    throw Error(ErrorCode::DegenerateCluster, "smallest cluster has " + std::to_string(smallest) +
                                                  " points, need " + std::to_string(cfg.min_points_per_cluster));
  }
  return out;
}

}  // namespace mapeval
