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

#include <array>
#include <optional>

#include "mapeval/geometry.hpp"
#include "mapeval/random.hpp"

namespace mapeval::internal {

// Triangles below this area are treated as collinear.
inline constexpr double kMinTriangleArea = 1e-8;  // m^2

/// Canonical plane through three points, or nullopt for near-collinear triples.
inline std::optional<PlaneModel> plane_from_triple(const Point3& a, const Point3& b, const Point3& c) {
  const Eigen::Vector3d cross = (b - a).cross(c - a);
  const double norm = cross.norm();
  if (0.5 * norm < kMinTriangleArea) return std::nullopt;
  const Eigen::Vector3d n = cross / norm;
  return PlaneModel::make(n, -n.dot(a));
}

/// Three distinct indices drawn uniformly from [0, n), n >= 3.
inline std::array<std::size_t, 3> sample_triple(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t i = pick(rng);
  std::size_t j = pick(rng);
  while (j == i) j = pick(rng);
  std::size_t k = pick(rng);
  while (k == i || k == j) k = pick(rng);
  return {i, j, k};
}

}  // namespace mapeval::internal
