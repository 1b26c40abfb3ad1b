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

#include <span>
#include <string>
#include <vector>

#include "mapeval/geometry.hpp"
#include "mapeval/pointcloud_io.hpp"
#include "mapeval/registration.hpp"
#include "mapeval/target_estimation.hpp"

namespace mapeval {

enum class DimensionMode { Planar2D, Spatial3D };

struct PairwiseError {
  std::string id_a;  // id_a < id_b
  std::string id_b;
  double error = 0.0;  // m
};

struct TargetError {
  std::string target_id;
  double error = 0.0;  // m
};

/// Mean and population standard deviation.
struct Summary {
  double mean = 0.0;
  double std = 0.0;
};

Summary summarize(std::span<const double> values);

/// | ||x_i - x_j|| - ||x̂_i - x̂_j|| | for every unordered pair, sorted by ids.
std::vector<PairwiseError> pairwise_distance_errors(const std::vector<TargetPosePair>& pairs, DimensionMode dim);

struct RelativeError {
  Summary summary;
  std::vector<PairwiseError> breakdown;
};

RelativeError relative_error(const std::vector<TargetPosePair>& pairs, DimensionMode dim);

struct AbsoluteError {
  Summary summary;
  std::vector<TargetError> breakdown;  // sorted by id
};

/// Distance from each registered estimate to its ground truth.
AbsoluteError absolute_error(const std::vector<TargetPosePair>& pairs, const Transform2D& transform,
                             DimensionMode dim);

struct EvaluationReport {
  RelativeError relative;
  AbsoluteError absolute;
  RegistrationResult registration;
  RegistrationMode registration_mode = RegistrationMode::LeastSquares;
  DimensionMode dimension_mode = DimensionMode::Planar2D;
  /// Pairs used, sorted by id; `estimated` is in the map frame.
  std::vector<TargetPosePair> pairs;
};

/// Joins two pose lists on target_id; result sorted by id. Throws IdMismatch
/// listing ids present on only one side.
std::vector<TargetPosePair> pair_by_id(const std::vector<GpsTargetPose>& estimated,
                                       const std::vector<GpsTargetPose>& ground_truth);

/// Pairs estimates with GPS poses by id, registers them and computes both
/// metrics. Relative error uses the unregistered estimates; it is invariant
/// under the planar rigid registration anyway.
EvaluationReport evaluate(const std::vector<TargetEstimate>& estimates, const std::vector<GpsTargetPose>& gps,
                          RegistrationMode mode, DimensionMode dim);

}  // namespace mapeval
