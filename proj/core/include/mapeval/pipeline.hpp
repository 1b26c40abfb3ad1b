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

#include <optional>
#include <string>
#include <vector>

#include "mapeval/config.hpp"
#include "mapeval/error.hpp"
#include "mapeval/metrics.hpp"
#include "mapeval/pointcloud_io.hpp"

namespace mapeval {

struct TargetFailure {
  std::string target_id;
  ErrorCode code = ErrorCode::SampleFailure;
  std::string message;
};

struct TargetRun {
  TargetEstimate estimate;
  PlaneModel ground;
  std::size_t loose_points = 0;  // 0 when pre-cropped
  std::size_t tight_points = 0;
  bool pre_cropped = false;
};

struct EvaluationOutcome {
  std::vector<TargetRun> targets;        // succeeded, sorted by id
  std::vector<TargetFailure> failures;   // sorted by id
  std::optional<EvaluationReport> report;
  /// Set when fewer than two targets succeeded or evaluation itself failed.
  std::optional<TargetFailure> evaluation_failure;

  bool fully_succeeded() const { return failures.empty() && report && !evaluation_failure; }
};

/// Horizontal ground used when the caller supplies a tight cloud without a
/// ground estimate.
PlaneModel default_ground_plane();

/// Seed stream of a target, derived from its id so it does not depend on
/// file order.
Seed target_seed(Seed run_seed, const std::string& target_id);

/// Loose crop + ground removal for one target.
struct TightCrop {
  PointCloud tight;
  PlaneModel ground;
  std::size_t loose_points = 0;
};
TightCrop crop_target(const PointCloud& map, const GpsTargetPose& gps, const CropConfig& cfg, Seed seed);

/// Full per-target pipeline followed by evaluation. Input/config problems
/// (unreadable files, fewer than two GPS targets, missing map) throw; target
/// failures are collected in the outcome.
EvaluationOutcome run_evaluation(const RunConfig& cfg);

/// Same, with inputs already in memory. `map` may be null when every target
/// is served from `cfg.pre_cropped_dir`.
EvaluationOutcome run_evaluation(const RunConfig& cfg, const PointCloud* map, const std::vector<GpsTargetPose>& gps);

}  // namespace mapeval
