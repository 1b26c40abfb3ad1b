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

#include "mapeval/pipeline.hpp"

#include <algorithm>
#include <filesystem>

namespace mapeval {

PlaneModel default_ground_plane() { return PlaneModel::make(Eigen::Vector3d::UnitZ(), 0.0); }

Seed target_seed(Seed run_seed, const std::string& target_id) {
  // FNV-1a over the id.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : target_id) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return derive_seed(run_seed, h);
}

TightCrop crop_target(const PointCloud& map, const GpsTargetPose& gps, const CropConfig& cfg, Seed seed) {
  const PointCloud loose = loose_crop(map, gps.position, cfg.loose_radius);
  auto removal = remove_ground(loose, cfg, seed);
  return {std::move(removal.above), removal.ground, loose.size()};
}

EvaluationOutcome run_evaluation(const RunConfig& cfg) {
  const auto gps = read_gps_poses(cfg.gps_path);
  if (gps.size() < 2) {
    throw Error(ErrorCode::TooFewTargets,
                cfg.gps_path.string() + " lists " + std::to_string(gps.size()) + " target(s), need >= 2");
  }

  bool need_map = !cfg.pre_cropped_dir;
  if (cfg.pre_cropped_dir) {
    for (const auto& g : gps) {
      if (!std::filesystem::exists(*cfg.pre_cropped_dir / (g.target_id + ".pcd"))) need_map = true;
    }
  }
  std::optional<PointCloud> map;
  if (need_map) {
    if (cfg.map_path.empty()) {
      throw Error(ErrorCode::InvalidConfig, "map_path is required (no pre-cropped cloud for every target)");
    }
    map = read_pcd(cfg.map_path).cloud;
  }
  return run_evaluation(cfg, map ? &*map : nullptr, gps);
}

EvaluationOutcome run_evaluation(const RunConfig& cfg, const PointCloud* map, const std::vector<GpsTargetPose>& gps) {
  cfg.crop.validate();
  cfg.estimation.validate();
  if (gps.size() < 2) {
    throw Error(ErrorCode::TooFewTargets, "need >= 2 GPS targets, got " + std::to_string(gps.size()));
  }

  std::vector<GpsTargetPose> ordered = gps;
  std::sort(ordered.begin(), ordered.end(),
            [](const GpsTargetPose& a, const GpsTargetPose& b) { return a.target_id < b.target_id; });

  EvaluationOutcome outcome;
  for (const auto& target : ordered) {
    const Seed seed = target_seed(cfg.seed, target.target_id);
    try {
      TargetRun run;
      std::optional<std::filesystem::path> tight_file;
      if (cfg.pre_cropped_dir) {
        const auto candidate = *cfg.pre_cropped_dir / (target.target_id + ".pcd");
        if (std::filesystem::exists(candidate)) tight_file = candidate;
      }

      PointCloud tight;
      if (tight_file) {
        tight = read_pcd(*tight_file).cloud;
        run.ground = default_ground_plane();
        run.pre_cropped = true;
      } else {
        if (map == nullptr) {
          throw Error(ErrorCode::InvalidConfig, "no map and no pre-cropped cloud for '" + target.target_id + "'");
        }
        auto crop = crop_target(*map, target, cfg.crop, derive_seed(seed, 0));
        tight = std::move(crop.tight);
        run.ground = crop.ground;
        run.loose_points = crop.loose_points;
      }
      run.tight_points = tight.size();
      run.estimate = estimate_target(tight, run.ground, target.target_id, derive_seed(seed, 1), cfg.estimation);
      outcome.targets.push_back(std::move(run));
    } catch (const Error& e) {
      outcome.failures.push_back({target.target_id, e.code(), e.what()});
    }
  }

  if (outcome.targets.size() < 2) {
    outcome.evaluation_failure =
        TargetFailure{"", ErrorCode::TooFewTargets,
                      "only " + std::to_string(outcome.targets.size()) + " target(s) estimated, need >= 2"};
    return outcome;
  }

  std::vector<TargetEstimate> estimates;
  std::vector<GpsTargetPose> matched;
  for (const auto& run : outcome.targets) {
    estimates.push_back(run.estimate);
    const auto it = std::find_if(ordered.begin(), ordered.end(),
                                 [&](const GpsTargetPose& g) { return g.target_id == run.estimate.target_id; });
    matched.push_back(*it);
  }
  try {
    outcome.report = evaluate(estimates, matched, cfg.registration_mode, cfg.dimension_mode);
  } catch (const Error& e) {
    outcome.evaluation_failure = TargetFailure{"", e.code(), e.what()};
  }
  return outcome;
}

}  // namespace mapeval
