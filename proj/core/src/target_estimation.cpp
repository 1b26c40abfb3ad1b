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

#include "mapeval/target_estimation.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "mapeval/error.hpp"
#include "mapeval/parallel.hpp"

namespace mapeval {

void EstimationConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (k != 2) fail("k must be 2");
  if (!(ransac_inlier_threshold > 0.0)) fail("ransac_inlier_threshold must be > 0");
  if (ransac_iterations < 1) fail("ransac_iterations must be >= 1");
  if (!(perpendicularity_tolerance > 0.0)) fail("perpendicularity_tolerance must be > 0");
  if (sample_count < 1) fail("sample_count must be >= 1");
  if (max_retries_per_sample < 0) fail("max_retries_per_sample must be >= 0");
  if (min_points_per_cluster < 1) fail("min_points_per_cluster must be >= 1");
  if (kmeans_max_iterations < 1) fail("kmeans_max_iterations must be >= 1");
  if (!(kmeans_tolerance >= 0.0)) fail("kmeans_tolerance must be >= 0");
}

PoseSample sample_target_pose(const PointCloud& tight, const PlaneModel& ground, Seed seed,
                              const EstimationConfig& cfg) {
  std::optional<Error> last_error;
  std::optional<GateResult> last_gate;

  for (int attempt = 0; attempt <= cfg.max_retries_per_sample; ++attempt) {
    const Seed attempt_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    try {
      const Clusters clusters = kmeans2(tight, derive_seed(attempt_seed, 0), cfg);

      // RANSAC streams are keyed by each cluster's first original index, not
      // by its slot, so a rigidly moved cloud replays the same hypotheses.
      const auto first = ransac_plane(clusters.first, derive_seed(attempt_seed, 1 + clusters.first_indices.front()), cfg);
      const auto second =
          ransac_plane(clusters.second, derive_seed(attempt_seed, 1 + clusters.second_indices.front()), cfg);

      const PlaneModel first_plate = svd_plane(first.inliers);
      const PlaneModel second_plate = svd_plane(second.inliers);

      const GateResult gate = perpendicularity_gate(first_plate, second_plate, ground, cfg.perpendicularity_tolerance);
      if (!gate.passed) {
        last_gate = gate;
        last_error.reset();
        continue;
      }

      const Line3 line = intersect_planes(first_plate, second_plate);
      if (std::abs(line.direction.z()) < 1e-9) {
        throw Error(ErrorCode::NearParallel, "plate intersection line is horizontal");
      }

      // Pose sample: the point of the line at the mean height of both plates.
      double z_sum = 0.0;
      for (const auto& p : first.inliers.points) z_sum += p.z();
      for (const auto& p : second.inliers.points) z_sum += p.z();
      const double z_mean = z_sum / static_cast<double>(first.inliers.size() + second.inliers.size());

      PoseSample sample;
      sample.position = line.point + line.direction * ((z_mean - line.point.z()) / line.direction.z());
      sample.first_plate = first_plate;
      sample.second_plate = second_plate;
      sample.retries = attempt;
      return sample;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::TooFewPoints) throw;
      last_error = e;
      last_gate.reset();
    }
  }

  if (last_error) throw *last_error;
  std::ostringstream msg;
  msg << "perpendicularity gate failed on all " << (cfg.max_retries_per_sample + 1) << " attempts";
  if (last_gate) {
    msg << " (last angles: plates " << last_gate->plates_angle << " deg, ground " << last_gate->first_to_ground
        << " / " << last_gate->second_to_ground << " deg)";
  }
  throw Error(ErrorCode::RetriesExhausted, msg.str());
}

TargetEstimate estimate_target(const PointCloud& tight, const PlaneModel& ground, const std::string& target_id,
                               Seed seed, const EstimationConfig& cfg) {
  cfg.validate();
  const auto count = static_cast<std::size_t>(cfg.sample_count);
  std::vector<PoseSample> samples(count);

  parallel_for(count, cfg.threads, [&](std::size_t i) {
    try {
      samples[i] = sample_target_pose(tight, ground, derive_seed(seed, i), cfg);
    } catch (const Error& e) {
      throw Error(ErrorCode::SampleFailure, "sample " + std::to_string(i) + " failed: " + e.what());
    }
  });

  TargetEstimate estimate;
  estimate.target_id = target_id;
  estimate.sample_positions.reserve(count);
  Point3 sum = Point3::Zero();
  for (const auto& s : samples) {
    estimate.sample_positions.push_back(s.position);
    sum += s.position;
    estimate.retries_used += s.retries;
  }
  estimate.position = sum / static_cast<double>(count);

  Eigen::Vector3d squares = Eigen::Vector3d::Zero();
  for (const auto& p : estimate.sample_positions) squares += (p - estimate.position).cwiseAbs2();
  estimate.sample_spread = (squares / static_cast<double>(count)).cwiseSqrt();
  estimate.plane_pair = {samples.back().first_plate, samples.back().second_plate};
  return estimate;
}

}  // namespace mapeval
