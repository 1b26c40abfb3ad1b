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

#include "mapeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mapeval/error.hpp"

namespace mapeval {
namespace {

double distance(const Point3& a, const Point3& b, DimensionMode dim) {
  return dim == DimensionMode::Planar2D ? (a.head<2>() - b.head<2>()).norm() : (a - b).norm();
}

std::vector<TargetPosePair> sorted_by_id(std::vector<TargetPosePair> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const TargetPosePair& a, const TargetPosePair& b) { return a.target_id < b.target_id; });
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].target_id == pairs[i - 1].target_id) {
      throw Error(ErrorCode::DuplicateTargetId, "duplicate target_id '" + pairs[i].target_id + "'");
    }
  }
  return pairs;
}

}  // namespace

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double squares = 0.0;
  for (double v : values) squares += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(squares / n);
  return s;
}

std::vector<PairwiseError> pairwise_distance_errors(const std::vector<TargetPosePair>& pairs, DimensionMode dim) {
  if (pairs.size() < 2) {
    throw Error(ErrorCode::TooFewTargets, "relative error needs >= 2 targets, got " + std::to_string(pairs.size()));
  }
  const auto sorted = sorted_by_id(pairs);
  std::vector<PairwiseError> out;
  out.reserve(sorted.size() * (sorted.size() - 1) / 2);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const double estimated = distance(sorted[i].estimated, sorted[j].estimated, dim);
      const double truth = distance(sorted[i].ground_truth, sorted[j].ground_truth, dim);
      out.push_back({sorted[i].target_id, sorted[j].target_id, std::abs(estimated - truth)});
    }
  }
  return out;
}

RelativeError relative_error(const std::vector<TargetPosePair>& pairs, DimensionMode dim) {
  RelativeError rel;
  rel.breakdown = pairwise_distance_errors(pairs, dim);
  std::vector<double> values;
  for (const auto& e : rel.breakdown) values.push_back(e.error);
  rel.summary = summarize(values);
  return rel;
}

AbsoluteError absolute_error(const std::vector<TargetPosePair>& pairs, const Transform2D& transform,
                             DimensionMode dim) {
  if (pairs.empty()) throw Error(ErrorCode::TooFewTargets, "absolute error needs >= 1 target");
  AbsoluteError abs;
  std::vector<double> values;
  for (const auto& p : sorted_by_id(pairs)) {
    const double e = distance(apply_transform(transform, p.estimated), p.ground_truth, dim);
    abs.breakdown.push_back({p.target_id, e});
    values.push_back(e);
  }
  abs.summary = summarize(values);
  return abs;
}

std::vector<TargetPosePair> pair_by_id(const std::vector<GpsTargetPose>& estimated,
                                       const std::vector<GpsTargetPose>& ground_truth) {
  std::map<std::string, Point3> est;
  for (const auto& e : estimated) {
    if (!est.emplace(e.target_id, e.position).second) {
      throw Error(ErrorCode::DuplicateTargetId, "duplicate estimate for '" + e.target_id + "'");
    }
  }
  std::map<std::string, Point3> gps;
  for (const auto& g : ground_truth) {
    if (!gps.emplace(g.target_id, g.position).second) {
      throw Error(ErrorCode::DuplicateTargetId, "duplicate ground truth for '" + g.target_id + "'");
    }
  }

  std::vector<std::string> mismatch;
  for (const auto& [id, _] : est) {
    if (!gps.contains(id)) mismatch.push_back(id);
  }
  for (const auto& [id, _] : gps) {
    if (!est.contains(id)) mismatch.push_back(id);
  }
  if (!mismatch.empty()) {
    std::sort(mismatch.begin(), mismatch.end());
    std::string list;
    for (const auto& id : mismatch) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::IdMismatch, "ids present on only one side: " + list);
  }

  std::vector<TargetPosePair> pairs;
  for (const auto& [id, position] : est) pairs.push_back({id, position, gps.at(id)});
  return pairs;
}

EvaluationReport evaluate(const std::vector<TargetEstimate>& estimates, const std::vector<GpsTargetPose>& gps,
                          RegistrationMode mode, DimensionMode dim) {
  std::vector<GpsTargetPose> estimated;
  for (const auto& e : estimates) estimated.push_back({e.target_id, e.position});
  auto pairs = pair_by_id(estimated, gps);
  if (pairs.size() < 2) {
    throw Error(ErrorCode::TooFewTargets, "evaluation needs >= 2 targets, got " + std::to_string(pairs.size()));
  }

  EvaluationReport report;
  report.pairs = std::move(pairs);
  report.registration_mode = mode;
  report.dimension_mode = dim;
  report.registration = fit_rigid_2d(report.pairs, mode);
  report.relative = relative_error(report.pairs, dim);
  report.absolute = absolute_error(report.pairs, report.registration.transform, dim);
  return report;
}

}  // namespace mapeval
