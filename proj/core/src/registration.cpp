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

#include "mapeval/registration.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mapeval/error.hpp"

namespace mapeval {
namespace {

constexpr int kMaxIrlsIterations = 100;
constexpr double kIrlsStopDecrease = 1e-12;
constexpr double kMinResidual = 1e-9;

// Weighted 2D Procrustes: minimizes sum w_i ||R x_i + t - y_i||^2 over proper
// rotations.
Transform2D weighted_procrustes(const std::vector<Eigen::Vector2d>& src, const std::vector<Eigen::Vector2d>& dst,
                                const std::vector<double>& weight) {
  double total = 0.0;
  Eigen::Vector2d src_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d dst_mean = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    total += weight[i];
    src_mean += weight[i] * src[i];
    dst_mean += weight[i] * dst[i];
  }
  src_mean /= total;
  dst_mean /= total;

  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    cov += weight[i] * (src[i] - src_mean) * (dst[i] - dst_mean).transpose();
  }

  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2d& u = svd.matrixU();
  const Eigen::Matrix2d& v = svd.matrixV();
  Eigen::Matrix2d d = Eigen::Matrix2d::Identity();
  if ((v * u.transpose()).determinant() < 0.0) d(1, 1) = -1.0;

  Transform2D t;
  t.rotation = v * d * u.transpose();
  t.translation = dst_mean - t.rotation * src_mean;
  return t;
}

std::vector<double> residuals_of(const Transform2D& t, const std::vector<Eigen::Vector2d>& src,
                                 const std::vector<Eigen::Vector2d>& dst) {
  std::vector<double> r(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) r[i] = (t(src[i]) - dst[i]).norm();
  return r;
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

RegistrationResult fit_rigid_2d(const std::vector<TargetPosePair>& pairs, RegistrationMode mode) {
  if (pairs.size() < 2) {
    throw Error(ErrorCode::TooFewPairs, "planar registration needs >= 2 pairs, got " + std::to_string(pairs.size()));
  }

  std::vector<Eigen::Vector2d> src;
  std::vector<Eigen::Vector2d> dst;
  for (const auto& p : pairs) {
    src.push_back(p.estimated.head<2>());
    dst.push_back(p.ground_truth.head<2>());
  }

  double spread = 0.0;
  for (const auto& s : src) spread = std::max(spread, (s - src.front()).norm());
  if (!(spread > 1e-12)) {
    throw Error(ErrorCode::DegenerateConfiguration, "all estimated x,y positions coincide");
  }

  RegistrationResult result;
  result.transform = weighted_procrustes(src, dst, std::vector<double>(src.size(), 1.0));
  result.residuals = residuals_of(result.transform, src, dst);
  result.objective = sum_of(result.residuals);
  result.objective_history.push_back(result.objective);

  if (mode == RegistrationMode::SumOfDistances) {
    for (int iter = 0; iter < kMaxIrlsIterations; ++iter) {
      std::vector<double> weight(src.size());
      for (std::size_t i = 0; i < src.size(); ++i) weight[i] = 1.0 / std::max(result.residuals[i], kMinResidual);

      const Transform2D candidate = weighted_procrustes(src, dst, weight);
      auto residuals = residuals_of(candidate, src, dst);
      const double objective = sum_of(residuals);
      if (!(objective <= result.objective)) break;  // reject uphill steps

      const double decrease = result.objective - objective;
      result.transform = candidate;
      result.residuals = std::move(residuals);
      result.objective = objective;
      result.objective_history.push_back(objective);
      result.iterations = iter + 1;
      if (decrease < kIrlsStopDecrease) break;
    }
  }
  return result;
}

}  // namespace mapeval
