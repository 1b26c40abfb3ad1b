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

#include <vector>

#include "mapeval/geometry.hpp"

namespace mapeval {

enum class RegistrationMode {
  LeastSquares,       // closed-form Procrustes on squared distances
  SumOfDistances,     // IRLS on the unsquared objective
};

struct RegistrationResult {
  Transform2D transform;
  /// Planar distance ||R x_i + t - x̂_i|| per input pair, input order.
  std::vector<double> residuals;
  /// Sum of residuals (unsquared).
  double objective = 0.0;
  int iterations = 0;
  /// Objective after the closed-form start and after every accepted IRLS
  /// step. Non-increasing.
  std::vector<double> objective_history;
};

/// Planar rigid fit of estimated poses onto ground truth. Only x and y take
/// part; z is ignored.
RegistrationResult fit_rigid_2d(const std::vector<TargetPosePair>& pairs, RegistrationMode mode);

}  // namespace mapeval
