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

#include <string>
#include <vector>

#include "mapeval/config.hpp"
#include "mapeval/pipeline.hpp"

namespace mapeval {

/// JSON report with top-level keys relative_error, absolute_error, pairwise,
/// per_target, registration, failures and config_echo. Output is a pure
/// function of its inputs (keys sorted, shortest round-trip doubles).
std::string evaluation_report_json(const EvaluationOutcome& outcome, const RunConfig& cfg);

std::string target_estimate_json(const TargetEstimate& estimate, const PlaneModel& ground);

std::string registration_json(const RegistrationResult& result, const std::vector<TargetPosePair>& pairs,
                              RegistrationMode mode);

/// One-row pairwise table: `sequence,E_rel,sigma_rel,t1 & t2,...`.
std::string relative_table_csv(const EvaluationReport& report, const std::string& label);

/// One-row per-target table: `sequence,E_abs,sigma_abs,t1,...`.
std::string absolute_table_csv(const EvaluationReport& report, const std::string& label);

}  // namespace mapeval
