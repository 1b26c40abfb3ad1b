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

#include <filesystem>
#include <optional>
#include <string>

#include "mapeval/cropping.hpp"
#include "mapeval/metrics.hpp"
#include "mapeval/random.hpp"
#include "mapeval/registration.hpp"
#include "mapeval/synthetic_scene.hpp"
#include "mapeval/target_estimation.hpp"

namespace mapeval {

struct RunConfig {
  std::filesystem::path map_path;
  std::filesystem::path gps_path;
  /// Directory of `<target_id>.pcd` tight clouds; a file found there replaces
  /// cropping for that target and the ground falls back to z = 0.
  std::optional<std::filesystem::path> pre_cropped_dir;
  CropConfig crop;
  EstimationConfig estimation;
  RegistrationMode registration_mode = RegistrationMode::LeastSquares;
  DimensionMode dimension_mode = DimensionMode::Planar2D;
  Seed seed = 0;
};

RegistrationMode parse_registration_mode(const std::string& text);
std::string to_string(RegistrationMode mode);
DimensionMode parse_dimension_mode(const std::string& text);
std::string to_string(DimensionMode mode);

/// Reads the flat JSON config document. Relative paths resolve against the
/// file's directory. Unknown keys and type mismatches throw InvalidConfig
/// naming the key.
RunConfig load_run_config(const std::filesystem::path& path);
SceneSpec load_scene_spec(const std::filesystem::path& path);

/// Same as the loaders above, from an in-memory JSON text.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
SceneSpec parse_scene_spec(const std::string& json_text);

}  // namespace mapeval
