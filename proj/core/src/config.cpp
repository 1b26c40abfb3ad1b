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

#include "mapeval/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mapeval/error.hpp"

namespace mapeval {
namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      // run
      "map_path", "gps_path", "pre_cropped_dir", "registration_mode", "dimension_mode", "threads",
      // crop
      "loose_radius", "ground_inlier_threshold", "ground_min_inlier_fraction", "above_ground_clearance",
      "ground_ransac_iterations", "ground_max_tilt_deg",
      // estimation
      "ransac_inlier_threshold", "ransac_iterations", "perpendicularity_tolerance", "sample_count",
      "max_retries_per_sample", "min_points_per_cluster", "kmeans_max_iterations", "kmeans_tolerance",
      // scene
      "targets", "plate_edge", "plate_point_density", "ground_extent", "ground_point_density", "noise_sigma",
      "outlier_fraction", "hole_fraction",
      // shared
      "seed"};
  return keys;
}

json parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known_keys().contains(key)) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
  }
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename T>
void read(const json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, std::string("key '") + key + "' must be a string");
    out = it->template get<std::string>();
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) throw Error(ErrorCode::InvalidConfig, std::string("key '") + key + "' must be a number");
    out = it->template get<T>();
  } else {
    if (std::is_unsigned_v<T> ? !it->is_number_unsigned() : !it->is_number_integer()) {
      throw Error(ErrorCode::InvalidConfig,
                  std::string("key '") + key + "' must be a" + (std::is_unsigned_v<T> ? " non-negative" : "n") +
                      " integer");
    }
    out = it->template get<T>();
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

RegistrationMode parse_registration_mode(const std::string& text) {
  if (text == "least-squares" || text == "least_squares") return RegistrationMode::LeastSquares;
  if (text == "eq1" || text == "eq1_sum_of_distances") return RegistrationMode::SumOfDistances;
  throw Error(ErrorCode::InvalidConfig, "registration_mode must be 'least-squares' or 'eq1', got '" + text + "'");
}

std::string to_string(RegistrationMode mode) {
  return mode == RegistrationMode::LeastSquares ? "least-squares" : "eq1";
}

DimensionMode parse_dimension_mode(const std::string& text) {
  if (text == "2d") return DimensionMode::Planar2D;
  if (text == "3d") return DimensionMode::Spatial3D;
  throw Error(ErrorCode::InvalidConfig, "dimension_mode must be '2d' or '3d', got '" + text + "'");
}

std::string to_string(DimensionMode mode) { return mode == DimensionMode::Planar2D ? "2d" : "3d"; }

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json doc = parse_document(json_text);
  RunConfig cfg;

  std::string text;
  if (doc.contains("map_path")) {
    read(doc, "map_path", text);
    cfg.map_path = resolve(base_dir, text);
  }
  if (doc.contains("gps_path")) {
    read(doc, "gps_path", text);
    cfg.gps_path = resolve(base_dir, text);
  }
  if (doc.contains("pre_cropped_dir")) {
    read(doc, "pre_cropped_dir", text);
    cfg.pre_cropped_dir = resolve(base_dir, text);
  }
  if (doc.contains("registration_mode")) {
    read(doc, "registration_mode", text);
    cfg.registration_mode = parse_registration_mode(text);
  }
  if (doc.contains("dimension_mode")) {
    read(doc, "dimension_mode", text);
    cfg.dimension_mode = parse_dimension_mode(text);
  }

  read(doc, "loose_radius", cfg.crop.loose_radius);
  read(doc, "ground_inlier_threshold", cfg.crop.ground_inlier_threshold);
  read(doc, "ground_min_inlier_fraction", cfg.crop.ground_min_inlier_fraction);
  read(doc, "above_ground_clearance", cfg.crop.above_ground_clearance);
  read(doc, "ground_ransac_iterations", cfg.crop.ground_ransac_iterations);
  read(doc, "ground_max_tilt_deg", cfg.crop.ground_max_tilt_deg);

  read(doc, "ransac_inlier_threshold", cfg.estimation.ransac_inlier_threshold);
  read(doc, "ransac_iterations", cfg.estimation.ransac_iterations);
  read(doc, "perpendicularity_tolerance", cfg.estimation.perpendicularity_tolerance);
  read(doc, "sample_count", cfg.estimation.sample_count);
  read(doc, "max_retries_per_sample", cfg.estimation.max_retries_per_sample);
  read(doc, "min_points_per_cluster", cfg.estimation.min_points_per_cluster);
  read(doc, "kmeans_max_iterations", cfg.estimation.kmeans_max_iterations);
  read(doc, "kmeans_tolerance", cfg.estimation.kmeans_tolerance);
  read(doc, "threads", cfg.estimation.threads);
  read(doc, "seed", cfg.seed);

  cfg.crop.validate();
  cfg.estimation.validate();
  return cfg;
}

SceneSpec parse_scene_spec(const std::string& json_text) {
  const json doc = parse_document(json_text);
  SceneSpec spec;
  read(doc, "plate_edge", spec.plate_edge);
  read(doc, "plate_point_density", spec.plate_point_density);
  read(doc, "ground_extent", spec.ground_extent);
  read(doc, "ground_point_density", spec.ground_point_density);
  read(doc, "noise_sigma", spec.noise_sigma);
  read(doc, "outlier_fraction", spec.outlier_fraction);
  read(doc, "hole_fraction", spec.hole_fraction);
  read(doc, "seed", spec.seed);

  if (const auto it = doc.find("targets"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::InvalidConfig, "key 'targets' must be an array");
    for (const auto& entry : *it) {
      if (!entry.is_object()) throw Error(ErrorCode::InvalidConfig, "key 'targets' entries must be objects");
      for (const auto& [key, _] : entry.items()) {
        if (key != "id" && key != "x" && key != "y" && key != "yaw") {
          throw Error(ErrorCode::InvalidConfig, "unknown key 'targets." + key + "'");
        }
      }
      if (!entry.contains("id") || !entry.contains("x") || !entry.contains("y")) {
        throw Error(ErrorCode::InvalidConfig, "key 'targets' entries need id, x and y");
      }
      SceneTarget t;
      read(entry, "id", t.id);
      read(entry, "x", t.x);
      read(entry, "y", t.y);
      read(entry, "yaw", t.yaw_deg);
      spec.targets.push_back(std::move(t));
    }
  } else {
    spec.targets = ellipse_targets(5, 15.0, 10.0);
  }
  spec.validate();
  return spec;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

SceneSpec load_scene_spec(const std::filesystem::path& path) { return parse_scene_spec(read_file(path)); }

}  // namespace mapeval
