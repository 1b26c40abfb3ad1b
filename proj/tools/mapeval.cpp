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

// mapeval: evaluate a SLAM pointcloud map against GPS-surveyed LiDAR targets.
//
// Exit status: 0 success, 1 input or configuration error, 2 estimation or
// evaluation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapeval/config.hpp"
#include "mapeval/error.hpp"
#include "mapeval/pipeline.hpp"
#include "mapeval/pointcloud_io.hpp"
#include "mapeval/registration.hpp"
#include "mapeval/report.hpp"
#include "mapeval/synthetic_scene.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitEstimation = 2;

// Thrown for failures that map to exit status 2.
struct EstimationFailure {
  mapeval::Error error;
};

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<mapeval::Seed> seed;
  std::optional<std::string> registration_mode;
  std::optional<std::string> dim;
  std::optional<std::string> pre_cropped;
  std::optional<std::string> map;
  std::optional<std::string> gps;
  std::optional<unsigned> threads;
};

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "RNG seed (overrides config)");
  cmd->add_option("--threads", f.threads, "Worker threads for per-target sampling");
}

mapeval::RunConfig resolve_run_config(const CommonFlags& f) {
  mapeval::RunConfig cfg = f.config.empty() ? mapeval::RunConfig{} : mapeval::load_run_config(f.config);
  if (f.map) cfg.map_path = *f.map;
  if (f.gps) cfg.gps_path = *f.gps;
  if (f.pre_cropped) cfg.pre_cropped_dir = fs::path(*f.pre_cropped);
  if (f.seed) cfg.seed = *f.seed;
  if (f.registration_mode) cfg.registration_mode = mapeval::parse_registration_mode(*f.registration_mode);
  if (f.dim) cfg.dimension_mode = mapeval::parse_dimension_mode(*f.dim);
  if (f.threads) cfg.estimation.threads = *f.threads;
  return cfg;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::trunc);
  if (!file || !(file << text)) throw mapeval::Error(mapeval::ErrorCode::IoFailure, "cannot write " + out);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::trunc);
  if (!file || !(file << text)) throw mapeval::Error(mapeval::ErrorCode::IoFailure, "cannot write " + path.string());
}

int cmd_evaluate(const CommonFlags& f, const std::string& csv_prefix, const std::string& label) {
  const auto cfg = resolve_run_config(f);
  if (cfg.gps_path.empty()) throw mapeval::Error(mapeval::ErrorCode::InvalidConfig, "gps_path is required");

  const auto outcome = mapeval::run_evaluation(cfg);
  emit(mapeval::evaluation_report_json(outcome, cfg), f.out);
  if (!csv_prefix.empty() && outcome.report) {
    write_text(csv_prefix + "_relative.csv", mapeval::relative_table_csv(*outcome.report, label));
    write_text(csv_prefix + "_absolute.csv", mapeval::absolute_table_csv(*outcome.report, label));
  }

  for (const auto& failure : outcome.failures) {
    std::cerr << "target " << failure.target_id << " failed: " << failure.message << "\n";
  }
  if (outcome.evaluation_failure) std::cerr << "evaluation failed: " << outcome.evaluation_failure->message << "\n";
  return outcome.fully_succeeded() ? kExitOk : kExitEstimation;
}

int cmd_estimate_target(const CommonFlags& f, const std::string& cloud_path, std::string id) {
  const auto cfg = resolve_run_config(f);
  const auto loaded = mapeval::read_pcd(cloud_path);
  if (loaded.dropped_non_finite > 0) {
    std::cerr << "dropped " << loaded.dropped_non_finite << " non-finite points\n";
  }
  if (id.empty()) id = fs::path(cloud_path).stem().string();

  const auto ground = mapeval::default_ground_plane();
  try {
    const auto estimate = mapeval::estimate_target(loaded.cloud, ground, id, mapeval::target_seed(cfg.seed, id),
                                                   cfg.estimation);
    emit(mapeval::target_estimate_json(estimate, ground), f.out);
  } catch (const mapeval::Error& e) {
    if (e.code() == mapeval::ErrorCode::InvalidConfig) throw;
    throw EstimationFailure{e};
  }
  return kExitOk;
}

int cmd_crop(const CommonFlags& f, const std::string& out_dir) {
  const auto cfg = resolve_run_config(f);
  if (cfg.map_path.empty() || cfg.gps_path.empty()) {
    throw mapeval::Error(mapeval::ErrorCode::InvalidConfig, "crop needs map_path and gps_path");
  }
  const auto gps = mapeval::read_gps_poses(cfg.gps_path);
  const auto map = mapeval::read_pcd(cfg.map_path).cloud;
  fs::create_directories(out_dir);

  nlohmann::json summary = nlohmann::json::array();
  bool failed = false;
  for (const auto& target : gps) {
    nlohmann::json entry = {{"target_id", target.target_id}};
    try {
      const auto crop = mapeval::crop_target(map, target, cfg.crop,
                                             mapeval::derive_seed(mapeval::target_seed(cfg.seed, target.target_id), 0));
      const fs::path path = fs::path(out_dir) / (target.target_id + ".pcd");
      mapeval::write_pcd(crop.tight, path, mapeval::PcdEncoding::Binary);
      entry["loose_points"] = crop.loose_points;
      entry["tight_points"] = crop.tight.size();
      entry["ground_normal"] = {crop.ground.normal.x(), crop.ground.normal.y(), crop.ground.normal.z()};
      entry["ground_offset"] = crop.ground.offset;
      entry["path"] = path.string();
    } catch (const mapeval::Error& e) {
      if (e.code() == mapeval::ErrorCode::IoFailure) throw;
      entry["error"] = std::string(mapeval::to_string(e.code()));
      entry["message"] = e.what();
      failed = true;
    }
    summary.push_back(entry);
  }
  std::cout << summary.dump(2) << "\n";
  return failed ? kExitEstimation : kExitOk;
}

int cmd_register(const CommonFlags& f, const std::string& estimates_path) {
  const auto cfg = resolve_run_config(f);
  if (cfg.gps_path.empty()) throw mapeval::Error(mapeval::ErrorCode::InvalidConfig, "gps_path is required");
  const auto estimates = mapeval::read_gps_poses(estimates_path);
  const auto gps = mapeval::read_gps_poses(cfg.gps_path);
  const auto pairs = mapeval::pair_by_id(estimates, gps);
  try {
    const auto result = mapeval::fit_rigid_2d(pairs, cfg.registration_mode);
    emit(mapeval::registration_json(result, pairs, cfg.registration_mode), f.out);
  } catch (const mapeval::Error& e) {
    if (e.code() == mapeval::ErrorCode::TooFewPairs) throw;
    throw EstimationFailure{e};
  }
  return kExitOk;
}

int cmd_synth(const std::string& config, std::optional<mapeval::Seed> seed, const std::string& out_dir,
              const std::string& encoding) {
  mapeval::SceneSpec spec;
  if (config.empty()) {
    spec.targets = mapeval::ellipse_targets(5, 15.0, 10.0);
  } else {
    spec = mapeval::load_scene_spec(config);
  }
  if (seed) spec.seed = *seed;

  const auto scene = mapeval::generate_scene(spec);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  mapeval::write_pcd(scene.map, dir / "map.pcd",
                     encoding == "ascii" ? mapeval::PcdEncoding::Ascii : mapeval::PcdEncoding::Binary);
  mapeval::write_gps_poses(scene.truth, dir / "truth.csv");

  std::string labels = "index,label,target_id\n";
  for (std::size_t i = 0; i < scene.labels.size(); ++i) {
    const int t = scene.target_of_point[i];
    labels += std::to_string(i) + ',' + std::string(mapeval::to_string(scene.labels[i])) + ',' +
              (t >= 0 ? spec.targets[static_cast<std::size_t>(t)].id : std::string()) + '\n';
  }
  write_text(dir / "labels.csv", labels);
  std::cerr << "wrote " << scene.map.size() << " points, " << scene.truth.size() << " targets to " << out_dir
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative accuracy evaluation of LiDAR SLAM pointcloud maps using surveyed cross-plate targets"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string csv_prefix;
  std::string label = "run";
  std::string cloud_path;
  std::string target_id;
  std::string out_dir;
  std::string estimates_path;
  std::string encoding = "binary";
  const std::vector<std::string> reg_modes{"least-squares", "eq1"};
  const std::vector<std::string> dims{"2d", "3d"};

  auto* evaluate = app.add_subcommand("evaluate", "Crop, estimate every target, register and report errors");
  add_run_flags(evaluate, flags);
  evaluate->add_option("--map", flags.map, "Pointcloud map (PCD)");
  evaluate->add_option("--gps", flags.gps, "GPS target poses (CSV target_id,x,y,z)");
  evaluate->add_option("--pre-cropped", flags.pre_cropped, "Directory of <target_id>.pcd tight clouds");
  evaluate->add_option("--registration-mode", flags.registration_mode)->check(CLI::IsMember(reg_modes));
  evaluate->add_option("--dim", flags.dim)->check(CLI::IsMember(dims));
  evaluate->add_option("--out", flags.out, "Write the JSON report here instead of stdout");
  evaluate->add_option("--csv", csv_prefix, "Also write <prefix>_relative.csv and <prefix>_absolute.csv");
  evaluate->add_option("--label", label, "Row label for the CSV tables");

  auto* estimate = app.add_subcommand("estimate-target", "Estimate one target from a tight (pre-cropped) cloud");
  add_run_flags(estimate, flags);
  estimate->add_option("cloud", cloud_path, "Tight target cloud (PCD)")->required();
  estimate->add_option("--id", target_id, "Target id (default: file stem)");
  estimate->add_option("--out", flags.out, "Write JSON here instead of stdout");

  auto* crop = app.add_subcommand("crop", "Write per-target tight clouds (loose crop + ground removal)");
  add_run_flags(crop, flags);
  crop->add_option("--map", flags.map, "Pointcloud map (PCD)");
  crop->add_option("--gps", flags.gps, "GPS target poses (CSV)");
  crop->add_option("--out", out_dir, "Output directory")->required();

  auto* reg = app.add_subcommand("register", "Fit the planar rigid transform between two pose CSVs");
  reg->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  reg->add_option("--estimates", estimates_path, "Estimated poses (CSV target_id,x,y,z)")->required();
  reg->add_option("--gps", flags.gps, "GPS target poses (CSV)");
  reg->add_option("--registration-mode", flags.registration_mode)->check(CLI::IsMember(reg_modes));
  reg->add_option("--out", flags.out, "Write JSON here instead of stdout");

  std::string synth_config;
  std::optional<mapeval::Seed> synth_seed;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scene: map.pcd, truth.csv, labels.csv");
  synth->add_option("--config", synth_config, "Scene JSON")->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_seed, "Scene seed (overrides config)");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--encoding", encoding, "PCD encoding")->check(CLI::IsMember({"ascii", "binary"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*evaluate) return cmd_evaluate(flags, csv_prefix, label);
    if (*estimate) return cmd_estimate_target(flags, cloud_path, target_id);
    if (*crop) return cmd_crop(flags, out_dir);
    if (*reg) return cmd_register(flags, estimates_path);
    if (*synth) return cmd_synth(synth_config, synth_seed, out_dir, encoding);
  } catch (const EstimationFailure& f) {
    std::cerr << "error: " << f.error.what() << "\n";
    return kExitEstimation;
  } catch (const mapeval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
