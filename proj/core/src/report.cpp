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

#include "mapeval/report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace mapeval {
namespace {

using nlohmann::json;

json vec(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }
json vec(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

json plane_json(const PlaneModel& p) {
  return {{"normal", vec(p.normal)}, {"offset", p.offset}, {"inlier_count", p.inlier_count}};
}

json registration_body(const RegistrationResult& r, const std::vector<TargetPosePair>& pairs, RegistrationMode mode) {
  json residuals = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    residuals.push_back({{"target_id", pairs[i].target_id}, {"residual", r.residuals[i]}});
  }
  const auto& rot = r.transform.rotation;
  return {{"mode", to_string(mode)},
          {"rotation", json::array({json::array({rot(0, 0), rot(0, 1)}), json::array({rot(1, 0), rot(1, 1)})})},
          {"angle_deg", r.transform.angle() * 180.0 / 3.14159265358979323846},
          {"translation", vec(r.transform.translation)},
          {"residuals", residuals},
          {"objective", r.objective},
          {"iterations", r.iterations}};
}

json config_echo(const RunConfig& cfg) {
  json echo = {
      {"map_path", cfg.map_path.string()},
      {"gps_path", cfg.gps_path.string()},
      {"pre_cropped_dir", cfg.pre_cropped_dir ? json(cfg.pre_cropped_dir->string()) : json(nullptr)},
      {"registration_mode", to_string(cfg.registration_mode)},
      {"dimension_mode", to_string(cfg.dimension_mode)},
      {"seed", cfg.seed},
      {"loose_radius", cfg.crop.loose_radius},
      {"ground_inlier_threshold", cfg.crop.ground_inlier_threshold},
      {"ground_min_inlier_fraction", cfg.crop.ground_min_inlier_fraction},
      {"above_ground_clearance", cfg.crop.above_ground_clearance},
      {"ground_ransac_iterations", cfg.crop.ground_ransac_iterations},
      {"ground_max_tilt_deg", cfg.crop.ground_max_tilt_deg},
      {"ransac_inlier_threshold", cfg.estimation.ransac_inlier_threshold},
      {"ransac_iterations", cfg.estimation.ransac_iterations},
      {"perpendicularity_tolerance", cfg.estimation.perpendicularity_tolerance},
      {"sample_count", cfg.estimation.sample_count},
      {"max_retries_per_sample", cfg.estimation.max_retries_per_sample},
      {"min_points_per_cluster", cfg.estimation.min_points_per_cluster},
      {"kmeans_max_iterations", cfg.estimation.kmeans_max_iterations},
      {"kmeans_tolerance", cfg.estimation.kmeans_tolerance},
  };
  // `threads` is deliberately absent: it never changes results.
  return echo;
}

std::string csv_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return ss.str();
}

}  // namespace

std::string evaluation_report_json(const EvaluationOutcome& outcome, const RunConfig& cfg) {
  json doc;
  doc["config_echo"] = config_echo(cfg);

  json failures = json::array();
  for (const auto& f : outcome.failures) {
    failures.push_back({{"target_id", f.target_id}, {"error", std::string(to_string(f.code))}, {"message", f.message}});
  }
  if (outcome.evaluation_failure) {
    const auto& f = *outcome.evaluation_failure;
    failures.push_back({{"target_id", nullptr}, {"error", std::string(to_string(f.code))}, {"message", f.message}});
  }
  doc["failures"] = failures;

  json per_target = json::array();
  for (const auto& run : outcome.targets) {
    const auto& e = run.estimate;
    json entry = {{"target_id", e.target_id},
                  {"estimated", vec(e.position)},
                  {"sample_spread", vec(e.sample_spread)},
                  {"samples", e.sample_positions.size()},
                  {"retries_used", e.retries_used},
                  {"ground_plane", plane_json(run.ground)},
                  {"pre_cropped", run.pre_cropped},
                  {"loose_points", run.loose_points},
                  {"tight_points", run.tight_points},
                  {"error", nullptr},
                  {"registered", nullptr},
                  {"ground_truth", nullptr}};
    if (outcome.report) {
      const auto& report = *outcome.report;
      for (const auto& te : report.absolute.breakdown) {
        if (te.target_id == e.target_id) entry["error"] = te.error;
      }
      for (const auto& p : report.pairs) {
        if (p.target_id == e.target_id) {
          entry["registered"] = vec(apply_transform(report.registration.transform, p.estimated));
          entry["ground_truth"] = vec(p.ground_truth);
        }
      }
    }
    per_target.push_back(std::move(entry));
  }
  doc["per_target"] = per_target;

  if (outcome.report) {
    const auto& report = *outcome.report;
    doc["relative_error"] = {{"mean", report.relative.summary.mean}, {"std", report.relative.summary.std}};
    doc["absolute_error"] = {{"mean", report.absolute.summary.mean}, {"std", report.absolute.summary.std}};
    json pairwise = json::array();
    for (const auto& p : report.relative.breakdown) {
      pairwise.push_back({{"id_a", p.id_a}, {"id_b", p.id_b}, {"error", p.error}});
    }
    doc["pairwise"] = pairwise;
    doc["registration"] = registration_body(report.registration, report.pairs, report.registration_mode);
  } else {
    doc["relative_error"] = nullptr;
    doc["absolute_error"] = nullptr;
    doc["pairwise"] = json::array();
    doc["registration"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string target_estimate_json(const TargetEstimate& estimate, const PlaneModel& ground) {
  json samples = json::array();
  for (const auto& p : estimate.sample_positions) samples.push_back(vec(p));
  const json doc = {{"target_id", estimate.target_id},
                    {"position", vec(estimate.position)},
                    {"sample_spread", vec(estimate.sample_spread)},
                    {"retries_used", estimate.retries_used},
                    {"sample_positions", samples},
                    {"plane_pair", json::array({plane_json(estimate.plane_pair.first),
                                                plane_json(estimate.plane_pair.second)})},
                    {"ground_plane", plane_json(ground)}};
  return doc.dump(2) + "\n";
}

std::string registration_json(const RegistrationResult& result, const std::vector<TargetPosePair>& pairs,
                              RegistrationMode mode) {
  return registration_body(result, pairs, mode).dump(2) + "\n";
}

std::string relative_table_csv(const EvaluationReport& report, const std::string& label) {
  std::ostringstream header;
  std::ostringstream row;
  header << "sequence,E_rel,sigma_rel";
  row << label << ',' << csv_number(report.relative.summary.mean) << ',' << csv_number(report.relative.summary.std);
  for (const auto& p : report.relative.breakdown) {
    header << ',' << p.id_a << " & " << p.id_b;
    row << ',' << csv_number(p.error);
  }
  return header.str() + "\n" + row.str() + "\n";
}

std::string absolute_table_csv(const EvaluationReport& report, const std::string& label) {
  std::ostringstream header;
  std::ostringstream row;
  header << "sequence,E_abs,sigma_abs";
  row << label << ',' << csv_number(report.absolute.summary.mean) << ',' << csv_number(report.absolute.summary.std);
  for (const auto& t : report.absolute.breakdown) {
    header << ',' << t.target_id;
    row << ',' << csv_number(t.error);
  }
  return header.str() + "\n" + row.str() + "\n";
}

}  // namespace mapeval
