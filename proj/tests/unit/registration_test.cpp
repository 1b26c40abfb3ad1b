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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mapeval/error.hpp"
#include "mapeval/registration.hpp"
#include "mapeval/synthetic_scene.hpp"
#include "test_support.hpp"

namespace mapeval {
namespace {

double wrapped(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

double squared_objective(const std::vector<TargetPosePair>& pairs, const Eigen::Matrix2d& r, const Eigen::Vector2d& t) {
  double s = 0.0;
  for (const auto& p : pairs) s += (r * p.estimated.head<2>() + t - p.ground_truth.head<2>()).squaredNorm();
  return s;
}

double sum_of_distances(const std::vector<TargetPosePair>& pairs, const Transform2D& t) {
  double s = 0.0;
  for (const auto& p : pairs) s += (t(p.estimated.head<2>()) - p.ground_truth.head<2>()).norm();
  return s;
}

std::vector<TargetPosePair> random_pairs(std::mt19937_64& rng, int n, const Transform2D& est_from_gt, double noise) {
  std::uniform_real_distribution<double> coord(-20, 20);
  std::normal_distribution<double> g(0.0, noise > 0 ? noise : 1.0);
  std::vector<TargetPosePair> pairs;
  for (int i = 0; i < n; ++i) {
    TargetPosePair p;
    p.target_id = "t" + std::to_string(i);
    p.ground_truth = {coord(rng), coord(rng), coord(rng)};
    p.estimated = apply_transform(est_from_gt, p.ground_truth);
    if (noise > 0) p.estimated += Eigen::Vector3d(g(rng), g(rng), 0.0);
    pairs.push_back(p);
  }
  return pairs;
}

TEST(FitRigid2D, IdentityWhenEstimatesMatch) {
  std::mt19937_64 rng(1);
  const auto pairs = random_pairs(rng, 5, Transform2D::identity(), 0.0);
  for (auto mode : {RegistrationMode::LeastSquares, RegistrationMode::SumOfDistances}) {
    const auto r = fit_rigid_2d(pairs, mode);
    EXPECT_LT((r.transform.rotation - Eigen::Matrix2d::Identity()).norm(), 1e-12);
    EXPECT_LT(r.transform.translation.norm(), 1e-12);
    EXPECT_LT(r.objective, 1e-12);
  }
}

TEST(FitRigid2D, InvertsThirtyDegreeMotion) {
  std::mt19937_64 rng(2);
  const auto motion = Transform2D::from_angle(30.0 * std::numbers::pi / 180.0, {1, 2});
  const auto pairs = random_pairs(rng, 5, motion, 0.0);
  const auto r = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
  EXPECT_NEAR(r.transform.angle(), -30.0 * std::numbers::pi / 180.0, 1e-9);
  const auto inverse = motion.inverse();
  EXPECT_LT((r.transform.translation - inverse.translation).norm(), 1e-9);
  ASSERT_EQ(r.residuals.size(), 5u);
  for (double res : r.residuals) EXPECT_LT(res, 1e-9);
  EXPECT_EQ(r.iterations, 0);
}

TEST(FitRigid2D, ErrorCases) {
  std::vector<TargetPosePair> one(1);
  try {
    fit_rigid_2d(one, RegistrationMode::LeastSquares);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewPairs);
  }
  std::vector<TargetPosePair> same(3);
  for (int i = 0; i < 3; ++i) same[i].ground_truth = {static_cast<double>(i), 0, 0};
  try {
    fit_rigid_2d(same, RegistrationMode::LeastSquares);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateConfiguration);
  }
}

TEST(FitRigid2D, RoundTripOverRandomMotions) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> shift(-100, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto motion = Transform2D::from_angle(angle(rng), {shift(rng), shift(rng)});
    const auto pairs = random_pairs(rng, 5, motion, 0.0);
    const auto r = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
    const auto expected = motion.inverse();
    EXPECT_LT(std::abs(wrapped(r.transform.angle() - expected.angle())), 1e-9);
    EXPECT_LT((r.transform.translation - expected.translation).norm(), 1e-9);
  }
}

TEST(FitRigid2D, ObjectiveIsSumOfResiduals) {
  std::mt19937_64 rng(4);
  const auto pairs = random_pairs(rng, 7, Transform2D::from_angle(0.4, {3, -1}), 0.2);
  for (auto mode : {RegistrationMode::LeastSquares, RegistrationMode::SumOfDistances}) {
    const auto r = fit_rigid_2d(pairs, mode);
    ASSERT_EQ(r.residuals.size(), pairs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_NEAR(r.residuals[i], (r.transform(pairs[i].estimated.head<2>()) - pairs[i].ground_truth.head<2>()).norm(),
                  1e-12);
      sum += r.residuals[i];
    }
    EXPECT_NEAR(r.objective, sum, 1e-12);
  }
}

TEST(FitRigid2D, LeastSquaresBeatsNearbyCandidates) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int instance = 0; instance < 10; ++instance) {
    const auto pairs = random_pairs(rng, 3 + instance % 4, Transform2D::from_angle(g(rng), {g(rng), g(rng)}), 0.5);
    const auto r = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
    const double best = squared_objective(pairs, r.transform.rotation, r.transform.translation);
    for (int k = 0; k < 10000; ++k) {
      const double scale = std::pow(10.0, -(k % 6));
      const auto candidate =
          Transform2D::from_angle(r.transform.angle() + scale * g(rng), r.transform.translation + scale * Eigen::Vector2d(g(rng), g(rng)));
      EXPECT_LE(best, squared_objective(pairs, candidate.rotation, candidate.translation) + 1e-9);
    }
  }
}

TEST(FitRigid2D, SumOfDistancesNeverWorseThanLeastSquares) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> shift(-100, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto motion = Transform2D::from_angle(angle(rng), {shift(rng), shift(rng)});
    auto pairs = random_pairs(rng, 5, motion, trial % 2 == 0 ? 0.0 : 0.3);
    const auto ls = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
    const auto eq1 = fit_rigid_2d(pairs, RegistrationMode::SumOfDistances);
    EXPECT_LE(sum_of_distances(pairs, eq1.transform), sum_of_distances(pairs, ls.transform) + 1e-12);
    for (std::size_t k = 1; k < eq1.objective_history.size(); ++k) {
      EXPECT_LE(eq1.objective_history[k], eq1.objective_history[k - 1]);
    }
    EXPECT_LE(eq1.iterations, 100);
  }
}

TEST(FitRigid2D, SumOfDistancesDownweightsAnOutlier) {
  std::mt19937_64 rng(7);
  auto pairs = random_pairs(rng, 8, Transform2D::from_angle(0.2, {1, 1}), 0.0);
  pairs[3].estimated.x() += 5.0;
  const auto ls = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
  const auto eq1 = fit_rigid_2d(pairs, RegistrationMode::SumOfDistances);
  EXPECT_LT(sum_of_distances(pairs, eq1.transform), sum_of_distances(pairs, ls.transform));
  EXPECT_GT(eq1.iterations, 0);
}

TEST(FitRigid2D, EquivariantUnderPreMotion) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> shift(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pairs = random_pairs(rng, 5, Transform2D::from_angle(angle(rng), {shift(rng), shift(rng)}), 0.1);
    const auto motion = Transform2D::from_angle(angle(rng), {shift(rng), shift(rng)});
    auto moved = pairs;
    for (auto& p : moved) p.estimated = apply_transform(motion, p.estimated);
    const auto a = fit_rigid_2d(pairs, RegistrationMode::LeastSquares);
    const auto b = fit_rigid_2d(moved, RegistrationMode::LeastSquares);
    const auto expected = compose(a.transform, motion.inverse());
    EXPECT_LT((b.transform.rotation - expected.rotation).norm(), 1e-9);
    EXPECT_LT((b.transform.translation - expected.translation).norm(), 1e-9);
    for (std::size_t i = 0; i < pairs.size(); ++i) EXPECT_NEAR(a.residuals[i], b.residuals[i], 1e-9);
  }
}

TEST(FitRigid2D, ReflectedConfigurationStillGivesProperRotation) {
  std::mt19937_64 rng(9);
  auto pairs = random_pairs(rng, 6, Transform2D::identity(), 0.0);
  for (auto& p : pairs) p.estimated.y() = -p.estimated.y();
  for (auto mode : {RegistrationMode::LeastSquares, RegistrationMode::SumOfDistances}) {
    const auto r = fit_rigid_2d(pairs, mode);
    EXPECT_NEAR(r.transform.rotation.determinant(), 1.0, 1e-12);
    EXPECT_LT((r.transform.rotation.transpose() * r.transform.rotation - Eigen::Matrix2d::Identity()).norm(), 1e-12);
  }
}

TEST(FitRigid2D, NoisySceneMeanResidualWithinThreeCentimetres) {
  SceneSpec spec;
  spec.targets = ellipse_targets(5, 15.0, 10.0);
  std::mt19937_64 rng(10);
  std::normal_distribution<double> noise(0.0, 0.01);
  const auto map_from_gps = Transform2D::from_angle(1.1, {-40, 12});
  std::vector<TargetPosePair> pairs;
  for (const auto& t : spec.targets) {
    TargetPosePair p;
    p.target_id = t.id;
    p.ground_truth = {t.x, t.y, spec.plate_edge};
    p.estimated = apply_transform(map_from_gps, p.ground_truth) + Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
    pairs.push_back(p);
  }
  for (auto mode : {RegistrationMode::LeastSquares, RegistrationMode::SumOfDistances}) {
    const auto r = fit_rigid_2d(pairs, mode);
    EXPECT_LE(r.objective / 5.0, 0.03);
  }
}

}  // namespace
}  // namespace mapeval
