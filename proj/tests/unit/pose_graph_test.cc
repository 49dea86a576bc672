/*
 * Copyright 2026 The coexplore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "coexplore/pose_graph.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "coexplore/geometry.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace coexplore {
namespace {

Matrix6 Diagonal(double a, double b, double c, double d, double e, double f) {
  Vector6 v;
  v << a, b, c, d, e, f;
  return v.asDiagonal();
}

std::vector<Pose3> RandomTrajectory(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<Pose3> poses(1);
  for (int i = 1; i < n; ++i) {
    Pose3 p = poses.back();
    p.x += step(rng);
    p.y += step(rng);
    p.yaw = NormalizeAngle(p.yaw + step(rng));
    poses.push_back(p);
  }
  return poses;
}

TEST(ObjectiveTest, ZeroAtTruthWithNoiselessEdges) {
  std::mt19937_64 rng(41);
  const std::vector<Pose3> truth = RandomTrajectory(rng, 30);
  PoseGraph graph;
  for (const Pose3& p : truth) graph.AddNode(p);
  for (int i = 0; i + 1 < 30; ++i) {
    graph.AddEdge({i, i + 1, Between(truth[i], truth[i + 1]),
                   oracle::RandomSpd(rng)});
  }
  graph.AddEdge({0, 29, Between(truth[0], truth[29]), oracle::RandomSpd(rng)});
  EXPECT_NEAR(Objective(graph, truth), 0.0, 1e-12);
}

TEST(ObjectiveTest, SingleEdgeUnitResidual) {
  PoseGraph graph;
  graph.AddNode({});
  graph.AddNode({});
  graph.AddEdge({0, 1, Pose3{1.0, 0, 0, 0, 0, 0}, Matrix6::Identity()});
  const std::vector<Pose3> poses{{}, {}};
  EXPECT_DOUBLE_EQ(Objective(graph, poses), 1.0);

  PoseGraph doubled;
  doubled.AddNode({});
  doubled.AddNode({});
  doubled.AddEdge({0, 1, Pose3{2.0, 0, 0, 0, 0, 0}, Matrix6::Identity()});
  EXPECT_DOUBLE_EQ(Objective(doubled, poses), 4.0);
}

TEST(ObjectiveTest, QuadraticScalingOfResiduals) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<Pose3> truth = RandomTrajectory(rng, 12);
    PoseGraph once;
    PoseGraph twice;
    for (const Pose3& p : truth) {
      once.AddNode(p);
      twice.AddNode(p);
    }
    for (int i = 0; i + 1 < 12; ++i) {
      const Pose3 exact = Between(truth[i], truth[i + 1]);
      const double n[6] = {noise(rng), noise(rng), noise(rng),
                           noise(rng), noise(rng), noise(rng)};
      auto perturbed = [&](double k) {
        return Pose3{exact.x + k * n[0],     exact.y + k * n[1],
                     exact.z + k * n[2],     exact.roll + k * n[3],
                     exact.pitch + k * n[4], exact.yaw + k * n[5]};
      };
      const Matrix6 omega = oracle::RandomSpd(rng);
      once.AddEdge({i, i + 1, perturbed(1.0), omega});
      twice.AddEdge({i, i + 1, perturbed(2.0), omega});
    }
    const double f1 = Objective(once, truth);
    const double f2 = Objective(twice, truth);
    EXPECT_GT(f1, 0.0);
    EXPECT_NEAR(f2 / f1, 4.0, 1e-12);
  }
}

TEST(ObjectiveTest, ResidualsMatchAnIndependentQuadraticForm) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<Pose3> poses = RandomTrajectory(rng, 6);
  PoseGraph graph;
  for (const Pose3& p : poses) graph.AddNode(p);
  double expected = 0.0;
  for (int i = 0; i + 1 < 6; ++i) {
    const Pose3 m{u(rng), u(rng), 0.0, 0.0, 0.0, 0.3 * u(rng)};
    const Matrix6 omega = oracle::RandomSpd(rng);
    graph.AddEdge({i, i + 1, m, omega});
    // Predicted relative pose and residual written out for the planar case.
    const double c = std::cos(poses[i].yaw);
    const double s = std::sin(poses[i].yaw);
    const double px = c * (poses[i + 1].x - poses[i].x) +
                      s * (poses[i + 1].y - poses[i].y);
    const double py = -s * (poses[i + 1].x - poses[i].x) +
                      c * (poses[i + 1].y - poses[i].y);
    const double pyaw = NormalizeAngle(poses[i + 1].yaw - poses[i].yaw);
    const double ec = std::cos(pyaw);
    const double es = std::sin(pyaw);
    Vector6 e;
    e << ec * (m.x - px) + es * (m.y - py), -es * (m.x - px) + ec * (m.y - py),
        0.0, 0.0, 0.0, NormalizeAngle(m.yaw - pyaw);
    expected += e.dot(omega * e);
  }
  EXPECT_NEAR(Objective(graph, poses), expected, 1e-9 * (1.0 + expected));
}

TEST(ObjectiveTest, NonNegativeOnRandomGraphs) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Pose3> a = RandomTrajectory(rng, 8);
    const std::vector<Pose3> b = RandomTrajectory(rng, 8);
    PoseGraph graph;
    for (const Pose3& p : a) graph.AddNode(p);
    for (int i = 0; i + 1 < 8; ++i) {
      graph.AddEdge({i, i + 1, Between(b[i], b[i + 1]), oracle::RandomSpd(rng)});
    }
    EXPECT_GE(Objective(graph, a), 0.0);
  }
}

TEST(ObjectiveTest, MissingPosesThrow) {
  PoseGraph graph;
  graph.AddNode({});
  graph.AddNode({});
  graph.AddEdge({0, 1, Pose3{}, Matrix6::Identity()});
  const std::vector<Pose3> one(1);
  EXPECT_THROW(Objective(graph, one), std::invalid_argument);
}

TEST(PoseGraphTest, RejectsBadEdges) {
  PoseGraph graph;
  graph.AddNode({});
  graph.AddNode({});
  EXPECT_THROW(graph.AddEdge({0, 2, Pose3{}, Matrix6::Identity()}),
               std::out_of_range);
  EXPECT_THROW(graph.AddEdge({0, 1, Pose3{}, -Matrix6::Identity()}),
               NotPositiveDefinite);
  Matrix6 skew = Matrix6::Identity();
  skew(0, 1) = 0.5;
  EXPECT_THROW(graph.AddEdge({0, 1, Pose3{}, skew}), NotPositiveDefinite);
}

TEST(EdgeDOptimalityTest, Identity) {
  EXPECT_NEAR(EdgeDOptimality(Matrix6::Identity()), 1.0, 1e-12);
}

TEST(EdgeDOptimalityTest, DiagonalAgainstEigensolver) {
  const Matrix6 omega = Diagonal(1, 2, 3, 4, 5, 6);
  const double expected = oracle::GeometricMeanEigenvalue(omega);
  EXPECT_NEAR(expected, std::pow(720.0, 1.0 / 6.0), 1e-12);
  EXPECT_NEAR(EdgeDOptimality(omega), expected, 1e-9);
  EXPECT_NEAR(EdgeDOptimality(omega), 2.9938, 1e-4);
}

TEST(EdgeDOptimalityTest, RotationInvariance) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix6 omega = oracle::RandomSpd(rng);
    const Matrix6 q = oracle::RandomRotation(rng);
    const Matrix6 rotated = q * omega * q.transpose();
    const Matrix6 symmetric = 0.5 * (rotated + rotated.transpose());
    EXPECT_NEAR(EdgeDOptimality(symmetric), EdgeDOptimality(omega), 1e-8);
    EXPECT_NEAR(EdgeDOptimality(omega), oracle::GeometricMeanEigenvalue(omega),
                1e-9 * EdgeDOptimality(omega));
  }
}

TEST(EdgeDOptimalityTest, Homogeneity) {
  std::mt19937_64 rng(61);
  for (double c : {0.01, 0.5, 3.0, 250.0}) {
    EXPECT_NEAR(EdgeDOptimality(c * Matrix6::Identity()), c, 1e-12 * c);
    const Matrix6 omega = oracle::RandomSpd(rng);
    EXPECT_NEAR(EdgeDOptimality(c * omega), c * EdgeDOptimality(omega),
                1e-10 * c * EdgeDOptimality(omega));
  }
}

TEST(EdgeDOptimalityTest, LiteralFormIsDeterminantOverSix) {
  EXPECT_NEAR(EdgeDOptimality(Diagonal(1, 2, 3, 4, 5, 6), DOptForm::kLiteral),
              120.0, 1e-9);
}

TEST(EdgeDOptimalityTest, RejectsNonPositiveDefinite) {
  EXPECT_THROW(EdgeDOptimality(Diagonal(1, 1, 1, 1, 1, 0)),
               NotPositiveDefinite);
  EXPECT_THROW(EdgeDOptimality(Diagonal(1, 1, -1, 1, 1, 1)),
               NotPositiveDefinite);
}

UncertaintyParams Isotropic(double sigma) {
  UncertaintyParams params;
  params.sigmas.fill(sigma);
  params.d_cap = 1e9;
  params.lost_distance = 1e9;
  return params;
}

const Pose3 kForward{0.5, 0.0, 0.0, 0.0, 0.0, 0.0};

TEST(SlamUncertaintyTest, FreshClosureReportsTheCeiling) {
  UncertaintyParams params;
  SlamUncertainty slam(params);
  EXPECT_DOUBLE_EQ(slam.reported_d_opti(), params.d_cap);
  slam.Propagate(kForward);
  slam.ApplyLoopClosure(0, 0.0);
  EXPECT_DOUBLE_EQ(slam.reported_d_opti(), params.d_cap);
}

TEST(SlamUncertaintyTest, DoublingDistanceHalvesDOptimality) {
  SlamUncertainty slam(Isotropic(0.3));
  for (int i = 0; i < 10; ++i) slam.Propagate(kForward);
  const double d10 = slam.reported_d_opti();
  for (int i = 0; i < 10; ++i) slam.Propagate(kForward);
  EXPECT_NEAR(slam.reported_d_opti(), d10 / 2.0, 1e-12 * d10);
  // Closed form: 1 / (n * (sigma * d + epsilon)^2).
  EXPECT_NEAR(d10, 1.0 / (10 * std::pow(0.3 * 0.5 + 1e-3, 2)), 1e-9 * d10);
}

TEST(SlamUncertaintyTest, NoiselessRobotStaysAtTheCeiling) {
  UncertaintyParams params;
  params.sigmas.fill(0.0);
  params.lost_distance = 1e9;
  SlamUncertainty slam(params);
  for (int i = 0; i < 1000; ++i) {
    slam.Propagate(kForward);
    ASSERT_DOUBLE_EQ(slam.reported_d_opti(), params.d_cap);
  }
}

TEST(SlamUncertaintyTest, ClosureRetention) {
  SlamUncertainty slam(Isotropic(0.3));
  for (int i = 0; i < 10; ++i) slam.Propagate(kForward);
  const Matrix6 before = slam.accumulated_covariance();
  const double d_before = slam.reported_d_opti();
  slam.ApplyLoopClosure(3, 0.2);
  EXPECT_TRUE(slam.accumulated_covariance().isApprox(0.2 * before, 1e-15));
  EXPECT_NEAR(slam.reported_d_opti(), 5.0 * d_before, 1e-9 * d_before);
  slam.ApplyLoopClosure(3, 0.2);
  EXPECT_TRUE(slam.accumulated_covariance().isApprox(0.04 * before, 1e-15));
  EXPECT_EQ(slam.closures(), 2);
  EXPECT_DOUBLE_EQ(slam.distance_since_closure(), 0.0);
}

TEST(SlamUncertaintyTest, NonIncreasingBetweenClosures) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> len(0.01, 0.6);
  UncertaintyParams params;
  params.lost_distance = 1e9;
  SlamUncertainty slam(params);
  double previous = slam.reported_d_opti();
  for (int i = 0; i < 300; ++i) {
    slam.Propagate({len(rng), 0.0, 0.0, 0.0, 0.0, 0.1});
    ASSERT_LE(slam.reported_d_opti(), previous);
    previous = slam.reported_d_opti();
  }
}

TEST(SlamUncertaintyTest, LostAfterTravelAndRestoredByClosure) {
  UncertaintyParams params;
  params.lost_distance = 2.0;
  SlamUncertainty slam(params);
  for (int i = 0; i < 4; ++i) slam.Propagate(kForward);
  EXPECT_FALSE(slam.lost());
  slam.Propagate(kForward);
  EXPECT_TRUE(slam.lost());
  slam.ApplyLoopClosure(0);
  EXPECT_FALSE(slam.lost());
}

TEST(SlamUncertaintyTest, GraphGrowsAlongTheChain) {
  SlamUncertainty slam(UncertaintyParams{});
  for (int i = 0; i < 5; ++i) {
    const GraphEdge& edge = slam.Propagate(kForward);
    EXPECT_EQ(edge.from, i);
    EXPECT_EQ(edge.to, i + 1);
    EXPECT_TRUE(edge.omega.isApprox(
        SlamUncertainty::StepInformation(slam.params(), 0.5)));
  }
  EXPECT_EQ(slam.graph().node_count(), 6);
  EXPECT_NEAR(slam.graph().nodes().back().x, 2.5, 1e-12);
  EXPECT_NEAR(Objective(slam.graph(), slam.graph().nodes()), 0.0, 1e-12);
}

TEST(SlamUncertaintyTest, StepInformationFormula) {
  UncertaintyParams params;
  params.sigmas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const Matrix6 omega = SlamUncertainty::StepInformation(params, 2.0);
  for (int k = 0; k < 6; ++k) {
    const double sd = params.sigmas[k] * 2.0 + params.epsilon;
    EXPECT_NEAR(omega(k, k), 1.0 / (sd * sd), 1e-9);
  }
}

TEST(SlamUncertaintyTest, LiteralFormGrowsWithUncertainty) {
  UncertaintyParams params = Isotropic(0.3);
  params.form = DOptForm::kLiteral;
  SlamUncertainty slam(params);
  slam.Propagate(kForward);
  const double first = slam.reported_d_opti();
  slam.Propagate(kForward);
  EXPECT_GT(slam.reported_d_opti(), first);
}

TEST(SlamUncertaintyTest, InvalidInputs) {
  SlamUncertainty slam(UncertaintyParams{});
  EXPECT_THROW(slam.Propagate(Pose3{}), std::invalid_argument);
  EXPECT_THROW(slam.ApplyLoopClosure(5), std::out_of_range);
  EXPECT_THROW(slam.ApplyLoopClosure(0, 1.0), std::invalid_argument);
  UncertaintyParams bad;
  bad.epsilon = 0.0;
  EXPECT_THROW(SlamUncertainty{bad}, std::invalid_argument);
}

}  // namespace
}  // namespace coexplore
