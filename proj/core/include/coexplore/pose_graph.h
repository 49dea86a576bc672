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

#ifndef COEXPLORE_POSE_GRAPH_H_
#define COEXPLORE_POSE_GRAPH_H_

#include <Eigen/Core>
#include <array>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace coexplore {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

inline constexpr int kEdgeDimension = 6;

// 6-DOF pose; ground agents keep z, roll and pitch at zero.
struct Pose3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

// Relative pose of 'to' expressed in the frame of 'from' (planar rotation by
// yaw, remaining components as wrapped differences).
Pose3 Between(const Pose3& from, const Pose3& to);

// measured (-) predicted, as a 6-vector (x, y, z, roll, pitch, yaw).
Vector6 PoseDifference(const Pose3& measured, const Pose3& predicted);

double TranslationLength(const Pose3& delta);

struct GraphEdge {
  int from = 0;
  int to = 0;
  Pose3 measurement;
  Matrix6 omega = Matrix6::Identity();
};

class NotPositiveDefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoseGraph {
 public:
  int AddNode(const Pose3& pose);
  // Throws std::out_of_range for unknown endpoints and NotPositiveDefinite
  // for an omega that is not symmetric positive definite.
  void AddEdge(const GraphEdge& edge);

  const std::vector<Pose3>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

 private:
  std::vector<Pose3> nodes_;
  std::vector<GraphEdge> edges_;
};

// e_i(x) for one edge given candidate node poses.
Vector6 EdgeResidual(const GraphEdge& edge, std::span<const Pose3> poses);

// Sum over edges of e_i(x)^T * Omega_i * e_i(x). Throws std::invalid_argument
// when poses does not cover every node.
double Objective(const PoseGraph& graph, std::span<const Pose3> poses);

enum class DOptForm {
  kNormalized,  // exp(sum(log(lambda_k)) / n) = det^(1/n)
  kLiteral,     // exp(log(det)) / n = det / n
};

std::string_view ToString(DOptForm form);

// Scalar summary of an SPD 6x6 matrix from its eigenvalues, evaluated through
// a Cholesky log-determinant. Throws NotPositiveDefinite.
double EdgeDOptimality(const Matrix6& omega,
                       DOptForm form = DOptForm::kNormalized);

struct UncertaintyParams {
  std::array<double, 6> sigmas{0.25, 0.25, 0.25, 0.25, 0.25, 0.25};  // per m
  double epsilon = 1e-3;
  double d_cap = 10.0;
  double retain = 0.2;
  double lost_distance = 25.0;
  DOptForm form = DOptForm::kNormalized;
};

// Parametric stand-in for a visual SLAM back end. Each odometry step appends
// a node and an edge whose covariance grows with the distance travelled; the
// reported D-optimality summarizes the covariance accumulated since the last
// loop closure.
//
// Normalized form: min(d_cap, D(C^-1)), with d_cap when C is zero. Higher is
// better. Literal form: D_literal(C), which grows with uncertainty.
class SlamUncertainty {
 public:
  explicit SlamUncertainty(const UncertaintyParams& params,
                           const Pose3& start = {});

  // Appends a node and an edge for a motion 'delta' (in the frame of the
  // previous node). Requires a non-zero delta.
  const GraphEdge& Propagate(const Pose3& delta);

  // Scales the accumulated covariance by retain, resets the distance since
  // closure and clears the lost status. Throws std::out_of_range for an
  // unknown node and std::invalid_argument unless 0 <= retain < 1.
  void ApplyLoopClosure(int node_id, double retain);
  void ApplyLoopClosure(int node_id) { ApplyLoopClosure(node_id, params_.retain); }

  double reported_d_opti() const { return reported_; }
  bool lost() const { return lost_; }
  double distance_since_closure() const { return distance_since_closure_; }
  int closures() const { return closures_; }
  int last_node() const { return graph_.node_count() - 1; }
  const Matrix6& accumulated_covariance() const { return accumulated_; }
  const PoseGraph& graph() const { return graph_; }
  const UncertaintyParams& params() const { return params_; }

  // Edge information matrix for a translation of length d.
  static Matrix6 StepInformation(const UncertaintyParams& params, double d);

 private:
  void Recompute();

  UncertaintyParams params_;
  PoseGraph graph_;
  Matrix6 accumulated_ = Matrix6::Zero();
  double distance_since_closure_ = 0.0;
  double reported_ = 0.0;
  bool lost_ = false;
  int closures_ = 0;
};

}  // namespace coexplore

#endif  // COEXPLORE_POSE_GRAPH_H_
