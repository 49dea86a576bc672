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

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "coexplore/geometry.h"

namespace coexplore {
namespace {

constexpr double kSymmetryTolerance = 1e-9;

Pose3 Compose(const Pose3& a, const Pose3& delta) {
  const double c = std::cos(a.yaw);
  const double s = std::sin(a.yaw);
  return {a.x + c * delta.x - s * delta.y,
          a.y + s * delta.x + c * delta.y,
          a.z + delta.z,
          NormalizeAngle(a.roll + delta.roll),
          NormalizeAngle(a.pitch + delta.pitch),
          NormalizeAngle(a.yaw + delta.yaw)};
}

void CheckSymmetricPositiveDefinite(const Matrix6& m) {
  if (!m.allFinite()) throw NotPositiveDefinite("matrix has non-finite entries");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw NotPositiveDefinite("matrix is not symmetric");
  }
}

}  // namespace

Pose3 Between(const Pose3& from, const Pose3& to) {
  const double c = std::cos(from.yaw);
  const double s = std::sin(from.yaw);
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  return {c * dx + s * dy,
          -s * dx + c * dy,
          to.z - from.z,
          NormalizeAngle(to.roll - from.roll),
          NormalizeAngle(to.pitch - from.pitch),
          NormalizeAngle(to.yaw - from.yaw)};
}

Vector6 PoseDifference(const Pose3& measured, const Pose3& predicted) {
  const Pose3 d = Between(predicted, measured);
  Vector6 e;
  e << d.x, d.y, d.z, d.roll, d.pitch, d.yaw;
  return e;
}

double TranslationLength(const Pose3& delta) {
  return std::sqrt(delta.x * delta.x + delta.y * delta.y + delta.z * delta.z);
}

int PoseGraph::AddNode(const Pose3& pose) {
  nodes_.push_back(pose);
  return static_cast<int>(nodes_.size()) - 1;
}

void PoseGraph::AddEdge(const GraphEdge& edge) {
  if (edge.from < 0 || edge.to < 0 || edge.from >= node_count() ||
      edge.to >= node_count()) {
    throw std::out_of_range("edge references a missing node");
  }
  CheckSymmetricPositiveDefinite(edge.omega);
  if (edge.omega.llt().info() != Eigen::Success) {
    throw NotPositiveDefinite("edge omega is not positive definite");
  }
  edges_.push_back(edge);
}

Vector6 EdgeResidual(const GraphEdge& edge, std::span<const Pose3> poses) {
  const Pose3 predicted = Between(poses[edge.from], poses[edge.to]);
  return PoseDifference(edge.measurement, predicted);
}

double Objective(const PoseGraph& graph, std::span<const Pose3> poses) {
  if (static_cast<int>(poses.size()) < graph.node_count()) {
    throw std::invalid_argument("objective needs a pose for every node");
  }
  double total = 0.0;
  for (const GraphEdge& edge : graph.edges()) {
    const Vector6 e = EdgeResidual(edge, poses);
    total += e.dot(edge.omega * e);
  }
  return total;
}

std::string_view ToString(DOptForm form) {
  return form == DOptForm::kLiteral ? "literal" : "normalized";
}

double EdgeDOptimality(const Matrix6& omega, DOptForm form) {
  CheckSymmetricPositiveDefinite(omega);
  const Eigen::LLT<Matrix6> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("D-optimality needs a positive definite matrix");
  }
  // log det = 2 * sum(log(L_kk)) = sum(log(lambda_k)).
  const Vector6 diag = llt.matrixLLT().diagonal();
  double log_det = 0.0;
  for (int k = 0; k < kEdgeDimension; ++k) {
    if (!(diag(k) > 0.0)) {
      throw NotPositiveDefinite("non-positive Cholesky pivot");
    }
    log_det += 2.0 * std::log(diag(k));
  }
  if (form == DOptForm::kLiteral) return std::exp(log_det) / kEdgeDimension;
  return std::exp(log_det / kEdgeDimension);
}

SlamUncertainty::SlamUncertainty(const UncertaintyParams& params,
                                 const Pose3& start)
    : params_(params) {
  if (!(params.epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  for (double s : params.sigmas) {
    if (s < 0.0) throw std::invalid_argument("sigmas must be >= 0");
  }
  if (!(params.retain >= 0.0 && params.retain < 1.0)) {
    throw std::invalid_argument("retain must lie in [0, 1)");
  }
  graph_.AddNode(start);
  Recompute();
}

Matrix6 SlamUncertainty::StepInformation(const UncertaintyParams& params,
                                         double d) {
  Matrix6 omega = Matrix6::Zero();
  for (int k = 0; k < kEdgeDimension; ++k) {
    const double stddev = params.sigmas[k] * d + params.epsilon;
    omega(k, k) = 1.0 / (stddev * stddev);
  }
  return omega;
}

const GraphEdge& SlamUncertainty::Propagate(const Pose3& delta) {
  const double d = TranslationLength(delta);
  if (d == 0.0 && delta.roll == 0.0 && delta.pitch == 0.0 && delta.yaw == 0.0) {
    throw std::invalid_argument("propagate needs a non-zero motion");
  }
  const int from = last_node();
  const int to = graph_.AddNode(Compose(graph_.nodes()[from], delta));
  GraphEdge edge{from, to, delta, StepInformation(params_, d)};
  graph_.AddEdge(edge);
  // Diagonal information, so the covariance is the elementwise reciprocal.
  accumulated_.diagonal() += edge.omega.diagonal().cwiseInverse();
  distance_since_closure_ += d;
  if (distance_since_closure_ > params_.lost_distance) lost_ = true;
  Recompute();
  return graph_.edges().back();
}

void SlamUncertainty::ApplyLoopClosure(int node_id, double retain) {
  if (node_id < 0 || node_id >= graph_.node_count()) {
    throw std::out_of_range("loop closure at unknown node " +
                            std::to_string(node_id));
  }
  if (!(retain >= 0.0 && retain < 1.0)) {
    throw std::invalid_argument("retain must lie in [0, 1)");
  }
  accumulated_ *= retain;
  distance_since_closure_ = 0.0;
  lost_ = false;
  ++closures_;
  Recompute();
}

void SlamUncertainty::Recompute() {
  const bool fresh = accumulated_.isZero(0.0);
  if (params_.form == DOptForm::kLiteral) {
    reported_ = fresh ? 0.0 : EdgeDOptimality(accumulated_, DOptForm::kLiteral);
    return;
  }
  if (fresh) {
    reported_ = params_.d_cap;
    return;
  }
  const Matrix6 information = accumulated_.llt().solve(Matrix6::Identity());
  const Matrix6 symmetric = 0.5 * (information + information.transpose());
  reported_ = std::min(params_.d_cap,
                       EdgeDOptimality(symmetric, DOptForm::kNormalized));
}

}  // namespace coexplore
