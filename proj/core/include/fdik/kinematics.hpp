// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>

#include "fdik/model.hpp"
#include "fdik/spatial.hpp"

namespace fdik {

/// 6xn geometric Jacobian of the chain tip: rows 1-3 linear, rows 4-6
/// angular, base frame, reference point at the tip origin. Column i of the
/// angular block equals the world-frame axis of joint i.
using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// World pose of every link frame, computed in one pass and shared by the
/// kinematics and dynamics paths.
struct ChainFrames {
  std::vector<Transform> link;           // link i frame (after joint i rotation)
  std::vector<Eigen::Vector3d> axis;     // joint i axis, world frame
  std::vector<Eigen::Vector3d> origin;   // joint i origin, world frame
  Transform tip;
};

/// Validates q against the chain (length, finiteness) and sweeps the frame
/// chain base to tip. All public kinematics entry points go through this.
ChainFrames compute_frames(const ChainModel& chain, const Eigen::VectorXd& q);

/// Tip pose in the base frame, composed as prod_i(origin_i * rot(axis_i, q_i)) * tip.
/// Pure and deterministic: identical inputs give bit-identical outputs.
Transform forward_kinematics(const ChainModel& chain, const Eigen::VectorXd& q);

/// Base-frame geometric Jacobian: column i = (z_i x (p_tip - p_i), z_i).
Jacobian geometric_jacobian(const ChainModel& chain, const Eigen::VectorXd& q);

/// Tip pose and Jacobian from a single frame sweep.
std::pair<Transform, Jacobian> fk_with_jacobian(const ChainModel& chain,
                                                const Eigen::VectorXd& q);

/// Jacobian evaluated from precomputed frames.
Jacobian jacobian_from_frames(const ChainFrames& frames);

}  // namespace fdik
