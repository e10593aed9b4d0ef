// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>

#include "fdik/kinematics.hpp"
#include "fdik/model.hpp"

namespace fdik {

/// Joint-space inertia matrix H(q) via the Composite Rigid Body Algorithm:
/// composite spatial inertias are accumulated tip to base and projected onto
/// the joint axes. Symmetric by construction (both triangles filled).
Eigen::MatrixXd joint_space_inertia(const ChainModel& chain, const Eigen::VectorXd& q);

/// Same, reusing an existing frame sweep.
Eigen::MatrixXd joint_space_inertia(const ChainModel& chain, const ChainFrames& frames);

/// Solves H x = v through a symmetric positive-definite factorization with
/// one refinement pass; H is never inverted explicitly. Throws ModelError if
/// the factorization fails, which signals a degenerate model rather than a
/// recoverable runtime state.
Eigen::VectorXd apply_inverse_inertia(const Eigen::MatrixXd& h, const Eigen::VectorXd& v);

/// Task-space mobility M^-1 = J H^-1 J^T: Cartesian acceleration per unit
/// virtual end-effector force. Computed with column-wise SPD solves and
/// symmetrized by averaging; asymmetry beyond 1e-9 raises ModelError.
Matrix6d task_space_mobility(const ChainModel& chain, const Eigen::VectorXd& q);

/// Same, from a precomputed inertia matrix and Jacobian.
Matrix6d task_space_mobility(const Eigen::MatrixXd& h, const Jacobian& jac);

}  // namespace fdik
