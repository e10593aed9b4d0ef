// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>

namespace fdik {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// Rigid transform: orthonormal rotation (det +1) plus translation in meters.
struct Transform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Transform identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
};

/// Cartesian pose error: translational components in meters followed by the
/// rotational components of the relative rotation's Rodrigues vector (rad).
struct CartesianError {
  Vector6d eps = Vector6d::Zero();

  Eigen::Vector3d translational() const { return eps.head<3>(); }
  Eigen::Vector3d rotational() const { return eps.tail<3>(); }
};

/// Rigid composition a*b. Re-orthonormalizes the rotation only if the
/// accumulated drift exceeds 1e-10.
Transform compose(const Transform& a, const Transform& b);

/// Inverse transform: compose(a, invert(a)) is the identity.
Transform invert(const Transform& a);

/// Checks R^T R = I and det(R) = +1 within tol.
bool is_orthonormal(const Eigen::Matrix3d& r, double tol = 1e-10);

/// Nearest rotation matrix in the Frobenius sense (polar factor).
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& r);

/// Axis-angle (Rodrigues) vector of a rotation, angle in [0, pi].
/// Angles below 1e-9 map to the zero vector; angles near pi use the
/// diagonal-dominant axis extraction, which stays stable where the
/// skew-part formula degenerates.
/// Throws ModelError if r is not orthonormal within tolerance.
Eigen::Vector3d rotation_to_rodrigues(const Eigen::Matrix3d& r);

/// Exponential map: rotation about axis v/|v| by angle |v| (Rodrigues'
/// rotation formula). Inverse of rotation_to_rodrigues away from angle pi.
Eigen::Matrix3d rodrigues_to_rotation(const Eigen::Vector3d& v);

/// Pose error between target and current, expressed in the base frame:
/// translation difference plus the Rodrigues vector of R_t * R_c^T.
CartesianError pose_error(const Transform& target, const Transform& current);

}  // namespace fdik
