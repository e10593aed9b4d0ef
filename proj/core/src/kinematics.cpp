// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/kinematics.hpp"

#include <Eigen/Geometry>

#include <cmath>

#include "fdik/errors.hpp"

namespace fdik {

namespace {

// Rotation by angle about a unit axis (Rodrigues' formula, written out).
Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& u, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double v = 1.0 - c;
  Eigen::Matrix3d r;
  r << c + u.x() * u.x() * v, u.x() * u.y() * v - u.z() * s, u.x() * u.z() * v + u.y() * s,
       u.y() * u.x() * v + u.z() * s, c + u.y() * u.y() * v, u.y() * u.z() * v - u.x() * s,
       u.z() * u.x() * v - u.y() * s, u.z() * u.y() * v + u.x() * s, c + u.z() * u.z() * v;
  return r;
}

}  // namespace

ChainFrames compute_frames(const ChainModel& chain, const Eigen::VectorXd& q) {
  const int n = chain.dof();
  if (q.size() != n) {
    throw ModelError("kinematics: q has " + std::to_string(q.size()) +
                     " entries, chain has " + std::to_string(n) + " joints");
  }
  if (!q.allFinite()) {
    throw ModelError("kinematics: q contains non-finite entries");
  }

  ChainFrames frames;
  frames.link.reserve(n);
  frames.axis.reserve(n);
  frames.origin.reserve(n);

  Transform cursor = Transform::identity();
  for (int i = 0; i < n; ++i) {
    const JointSpec& joint = chain.joints()[i];
    cursor = compose(cursor, joint.origin);
    frames.origin.push_back(cursor.translation);
    frames.axis.push_back(cursor.rotation * joint.axis);
    Transform rotated = cursor;
    rotated.rotation = cursor.rotation * axis_rotation(joint.axis, q[i]);
    cursor = rotated;
    frames.link.push_back(cursor);
  }
  frames.tip = compose(cursor, chain.tip());
  return frames;
}

Transform forward_kinematics(const ChainModel& chain, const Eigen::VectorXd& q) {
  return compute_frames(chain, q).tip;
}

Jacobian jacobian_from_frames(const ChainFrames& frames) {
  const int n = static_cast<int>(frames.axis.size());
  Jacobian j(6, n);
  const Eigen::Vector3d& p_tip = frames.tip.translation;
  for (int i = 0; i < n; ++i) {
    j.col(i).head<3>() = frames.axis[i].cross(p_tip - frames.origin[i]);
    j.col(i).tail<3>() = frames.axis[i];
  }
  return j;
}

Jacobian geometric_jacobian(const ChainModel& chain, const Eigen::VectorXd& q) {
  return jacobian_from_frames(compute_frames(chain, q));
}

std::pair<Transform, Jacobian> fk_with_jacobian(const ChainModel& chain,
                                                const Eigen::VectorXd& q) {
  const ChainFrames frames = compute_frames(chain, q);
  return {frames.tip, jacobian_from_frames(frames)};
}

}  // namespace fdik
