// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/dynamics.hpp"

#include <Eigen/Geometry>

#include <Eigen/Cholesky>
#include <cmath>

#include "fdik/errors.hpp"

namespace fdik {

namespace {

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

// 6x6 spatial inertia about the world origin, (angular; linear) ordering:
//   [ I_com - m*cx*cx   m*cx ]
//   [      -m*cx        m*1  ]
// with c the world com and I_com the rotational inertia about it (world axes).
Matrix6d spatial_inertia_at_origin(double mass, const Eigen::Vector3d& com_world,
                                   const Eigen::Matrix3d& inertia_world) {
  Matrix6d m = Matrix6d::Zero();
  const Eigen::Matrix3d cx = skew(com_world);
  m.topLeftCorner<3, 3>() = inertia_world - mass * cx * cx;
  m.topRightCorner<3, 3>() = mass * cx;
  m.bottomLeftCorner<3, 3>() = -mass * cx;
  m.bottomRightCorner<3, 3>() = mass * Eigen::Matrix3d::Identity();
  return m;
}

}  // namespace

Eigen::MatrixXd joint_space_inertia(const ChainModel& chain, const ChainFrames& frames) {
  const int n = chain.dof();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);

  // Joint motion subspaces about the world origin: (axis; p x axis).
  std::vector<Vector6d> s(n);
  for (int i = 0; i < n; ++i) {
    s[i].head<3>() = frames.axis[i];
    s[i].tail<3>() = frames.origin[i].cross(frames.axis[i]);
  }

  Matrix6d composite = Matrix6d::Zero();
  for (int j = n - 1; j >= 0; --j) {
    const LinkInertia& link = chain.links()[j];
    const Eigen::Matrix3d r = frames.link[j].rotation;
    composite += spatial_inertia_at_origin(
        link.mass, frames.link[j].apply(link.com), r * link.inertia * r.transpose());
    const Vector6d f = composite * s[j];
    h(j, j) = s[j].dot(f);
    for (int i = 0; i < j; ++i) {
      h(i, j) = s[i].dot(f);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

Eigen::MatrixXd joint_space_inertia(const ChainModel& chain, const Eigen::VectorXd& q) {
  return joint_space_inertia(chain, compute_frames(chain, q));
}

Eigen::VectorXd apply_inverse_inertia(const Eigen::MatrixXd& h, const Eigen::VectorXd& v) {
  if (h.rows() != h.cols() || h.rows() != v.size()) {
    throw ModelError("apply_inverse_inertia: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    throw ModelError("apply_inverse_inertia: inertia matrix is not positive definite");
  }
  Eigen::VectorXd x = llt.solve(v);
  // One refinement pass keeps the residual near machine precision even for
  // near-singular configurations of heavily conditioned models.
  x += llt.solve(v - h * x);
  return x;
}

Matrix6d task_space_mobility(const ChainModel& chain, const Eigen::VectorXd& q) {
  const ChainFrames frames = compute_frames(chain, q);
  return task_space_mobility(joint_space_inertia(chain, frames),
                             jacobian_from_frames(frames));
}

Matrix6d task_space_mobility(const Eigen::MatrixXd& h, const Jacobian& j) {
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    throw ModelError("task_space_mobility: inertia matrix is not positive definite");
  }
  Eigen::MatrixXd jt = j.transpose();
  Eigen::MatrixXd x = llt.solve(jt);
  x += llt.solve(jt - h * x);
  Matrix6d m = j * x;

  const double drift = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (drift > 1e-9) {
    throw ModelError("task_space_mobility: symmetry drift " + std::to_string(drift));
  }
  return 0.5 * (m + m.transpose());
}

}  // namespace fdik
