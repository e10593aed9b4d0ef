// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/spatial.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fdik/errors.hpp"

namespace fdik {

namespace {

double orthonormality_drift(const Eigen::Matrix3d& r) {
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

bool is_orthonormal(const Eigen::Matrix3d& r, double tol) {
  return orthonormality_drift(r) <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& r) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d q = svd.matrixU() * svd.matrixV().transpose();
  if (q.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    q = u * svd.matrixV().transpose();
  }
  return q;
}

Transform compose(const Transform& a, const Transform& b) {
  Transform out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  if (orthonormality_drift(out.rotation) > 1e-10) {
    out.rotation = orthonormalize(out.rotation);
  }
  return out;
}

Transform invert(const Transform& a) {
  Transform out;
  out.rotation = a.rotation.transpose();
  out.translation = -(out.rotation * a.translation);
  return out;
}

Eigen::Vector3d rotation_to_rodrigues(const Eigen::Matrix3d& r) {
  if (!is_orthonormal(r, 1e-8)) {
    throw ModelError("rotation_to_rodrigues: input is not a rotation matrix");
  }

  // Skew part gives sin(theta) * axis, trace gives cos(theta).
  Eigen::Vector3d w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  w *= 0.5;
  const double cos_theta = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double sin_theta = std::min(w.norm(), 1.0);
  const double theta = std::atan2(sin_theta, cos_theta);

  if (theta < 1e-9) {
    return Eigen::Vector3d::Zero();
  }

  if (sin_theta > 1e-6) {
    return (theta / sin_theta) * w;
  }

  if (cos_theta > 0.0) {
    // Tiny angle: theta/sin(theta) = 1 + O(theta^2), so the skew part is
    // already the rotation vector to machine precision.
    return w;
  }

  // Near pi: axis from the dominant diagonal of the symmetric part,
  // u u^T = (0.5*(R + R^T) - cos * I) / (1 - cos).
  const Eigen::Matrix3d s = 0.5 * (r + r.transpose());
  int k = 0;
  s.diagonal().maxCoeff(&k);
  Eigen::Vector3d u;
  u[k] = std::sqrt(std::max((s(k, k) - cos_theta) / (1.0 - cos_theta), 0.0));
  const double denom = (1.0 - cos_theta) * u[k];
  u[(k + 1) % 3] = s((k + 1) % 3, k) / denom;
  u[(k + 2) % 3] = s((k + 2) % 3, k) / denom;
  u.normalize();
  // Keep the branch consistent with the skew part while it still has a sign;
  // at exactly pi both signs are valid, pick the one with positive leading entry.
  if (w.dot(u) < 0.0) {
    u = -u;
  } else if (w.norm() < 1e-14) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(u[i]) > 1e-12) {
        if (u[i] < 0.0) u = -u;
        break;
      }
    }
  }
  return theta * u;
}

Eigen::Matrix3d rodrigues_to_rotation(const Eigen::Vector3d& v) {
  const double theta = v.norm();
  if (theta < 1e-12) {
    return Eigen::Matrix3d::Identity();
  }
  const Eigen::Vector3d u = v / theta;
  Eigen::Matrix3d ux;
  ux << 0.0, -u.z(), u.y(),
        u.z(), 0.0, -u.x(),
       -u.y(), u.x(), 0.0;
  return Eigen::Matrix3d::Identity() + std::sin(theta) * ux +
         (1.0 - std::cos(theta)) * ux * ux;
}

CartesianError pose_error(const Transform& target, const Transform& current) {
  CartesianError e;
  e.eps.head<3>() = target.translation - current.translation;
  e.eps.tail<3>() =
      rotation_to_rodrigues(target.rotation * current.rotation.transpose());
  return e;
}

}  // namespace fdik
