// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>

#include "fdik/model.hpp"
#include "fdik/sampling.hpp"

namespace fdik::testing {

/// Single z-axis joint at the base with a point mass on the x axis: the
/// smallest chain with a closed-form inertia H = [mass * com_radius^2].
/// The tip lever is independent of the mass lever so tip-offset effects
/// can be isolated.
inline ChainModel lever_chain(double mass = 1.0, double com_radius = 1.0,
                              double tip_radius = 1.0) {
  JointSpec joint;
  joint.name = "pivot";
  joint.origin = Transform::identity();
  joint.axis = Eigen::Vector3d::UnitZ();

  LinkInertia link;
  link.name = "arm";
  link.mass = mass;
  link.com = Eigen::Vector3d(com_radius, 0.0, 0.0);
  link.inertia = Eigen::Matrix3d::Zero();

  Transform tip = Transform::identity();
  tip.translation = Eigen::Vector3d(tip_radius, 0.0, 0.0);
  return ChainModel({joint}, {link}, tip);
}

/// Three z-axis joints with x offsets: planar motion, but the link masses
/// carry off-axis centers of mass and anisotropic inertias so every term of
/// the inertia computation is exercised.
inline ChainModel planar_three_dof() {
  auto joint = [](const char* name, double x) {
    JointSpec j;
    j.name = name;
    j.origin = Transform::identity();
    j.origin.translation = Eigen::Vector3d(x, 0.0, 0.0);
    j.axis = Eigen::Vector3d::UnitZ();
    return j;
  };
  auto link = [](const char* name, double mass, const Eigen::Vector3d& com,
                 const Eigen::Vector3d& diag) {
    LinkInertia l;
    l.name = name;
    l.mass = mass;
    l.com = com;
    l.inertia = diag.asDiagonal();
    return l;
  };

  std::vector<JointSpec> joints = {joint("j1", 0.0), joint("j2", 0.5),
                                   joint("j3", 0.4)};
  std::vector<LinkInertia> links = {
      link("l1", 2.0, {0.25, 0.0, 0.05}, {0.02, 0.03, 0.04}),
      link("l2", 1.5, {0.2, -0.03, 0.0}, {0.01, 0.015, 0.02}),
      link("l3", 0.8, {0.1, 0.02, 0.01}, {0.005, 0.006, 0.008})};
  Transform tip = Transform::identity();
  tip.translation = Eigen::Vector3d(0.3, 0.0, 0.0);
  return ChainModel(std::move(joints), std::move(links), tip);
}

/// UR10 with the mass budget concentrated at the tip — the chain the solver
/// actually runs on.
inline ChainModel boosted_ur10() {
  return condition_virtual_twin(builtin_ur10(), 1.0,
                                Eigen::Matrix3d::Identity());
}

/// Deterministic random configuration, pinned to (seed, index) exactly like
/// the sampling sweep.
inline Eigen::VectorXd random_q(const ChainModel& chain, std::uint64_t seed,
                                std::int64_t index) {
  return sample_joint_vector(chain.dof(), seed, index);
}

}  // namespace fdik::testing
