// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "fdik/spatial.hpp"

namespace fdik {

/// Position limits of a revolute joint, radians. Parsed from input for
/// reporting; the solver does not enforce them.
struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;
  double effort = 0.0;
  double velocity = 0.0;
};

/// One revolute joint: fixed offset from the parent link frame plus a unit
/// rotation axis expressed in the joint frame.
struct JointSpec {
  std::string name;
  Transform origin;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  std::optional<JointLimits> limits;
};

/// Rigid-body inertia of one link: mass, center of mass in the link frame,
/// and the 3x3 rotational inertia about that center of mass.
struct LinkInertia {
  std::string name;
  double mass = 0.0;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
};

/// A serial kinematic chain of revolute joints. Link i is the body distal
/// to joint i; `tip` is the fixed flange offset after the last joint.
///
/// Instances are immutable after construction and safe to share across
/// threads. The constructor validates all invariants (unit axes, orthonormal
/// origins, symmetric PSD link inertias) and throws ModelError on violation.
class ChainModel {
public:
  ChainModel(std::vector<JointSpec> joints, std::vector<LinkInertia> links,
             Transform tip);

  int dof() const { return static_cast<int>(joints_.size()); }
  const std::vector<JointSpec>& joints() const { return joints_; }
  const std::vector<LinkInertia>& links() const { return links_; }
  const Transform& tip() const { return tip_; }

private:
  std::vector<JointSpec> joints_;
  std::vector<LinkInertia> links_;
  Transform tip_;
};

/// Parses a URDF-subset robot description: a single unbranched chain of
/// revolute/continuous/fixed joints with origin, axis, and inertial elements.
/// Fixed joints are folded into the neighboring frame offsets and their
/// distal link inertias merged into the preceding moving link. The root
/// link's own inertia is grounded and does not enter the chain.
///
/// Throws ParseError on malformed XML or missing attributes, TopologyError
/// on branching chains or unsupported joint types, ModelError on invariant
/// violations (e.g. a zero joint axis).
ChainModel load_chain(const std::string& urdf_text);

/// Serializes a chain back to URDF text. load_chain(serialize_chain(c))
/// reproduces all numeric fields of c (17 significant digits).
std::string serialize_chain(const ChainModel& chain, const std::string& robot_name = "chain");

/// The embedded Universal Robots UR10 model (6 revolute joints), built from
/// the reference parameter table shipped at core/data/ur10_params.txt. The
/// tip frame is the flange ("ee_link") convention: +0.0922 m along wrist_3 y,
/// rotated +90 deg about z.
ChainModel builtin_ur10();

/// Raw text of the embedded UR10 parameter table (identical bytes to the
/// shipped reference file).
const std::string& ur10_parameter_table();

/// Embedded URDF description equivalent to builtin_ur10().
const std::string& ur10_urdf();

/// Parses the plain-text parameter table format used by the reference data
/// file (`joint ...`, `link ...`, `tip ...` rows; `#` comments).
ChainModel parse_parameter_table(const std::string& text);

/// Dynamics conditioning: concentrates the whole mass budget in the last
/// link (mass m, rotational inertia `inertia`, com at the tip frame origin)
/// and floors every other link at 1e-3*m and 1e-6*inertia with its com
/// unchanged. Kinematic fields are preserved bit-exactly.
/// Throws ModelError for m <= 0 or a non-SPD inertia.
ChainModel condition_virtual_twin(const ChainModel& chain, double m,
                                  const Eigen::Matrix3d& inertia);

/// Dynamics conditioning: distributes mass m and inertia uniformly, each of
/// the n links receiving m/n and inertia/n with its com at the link frame
/// origin. Kinematic fields are preserved bit-exactly.
ChainModel condition_uniform(const ChainModel& chain, double m,
                             const Eigen::Matrix3d& inertia);

}  // namespace fdik
