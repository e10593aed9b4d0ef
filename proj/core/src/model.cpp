// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/model.hpp"

#include <Eigen/Dense>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <map>
#include <sstream>

#include "fdik/errors.hpp"
#include "fdik/io.hpp"

namespace fdik {

namespace {

Eigen::Matrix3d rpy_to_rotation(double roll, double pitch, double yaw) {
  // Fixed-axis XYZ convention: R = Rz(yaw) * Ry(pitch) * Rx(roll).
  Eigen::Matrix3d rx, ry, rz;
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  rx << 1, 0, 0, 0, cr, -sr, 0, sr, cr;
  ry << cp, 0, sp, 0, 1, 0, -sp, 0, cp;
  rz << cy, -sy, 0, sy, cy, 0, 0, 0, 1;
  return rz * ry * rx;
}

Eigen::Vector3d rotation_to_rpy(const Eigen::Matrix3d& r) {
  const double sp = -r(2, 0);
  if (std::abs(sp) > 1.0 - 1e-12) {
    // Gimbal limit: fold roll into yaw.
    const double pitch = std::copysign(M_PI / 2.0, sp);
    const double yaw = std::atan2(-r(0, 1), r(1, 1));
    return {0.0, pitch, yaw};
  }
  const double pitch = std::asin(sp);
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return {roll, pitch, yaw};
}

Eigen::Vector3d normalized_axis(const Eigen::Vector3d& axis, const std::string& where) {
  const double n = axis.norm();
  if (n < 1e-10) {
    throw ModelError(where + ": joint axis is zero");
  }
  if (std::abs(n - 1.0) > 1e-6) {
    throw ModelError(where + ": joint axis norm deviates from 1 by more than 1e-6");
  }
  return axis / n;
}

void validate_link_inertia(const LinkInertia& link) {
  if (!(link.mass >= 0.0) || !std::isfinite(link.mass)) {
    throw ModelError("link '" + link.name + "': mass must be finite and >= 0");
  }
  if ((link.inertia - link.inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ModelError("link '" + link.name + "': inertia tensor is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(link.inertia);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw ModelError("link '" + link.name + "': inertia tensor is not positive semi-definite");
  }
}

void require_spd(const Eigen::Matrix3d& inertia, const std::string& where) {
  if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ModelError(where + ": inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(inertia);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw ModelError(where + ": inertia must be positive definite");
  }
}

// Shifts a com-referenced inertia tensor to a point displaced by d.
Eigen::Matrix3d parallel_axis(const Eigen::Matrix3d& inertia_com, double mass,
                              const Eigen::Vector3d& d) {
  return inertia_com +
         mass * (d.squaredNorm() * Eigen::Matrix3d::Identity() - d * d.transpose());
}

// Merges inertia `b` (expressed via transform b_in_a) into `a`, both about
// their own center of mass, result about the combined center of mass.
void merge_inertia(LinkInertia& a, const LinkInertia& b, const Transform& b_in_a) {
  if (b.mass <= 0.0 && b.inertia.cwiseAbs().maxCoeff() <= 0.0) {
    return;
  }
  const Eigen::Vector3d com_b = b_in_a.apply(b.com);
  const Eigen::Matrix3d inertia_b = b_in_a.rotation * b.inertia * b_in_a.rotation.transpose();
  const double total = a.mass + b.mass;
  const Eigen::Vector3d com =
      total > 0.0 ? ((a.mass * a.com + b.mass * com_b) / total).eval() : a.com;
  a.inertia = parallel_axis(a.inertia, a.mass, a.com - com) +
              parallel_axis(inertia_b, b.mass, com_b - com);
  a.com = com;
  a.mass = total;
}

}  // namespace

ChainModel::ChainModel(std::vector<JointSpec> joints, std::vector<LinkInertia> links,
                       Transform tip)
    : joints_(std::move(joints)), links_(std::move(links)), tip_(std::move(tip)) {
  if (joints_.empty()) {
    throw ModelError("chain must have at least one joint");
  }
  if (joints_.size() != links_.size()) {
    throw ModelError("chain must have exactly one link per joint");
  }
  for (auto& j : joints_) {
    const double n = j.axis.norm();
    if (n < 1e-10) {
      throw ModelError("joint '" + j.name + "': axis is zero");
    }
    if (std::abs(n - 1.0) > 1e-12) {
      throw ModelError("joint '" + j.name + "': axis is not unit length");
    }
    if (!is_orthonormal(j.origin.rotation, 1e-12)) {
      throw ModelError("joint '" + j.name + "': origin rotation is not orthonormal");
    }
  }
  if (!is_orthonormal(tip_.rotation, 1e-12)) {
    throw ModelError("tip: origin rotation is not orthonormal");
  }
  for (const auto& l : links_) {
    validate_link_inertia(l);
  }
}

// ---------------------------------------------------------------------------
// URDF subset
// ---------------------------------------------------------------------------

namespace {

using boost::property_tree::ptree;

Eigen::Vector3d parse_vec3(const std::string& text, const std::string& where) {
  std::istringstream iss(text);
  Eigen::Vector3d v;
  if (!(iss >> v.x() >> v.y() >> v.z())) {
    throw ParseError(where + ": expected three numbers, got '" + text + "'");
  }
  std::string rest;
  if (iss >> rest) {
    throw ParseError(where + ": trailing content '" + rest + "'");
  }
  return v;
}

Transform parse_origin(const ptree& element, const std::string& where) {
  Transform t;
  auto origin = element.get_child_optional("origin");
  if (!origin) {
    return t;
  }
  if (auto xyz = origin->get_optional<std::string>("<xmlattr>.xyz")) {
    t.translation = parse_vec3(*xyz, where + "/origin@xyz");
  }
  if (auto rpy = origin->get_optional<std::string>("<xmlattr>.rpy")) {
    const Eigen::Vector3d v = parse_vec3(*rpy, where + "/origin@rpy");
    t.rotation = rpy_to_rotation(v.x(), v.y(), v.z());
  }
  return t;
}

struct RawJoint {
  std::string name;
  std::string type;
  std::string parent;
  std::string child;
  Transform origin;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();  // URDF default
  std::optional<JointLimits> limits;
};

RawJoint parse_joint(const ptree& node) {
  RawJoint j;
  auto name = node.get_optional<std::string>("<xmlattr>.name");
  if (!name) {
    throw ParseError("urdf: <joint> without name attribute");
  }
  j.name = *name;
  auto type = node.get_optional<std::string>("<xmlattr>.type");
  if (!type) {
    throw ParseError("urdf: joint '" + j.name + "' has no type attribute");
  }
  j.type = *type;
  auto parent = node.get_optional<std::string>("parent.<xmlattr>.link");
  auto child = node.get_optional<std::string>("child.<xmlattr>.link");
  if (!parent || !child) {
    throw ParseError("urdf: joint '" + j.name + "' is missing parent/child link");
  }
  j.parent = *parent;
  j.child = *child;
  j.origin = parse_origin(node, "joint '" + j.name + "'");
  if (auto axis = node.get_optional<std::string>("axis.<xmlattr>.xyz")) {
    j.axis = parse_vec3(*axis, "joint '" + j.name + "'/axis");
  }
  if (auto limit = node.get_child_optional("limit")) {
    JointLimits lim;
    lim.lower = limit->get<double>("<xmlattr>.lower", 0.0);
    lim.upper = limit->get<double>("<xmlattr>.upper", 0.0);
    lim.effort = limit->get<double>("<xmlattr>.effort", 0.0);
    lim.velocity = limit->get<double>("<xmlattr>.velocity", 0.0);
    j.limits = lim;
  }
  return j;
}

LinkInertia parse_inertial(const ptree& link_node, const std::string& link_name) {
  LinkInertia l;
  l.name = link_name;
  auto inertial = link_node.get_child_optional("inertial");
  if (!inertial) {
    return l;  // massless link
  }
  auto mass = inertial->get_optional<double>("mass.<xmlattr>.value");
  if (!mass) {
    throw ParseError("urdf: link '" + link_name + "' inertial has no mass value");
  }
  l.mass = *mass;
  const Transform frame = parse_origin(*inertial, "link '" + link_name + "'/inertial");
  l.com = frame.translation;
  auto tensor = inertial->get_child_optional("inertia");
  if (!tensor) {
    throw ParseError("urdf: link '" + link_name + "' inertial has no inertia element");
  }
  auto entry = [&](const char* attr) {
    auto v = tensor->get_optional<double>(ptree::path_type(std::string("<xmlattr>.") + attr));
    if (!v) {
      throw ParseError("urdf: link '" + link_name + "' inertia is missing " + attr);
    }
    return *v;
  };
  Eigen::Matrix3d raw;
  raw << entry("ixx"), entry("ixy"), entry("ixz"),
         entry("ixy"), entry("iyy"), entry("iyz"),
         entry("ixz"), entry("iyz"), entry("izz");
  // Tensor is given in the inertial frame; rotate it into the link frame.
  l.inertia = frame.rotation * raw * frame.rotation.transpose();
  return l;
}

}  // namespace

ChainModel load_chain(const std::string& urdf_text) {
  ptree doc;
  try {
    std::istringstream iss(urdf_text);
    boost::property_tree::read_xml(iss, doc,
                                   boost::property_tree::xml_parser::trim_whitespace);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw ParseError(std::string("urdf: malformed XML: ") + e.what());
  }
  auto robot = doc.get_child_optional("robot");
  if (!robot) {
    throw ParseError("urdf: no <robot> root element");
  }

  std::map<std::string, const ptree*> link_nodes;
  std::vector<RawJoint> raw_joints;
  for (const auto& [key, node] : *robot) {
    if (key == "link") {
      auto name = node.get_optional<std::string>("<xmlattr>.name");
      if (!name) {
        throw ParseError("urdf: <link> without name attribute");
      }
      if (!link_nodes.emplace(*name, &node).second) {
        throw ParseError("urdf: duplicate link '" + *name + "'");
      }
    } else if (key == "joint") {
      raw_joints.push_back(parse_joint(node));
    }
  }
  if (raw_joints.empty()) {
    throw TopologyError("urdf: no joints found");
  }

  std::map<std::string, const RawJoint*> joint_by_parent;
  std::map<std::string, bool> is_child;
  for (const auto& j : raw_joints) {
    if (!link_nodes.count(j.parent)) {
      throw ParseError("urdf: joint '" + j.name + "' references unknown parent link '" + j.parent + "'");
    }
    if (!link_nodes.count(j.child)) {
      throw ParseError("urdf: joint '" + j.name + "' references unknown child link '" + j.child + "'");
    }
    if (!joint_by_parent.emplace(j.parent, &j).second) {
      throw TopologyError("urdf: link '" + j.parent + "' has more than one child joint (branching chain)");
    }
    if (is_child[j.child]) {
      throw TopologyError("urdf: link '" + j.child + "' has more than one parent joint");
    }
    is_child[j.child] = true;
  }

  std::string root;
  for (const auto& [name, node] : link_nodes) {
    if (!is_child.count(name) || !is_child[name]) {
      if (joint_by_parent.count(name)) {
        if (!root.empty()) {
          throw TopologyError("urdf: multiple root links ('" + root + "', '" + name + "')");
        }
        root = name;
      }
    }
  }
  if (root.empty()) {
    throw TopologyError("urdf: no root link (joint graph contains a cycle)");
  }

  std::vector<JointSpec> joints;
  std::vector<LinkInertia> links;
  Transform pending = Transform::identity();  // fixed offsets since the last moving link
  std::size_t consumed = 0;
  std::string current = root;
  for (auto it = joint_by_parent.find(current); it != joint_by_parent.end();
       it = joint_by_parent.find(current)) {
    const RawJoint& rj = *it->second;
    ++consumed;
    const LinkInertia child_inertia = parse_inertial(*link_nodes.at(rj.child), rj.child);
    if (rj.type == "fixed") {
      pending = compose(pending, rj.origin);
      if (!links.empty()) {
        merge_inertia(links.back(), child_inertia, pending);
      }
      // Before the first moving joint the body is grounded; its inertia
      // never enters the joint-space dynamics.
    } else if (rj.type == "revolute" || rj.type == "continuous") {
      JointSpec spec;
      spec.name = rj.name;
      spec.origin = compose(pending, rj.origin);
      spec.axis = normalized_axis(rj.axis, "joint '" + rj.name + "'");
      spec.limits = rj.limits;
      joints.push_back(std::move(spec));
      links.push_back(child_inertia);
      pending = Transform::identity();
    } else {
      throw TopologyError("urdf: joint '" + rj.name + "' has unsupported type '" + rj.type + "'");
    }
    current = rj.child;
  }
  if (consumed != raw_joints.size()) {
    throw TopologyError("urdf: joint graph is not a single connected chain");
  }
  if (joints.empty()) {
    throw TopologyError("urdf: chain has no actuated joints");
  }

  return ChainModel(std::move(joints), std::move(links), pending);
}

std::string serialize_chain(const ChainModel& chain, const std::string& robot_name) {
  std::ostringstream out;
  auto vec3 = [](const Eigen::Vector3d& v) {
    return format_double(v.x()) + " " + format_double(v.y()) + " " + format_double(v.z());
  };
  auto origin_tag = [&](const Transform& t) {
    return "<origin xyz=\"" + vec3(t.translation) + "\" rpy=\"" +
           vec3(rotation_to_rpy(t.rotation)) + "\"/>";
  };

  out << "<?xml version=\"1.0\"?>\n<robot name=\"" << robot_name << "\">\n";
  out << "  <link name=\"base_link\"/>\n";
  const int n = chain.dof();
  for (int i = 0; i < n; ++i) {
    const LinkInertia& l = chain.links()[i];
    const std::string link_name = l.name.empty() ? "link_" + std::to_string(i) : l.name;
    out << "  <link name=\"" << link_name << "\">\n"
        << "    <inertial>\n"
        << "      <origin xyz=\"" << vec3(l.com) << "\" rpy=\"0 0 0\"/>\n"
        << "      <mass value=\"" << format_double(l.mass) << "\"/>\n"
        << "      <inertia ixx=\"" << format_double(l.inertia(0, 0))
        << "\" ixy=\"" << format_double(l.inertia(0, 1))
        << "\" ixz=\"" << format_double(l.inertia(0, 2))
        << "\" iyy=\"" << format_double(l.inertia(1, 1))
        << "\" iyz=\"" << format_double(l.inertia(1, 2))
        << "\" izz=\"" << format_double(l.inertia(2, 2)) << "\"/>\n"
        << "    </inertial>\n"
        << "  </link>\n";
  }
  out << "  <link name=\"tip\"/>\n";
  for (int i = 0; i < n; ++i) {
    const JointSpec& j = chain.joints()[i];
    const auto& links = chain.links();
    const std::string parent =
        i == 0 ? "base_link"
               : (links[i - 1].name.empty() ? "link_" + std::to_string(i - 1) : links[i - 1].name);
    const std::string child = links[i].name.empty() ? "link_" + std::to_string(i) : links[i].name;
    out << "  <joint name=\"" << j.name << "\" type=\"revolute\">\n"
        << "    <parent link=\"" << parent << "\"/>\n"
        << "    <child link=\"" << child << "\"/>\n"
        << "    " << origin_tag(j.origin) << "\n"
        << "    <axis xyz=\"" << vec3(j.axis) << "\"/>\n";
    if (j.limits) {
      out << "    <limit lower=\"" << format_double(j.limits->lower)
          << "\" upper=\"" << format_double(j.limits->upper)
          << "\" effort=\"" << format_double(j.limits->effort)
          << "\" velocity=\"" << format_double(j.limits->velocity) << "\"/>\n";
    }
    out << "  </joint>\n";
  }
  const auto& links = chain.links();
  const std::string last_link =
      links[n - 1].name.empty() ? "link_" + std::to_string(n - 1) : links[n - 1].name;
  out << "  <joint name=\"tip_joint\" type=\"fixed\">\n"
      << "    <parent link=\"" << last_link << "\"/>\n"
      << "    <child link=\"tip\"/>\n"
      << "    " << origin_tag(chain.tip()) << "\n"
      << "  </joint>\n";
  out << "</robot>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Parameter table
// ---------------------------------------------------------------------------

ChainModel parse_parameter_table(const std::string& text) {
  std::vector<JointSpec> joints;
  std::vector<LinkInertia> links;
  Transform tip = Transform::identity();
  bool saw_tip = false;

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tok(line);
    std::string kind;
    if (!(tok >> kind)) {
      continue;
    }
    const std::string where = "parameter table line " + std::to_string(line_no);
    auto expect = [&](const std::string& word) {
      std::string got;
      if (!(tok >> got) || got != word) {
        throw ParseError(where + ": expected '" + word + "'");
      }
    };
    auto num = [&]() {
      double v;
      if (!(tok >> v)) {
        throw ParseError(where + ": expected a number");
      }
      return v;
    };
    auto vec3 = [&]() {
      Eigen::Vector3d v;
      v.x() = num();
      v.y() = num();
      v.z() = num();
      return v;
    };

    if (kind == "joint") {
      JointSpec j;
      if (!(tok >> j.name)) {
        throw ParseError(where + ": joint without name");
      }
      expect("xyz");
      j.origin.translation = vec3();
      expect("rpy");
      const Eigen::Vector3d rpy = vec3();
      j.origin.rotation = rpy_to_rotation(rpy.x(), rpy.y(), rpy.z());
      expect("axis");
      j.axis = normalized_axis(vec3(), where);
      std::string extra;
      if (tok >> extra) {
        if (extra != "limits") {
          throw ParseError(where + ": unexpected token '" + extra + "'");
        }
        JointLimits lim;
        lim.lower = num();
        lim.upper = num();
        lim.effort = num();
        lim.velocity = num();
        j.limits = lim;
      }
      joints.push_back(std::move(j));
    } else if (kind == "link") {
      LinkInertia l;
      if (!(tok >> l.name)) {
        throw ParseError(where + ": link without name");
      }
      expect("mass");
      l.mass = num();
      expect("com");
      l.com = vec3();
      expect("inertia");
      const double ixx = num(), iyy = num(), izz = num();
      const double ixy = num(), ixz = num(), iyz = num();
      l.inertia << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
      links.push_back(std::move(l));
    } else if (kind == "tip") {
      expect("xyz");
      tip.translation = vec3();
      expect("rpy");
      const Eigen::Vector3d rpy = vec3();
      tip.rotation = rpy_to_rotation(rpy.x(), rpy.y(), rpy.z());
      saw_tip = true;
    } else {
      throw ParseError(where + ": unknown row kind '" + kind + "'");
    }
  }
  if (!saw_tip) {
    throw ParseError("parameter table: missing tip row");
  }
  return ChainModel(std::move(joints), std::move(links), tip);
}

// ---------------------------------------------------------------------------
// Conditioning
// ---------------------------------------------------------------------------

ChainModel condition_virtual_twin(const ChainModel& chain, double m,
                                  const Eigen::Matrix3d& inertia) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ModelError("condition_virtual_twin: mass must be positive");
  }
  require_spd(inertia, "condition_virtual_twin");

  std::vector<LinkInertia> links = chain.links();
  const int n = chain.dof();
  for (int i = 0; i + 1 < n; ++i) {
    links[i].mass = 1e-3 * m;
    links[i].inertia = 1e-6 * inertia;
  }
  links[n - 1].mass = m;
  links[n - 1].com = chain.tip().translation;  // tip frame origin, in link coordinates
  links[n - 1].inertia = inertia;
  return ChainModel(chain.joints(), std::move(links), chain.tip());
}

ChainModel condition_uniform(const ChainModel& chain, double m,
                             const Eigen::Matrix3d& inertia) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ModelError("condition_uniform: mass must be positive");
  }
  require_spd(inertia, "condition_uniform");

  std::vector<LinkInertia> links = chain.links();
  const int n = chain.dof();
  for (auto& l : links) {
    l.mass = m / n;
    l.com = Eigen::Vector3d::Zero();
    l.inertia = inertia / n;
  }
  return ChainModel(chain.joints(), std::move(links), chain.tip());
}

}  // namespace fdik
