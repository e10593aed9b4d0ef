// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

// Embedded copies of core/data/ur10_params.txt and core/data/ur10.urdf.
// The table is the single source of truth for the builtin UR10; keep this
// file and the data files in sync (tests compare them byte for byte).

#include "fdik/model.hpp"

namespace fdik {

namespace {

const char kUr10Table[] = R"TBL(# UR10 reference parameters (serial chain, base to tip).
# Kinematics and inertials transcribed from the ROS-Industrial
# universal_robot description (ur10, cylinder-model inertials).
# Units: m, rad, kg, kg*m^2. Tip frame: flange (ee_link) convention.
#
# joint <name> xyz <x y z> rpy <r p y> axis <x y z> limits <lower upper effort velocity>
# link  <name> mass <m> com <x y z> inertia <ixx iyy izz ixy ixz iyz>
# tip   xyz <x y z> rpy <r p y>
joint shoulder_pan_joint xyz 0.0 0.0 0.1273 rpy 0.0 0.0 0.0 axis 0 0 1 limits -6.2831853 6.2831853 330.0 2.16
link shoulder_link mass 7.778 com 0.0 0.0 0.0 inertia 0.03147431257693659 0.03147431257693659 0.021875624999999996 0 0 0
joint shoulder_lift_joint xyz 0.0 0.220941 0.0 rpy 0.0 1.5707963267948966 0.0 axis 0 1 0 limits -6.2831853 6.2831853 330.0 2.16
link upper_arm_link mass 12.93 com 0.0 0.0 0.306 inertia 0.42175380379841093 0.42175380379841093 0.03636562499999999 0 0 0
joint elbow_joint xyz 0.0 -0.1719 0.612 rpy 0.0 0.0 0.0 axis 0 1 0 limits -6.2831853 6.2831853 150.0 3.15
link forearm_link mass 3.87 com 0.0 0.0 0.28615 inertia 0.11106969409710458 0.11106969409710458 0.010884375 0 0 0
joint wrist_1_joint xyz 0.0 0.0 0.5723 rpy 0.0 1.5707963267948966 0.0 axis 0 1 0 limits -6.2831853 6.2831853 54.0 3.2
link wrist_1_link mass 1.96 com 0.0 0.0 0.0 inertia 0.005108247956699999 0.005108247956699999 0.005512499999999999 0 0 0
joint wrist_2_joint xyz 0.0 0.1149 0.0 rpy 0.0 0.0 0.0 axis 0 0 1 limits -6.2831853 6.2831853 54.0 3.2
link wrist_2_link mass 1.96 com 0.0 0.0 0.0 inertia 0.005108247956699999 0.005108247956699999 0.005512499999999999 0 0 0
joint wrist_3_joint xyz 0.0 0.0 0.1157 rpy 0.0 0.0 0.0 axis 0 1 0 limits -6.2831853 6.2831853 54.0 3.2
link wrist_3_link mass 0.202 com 0.0 0.0 0.0 inertia 0.00011792166116465 0.00011792166116465 0.00020452500000000002 0 0 0
tip xyz 0.0 0.0922 0.0 rpy 0.0 0.0 1.5707963267948966
)TBL";

const char kUr10Urdf[] = R"URDF(<?xml version="1.0"?>
<robot name="ur10">
  <link name="base_link">
    <inertial>
      <origin xyz="0.0 0.0 0.0" rpy="0 0 0"/>
      <mass value="4.0"/>
      <inertia ixx="0.0061063308908" ixy="0" ixz="0" iyy="0.0061063308908" iyz="0" izz="0.01125"/>
    </inertial>
  </link>
  <joint name="shoulder_pan_joint" type="revolute">
    <parent link="base_link"/>
    <child link="shoulder_link"/>
    <origin xyz="0.0 0.0 0.1273" rpy="0.0 0.0 0.0"/>
    <axis xyz="0 0 1"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="330.0" velocity="2.16"/>
  </joint>
  <link name="shoulder_link">
    <inertial>
      <origin xyz="0.0 0.0 0.0" rpy="0 0 0"/>
      <mass value="7.778"/>
      <inertia ixx="0.03147431257693659" ixy="0" ixz="0" iyy="0.03147431257693659" iyz="0" izz="0.021875624999999996"/>
    </inertial>
  </link>
  <joint name="shoulder_lift_joint" type="revolute">
    <parent link="shoulder_link"/>
    <child link="upper_arm_link"/>
    <origin xyz="0.0 0.220941 0.0" rpy="0.0 1.5707963267948966 0.0"/>
    <axis xyz="0 1 0"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="330.0" velocity="2.16"/>
  </joint>
  <link name="upper_arm_link">
    <inertial>
      <origin xyz="0.0 0.0 0.306" rpy="0 0 0"/>
      <mass value="12.93"/>
      <inertia ixx="0.42175380379841093" ixy="0" ixz="0" iyy="0.42175380379841093" iyz="0" izz="0.03636562499999999"/>
    </inertial>
  </link>
  <joint name="elbow_joint" type="revolute">
    <parent link="upper_arm_link"/>
    <child link="forearm_link"/>
    <origin xyz="0.0 -0.1719 0.612" rpy="0.0 0.0 0.0"/>
    <axis xyz="0 1 0"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="150.0" velocity="3.15"/>
  </joint>
  <link name="forearm_link">
    <inertial>
      <origin xyz="0.0 0.0 0.28615" rpy="0 0 0"/>
      <mass value="3.87"/>
      <inertia ixx="0.11106969409710458" ixy="0" ixz="0" iyy="0.11106969409710458" iyz="0" izz="0.010884375"/>
    </inertial>
  </link>
  <joint name="wrist_1_joint" type="revolute">
    <parent link="forearm_link"/>
    <child link="wrist_1_link"/>
    <origin xyz="0.0 0.0 0.5723" rpy="0.0 1.5707963267948966 0.0"/>
    <axis xyz="0 1 0"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="54.0" velocity="3.2"/>
  </joint>
  <link name="wrist_1_link">
    <inertial>
      <origin xyz="0.0 0.0 0.0" rpy="0 0 0"/>
      <mass value="1.96"/>
      <inertia ixx="0.005108247956699999" ixy="0" ixz="0" iyy="0.005108247956699999" iyz="0" izz="0.005512499999999999"/>
    </inertial>
  </link>
  <joint name="wrist_2_joint" type="revolute">
    <parent link="wrist_1_link"/>
    <child link="wrist_2_link"/>
    <origin xyz="0.0 0.1149 0.0" rpy="0.0 0.0 0.0"/>
    <axis xyz="0 0 1"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="54.0" velocity="3.2"/>
  </joint>
  <link name="wrist_2_link">
    <inertial>
      <origin xyz="0.0 0.0 0.0" rpy="0 0 0"/>
      <mass value="1.96"/>
      <inertia ixx="0.005108247956699999" ixy="0" ixz="0" iyy="0.005108247956699999" iyz="0" izz="0.005512499999999999"/>
    </inertial>
  </link>
  <joint name="wrist_3_joint" type="revolute">
    <parent link="wrist_2_link"/>
    <child link="wrist_3_link"/>
    <origin xyz="0.0 0.0 0.1157" rpy="0.0 0.0 0.0"/>
    <axis xyz="0 1 0"/>
    <limit lower="-6.2831853" upper="6.2831853" effort="54.0" velocity="3.2"/>
  </joint>
  <link name="wrist_3_link">
    <inertial>
      <origin xyz="0.0 0.0 0.0" rpy="0 0 0"/>
      <mass value="0.202"/>
      <inertia ixx="0.00011792166116465" ixy="0" ixz="0" iyy="0.00011792166116465" iyz="0" izz="0.00020452500000000002"/>
    </inertial>
  </link>
  <joint name="ee_fixed_joint" type="fixed">
    <parent link="wrist_3_link"/>
    <child link="ee_link"/>
    <origin xyz="0.0 0.0922 0.0" rpy="0.0 0.0 1.5707963267948966"/>
  </joint>
  <link name="ee_link"/>
</robot>
)URDF";

}  // namespace

const std::string& ur10_parameter_table() {
  static const std::string table(kUr10Table);
  return table;
}

const std::string& ur10_urdf() {
  static const std::string urdf(kUr10Urdf);
  return urdf;
}

ChainModel builtin_ur10() {
  return parse_parameter_table(ur10_parameter_table());
}

}  // namespace fdik
