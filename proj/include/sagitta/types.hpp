#pragma once

#include <Eigen/Core>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sagitta {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Rigid segment of the planar tree. The link frame has its origin at the
// proximal joint and its axis pointing toward the distal joint; the center
// of mass sits com_offset along the axis.
struct LinkSpec {
  std::string name;
  double length = 0.0;      // m, distance between proximal and distal joints
  double mass = 0.0;        // kg
  double inertia = 0.0;     // kg m^2 about the center of mass
  double com_offset = 0.0;  // m along the link axis from the proximal joint
};

// Revolute joint connecting parent_link to child_link. The child's absolute
// angle is parent_angle + mount_angle + axis_sign * q. rotor_inertia is the
// motor rotor inertia reflected at the joint (gear ratio included); it is
// added to the joint's diagonal mass-matrix entry.
struct JointSpec {
  std::string name;
  int parent_link = -1;
  int child_link = -1;
  double parent_along = 0.0;  // m, pivot position along the parent axis
  double axis_sign = 1.0;     // +1 or -1, sign convention of q
  double mount_angle = 0.0;   // rad, fixed offset of the child axis
  double rotor_inertia = 0.0;     // kg m^2
  double viscous_damping = 0.0;   // N m s / rad
  double lower_limit = -std::numeric_limits<double>::infinity();  // rad
  double upper_limit = std::numeric_limits<double>::infinity();   // rad
};

// Named point on a link, used for contact and diagnostics.
struct PointAttachment {
  std::string name;
  int link = -1;
  double along = 0.0;  // m along the link axis from the proximal joint
};

// Planar kinematic tree in generalized coordinates. links[0] is the root.
// With base_translation the root origin carries two prismatic coordinates
// (horizontal x, vertical z) ahead of the joint coordinates; root pitch is
// structurally absent, which realizes the locked-pelvis constraint.
struct RobotSpec {
  std::vector<LinkSpec> links;
  std::vector<JointSpec> joints;  // topologically ordered, parent first
  std::vector<PointAttachment> points;
  bool base_translation = true;
  double gravity = 9.81;  // m/s^2

  int base_dof() const { return base_translation ? 2 : 0; }
  int dof() const { return base_dof() + static_cast<int>(joints.size()); }
  int joint_coord(int joint_index) const { return base_dof() + joint_index; }

  int find_link(const std::string& name) const;
  int find_joint(const std::string& name) const;
  int find_point(const std::string& name) const;

  // Checks tree structure and parameter invariants; throws
  // std::invalid_argument on the first violation.
  void validate() const;
};

// Generalized positions and velocities at one physics tick.
struct SimState {
  VecX q;
  VecX qdot;
  double t = 0.0;
};

// Thrown when the integrator detects non-finite state; carries a dump of
// the offending state for diagnostics.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(const std::string& what, const SimState& state);
  SimState state;
};

}  // namespace sagitta
