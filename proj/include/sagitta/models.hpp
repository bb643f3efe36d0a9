#pragma once

#include "sagitta/actuation.hpp"
#include "sagitta/config.hpp"
#include "sagitta/contact.hpp"
#include "sagitta/types.hpp"

namespace sagitta {

// Routes one decoded action channel to its effectors on each leg: either a
// muscle tension demand or a direct joint torque.
struct ChannelBinding {
  enum class Kind { kMuscle, kJointTorque };
  Kind kind = Kind::kJointTorque;
  int right_target = -1;  // muscle index or joint index
  int left_target = -1;
};

struct InitialPose {
  double pelvis_z = 0.0;        // m
  double hip_split = 0.0;       // rad, +split on the right hip, -split left
  double joint_noise_std = 0.0; // rad, applied at reset
};

// Complete parameterization of one robot variant: kinematic tree, elastic
// elements, actuator wiring, and the discrete action space.
struct ModelBundle {
  std::string name;
  RobotSpec robot;
  std::vector<MuscleSpec> muscles;       // empty for the torque model
  std::vector<JointSpringSpec> springs;  // empty for the torque model
  std::vector<ChannelBinding> bindings;  // one per action channel
  ActionSpace actions;
  double limit_stiffness = 500.0;     // N m / rad, soft joint-range penalty
  InitialPose initial_pose;
  std::vector<std::string> actuator_names;  // right then left per channel

  int actuator_count() const { return 2 * static_cast<int>(bindings.size()); }
};

// Musculoskeletal variant: series-elastic VAS/GAS, ankle and foot rotational
// springs, quasi-direct-drive hip motors.
ModelBundle build_passive_model();

// Servo variant: identical morphology, direct torques at hip/knee/ankle with
// high reflected rotor inertia and joint viscosity, no elastic elements.
ModelBundle build_torque_model();

ModelBundle build_model(const std::string& name);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Cross-checks bundle invariants (tree structure, 10 coordinates, 6
// actuators, 24 actions) and reports the known nominal-vs-table parameter
// discrepancies as warnings.
ValidationReport validate(const ModelBundle& bundle);

double total_mass(const RobotSpec& spec);

// Bundles round-trip through the human-readable config format so any table
// value can be perturbed from a file. Schema version "1".
config::Document bundle_to_config(const ModelBundle& bundle);
ModelBundle bundle_from_config(const config::Document& doc);

}  // namespace sagitta
