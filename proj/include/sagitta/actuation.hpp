#pragma once

#include <array>

#include "sagitta/types.hpp"

namespace sagitta {

// Signed constant moment arm of a tendon over one joint. Tension T produces
// the generalized torque sign * arm * T at the joint, and the tendon path
// lengthens by -sign * arm per unit joint angle (so positive work by the
// tendon is consistent with the torque it applies).
struct MomentArm {
  int joint = -1;  // joint index in the RobotSpec
  double arm = 0.0;
  double sign = 1.0;
};

// Series-elastic muscle-tendon unit: an actuator force source and a linear
// spring-damper acting along the same tendon path with constant moment arms.
struct MuscleSpec {
  std::string name;
  double stiffness = 0.0;    // N/m
  double damping = 0.0;      // N s/m
  double rest_length = 0.0;  // m, path length in the reference pose
  std::vector<MomentArm> arms;
  bool unilateral = false;  // tension-only when set
  // Converts a decoded action value to tension demand: demand = act_sign * a.
  double act_sign = 1.0;
};

struct JointSpringSpec {
  int joint = -1;
  double stiffness = 0.0;   // N m / rad
  double damping = 0.0;     // N m s / rad
  double rest_angle = 0.0;  // rad
};

// Ordered per-channel candidate lists; the cross product enumerates the
// discrete action set.
struct ActionSpace {
  std::vector<std::string> channel_names;
  std::vector<std::vector<double>> candidates;

  int channels() const { return static_cast<int>(candidates.size()); }
  int size() const;
  std::vector<int> unflatten(int flat) const;
  int flatten(const std::vector<int>& indices) const;
  void validate_indices(const std::vector<int>& indices) const;
};

// Per-channel candidate indices; these select the right-leg commands, the
// left leg mirrors them.
struct Action {
  std::vector<int> indices;
};

// Decoded per-leg channel values. The left leg looks the candidate list up
// at the reversed index, which realizes the antiphase pairing (and equals
// sign negation for symmetric lists).
struct LegCommands {
  std::vector<double> right;
  std::vector<double> left;
};

LegCommands decode_action(const ActionSpace& space, const Action& a);

// Mirror at the index level: i -> size-1-i per channel. Involutive.
Action mirror_action(const ActionSpace& space, const Action& a);

double muscle_path_length(const MuscleSpec& m, const VecX& q,
                          const RobotSpec& spec);
double muscle_path_velocity(const MuscleSpec& m, const VecX& qdot,
                            const RobotSpec& spec);

// Tendon tension from demand f_act plus the series spring-damper:
// raw = act_sign*f_act + k*(L - rest) + c*Ldot, clamped at zero for
// unilateral (tension-only) muscles.
double muscle_force(const MuscleSpec& m, double path_length,
                    double path_velocity, double f_act);

// Adds sign * arm * tension at each spanned joint coordinate.
void muscle_to_generalized(const MuscleSpec& m, double tension,
                           const RobotSpec& spec, VecX& tau);

double joint_spring_torque(const JointSpringSpec& s, double angle,
                           double rate);

// Soft joint-range penalty outside [lower, upper].
double joint_limit_torque(const JointSpec& joint, double angle,
                          double stiffness);

// Elastic energy stored in joint springs, muscle series springs, and the
// joint-limit penalties.
double elastic_energy(const RobotSpec& spec,
                      const std::vector<MuscleSpec>& muscles,
                      const std::vector<JointSpringSpec>& springs,
                      const VecX& q, double limit_stiffness);

}  // namespace sagitta
