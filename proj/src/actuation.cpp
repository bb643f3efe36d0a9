#include "sagitta/actuation.hpp"

#include <algorithm>
#include <cmath>

namespace sagitta {

int ActionSpace::size() const {
  int n = 1;
  for (const auto& c : candidates) n *= static_cast<int>(c.size());
  return n;
}

std::vector<int> ActionSpace::unflatten(int flat) const {
  if (flat < 0 || flat >= size())
    throw std::out_of_range("flat action index out of range");
  std::vector<int> idx(candidates.size());
  for (int c = channels() - 1; c >= 0; --c) {
    const int len = static_cast<int>(candidates[c].size());
    idx[c] = flat % len;
    flat /= len;
  }
  return idx;
}

int ActionSpace::flatten(const std::vector<int>& indices) const {
  validate_indices(indices);
  int flat = 0;
  for (int c = 0; c < channels(); ++c)
    flat = flat * static_cast<int>(candidates[c].size()) + indices[c];
  return flat;
}

void ActionSpace::validate_indices(const std::vector<int>& indices) const {
  if (indices.size() != candidates.size())
    throw std::out_of_range("action has wrong channel count");
  for (size_t c = 0; c < candidates.size(); ++c)
    if (indices[c] < 0 || indices[c] >= static_cast<int>(candidates[c].size()))
      throw std::out_of_range("action index out of range in channel " +
                              channel_names[c]);
}

LegCommands decode_action(const ActionSpace& space, const Action& a) {
  space.validate_indices(a.indices);
  LegCommands cmd;
  cmd.right.resize(space.channels());
  cmd.left.resize(space.channels());
  for (int c = 0; c < space.channels(); ++c) {
    const auto& list = space.candidates[c];
    const int n = static_cast<int>(list.size());
    cmd.right[c] = list[a.indices[c]];
    cmd.left[c] = list[n - 1 - a.indices[c]];
  }
  return cmd;
}

Action mirror_action(const ActionSpace& space, const Action& a) {
  space.validate_indices(a.indices);
  Action m;
  m.indices.resize(a.indices.size());
  for (size_t c = 0; c < a.indices.size(); ++c)
    m.indices[c] =
        static_cast<int>(space.candidates[c].size()) - 1 - a.indices[c];
  return m;
}

double muscle_path_length(const MuscleSpec& m, const VecX& q,
                          const RobotSpec& spec) {
  double len = m.rest_length;
  for (const MomentArm& a : m.arms)
    len -= a.sign * a.arm * q[spec.joint_coord(a.joint)];
  return len;
}

double muscle_path_velocity(const MuscleSpec& m, const VecX& qdot,
                            const RobotSpec& spec) {
  double rate = 0.0;
  for (const MomentArm& a : m.arms)
    rate -= a.sign * a.arm * qdot[spec.joint_coord(a.joint)];
  return rate;
}

double muscle_force(const MuscleSpec& m, double path_length,
                    double path_velocity, double f_act) {
  const double demand = m.act_sign * f_act;
  double tension = demand + m.stiffness * (path_length - m.rest_length) +
                   m.damping * path_velocity;
  if (m.unilateral && tension < 0.0) tension = 0.0;
  return tension;
}

void muscle_to_generalized(const MuscleSpec& m, double tension,
                           const RobotSpec& spec, VecX& tau) {
  for (const MomentArm& a : m.arms)
    tau[spec.joint_coord(a.joint)] += a.sign * a.arm * tension;
}

double joint_spring_torque(const JointSpringSpec& s, double angle,
                           double rate) {
  return -s.stiffness * (angle - s.rest_angle) - s.damping * rate;
}

double joint_limit_torque(const JointSpec& joint, double angle,
                          double stiffness) {
  if (angle > joint.upper_limit) return -stiffness * (angle - joint.upper_limit);
  if (angle < joint.lower_limit) return -stiffness * (angle - joint.lower_limit);
  return 0.0;
}

double elastic_energy(const RobotSpec& spec,
                      const std::vector<MuscleSpec>& muscles,
                      const std::vector<JointSpringSpec>& springs,
                      const VecX& q, double limit_stiffness) {
  double e = 0.0;
  for (const MuscleSpec& m : muscles) {
    double stretch = muscle_path_length(m, q, spec) - m.rest_length;
    // A slack tension-only tendon stores nothing.
    if (m.unilateral && stretch < 0.0) stretch = 0.0;
    e += 0.5 * m.stiffness * stretch * stretch;
  }
  for (const JointSpringSpec& s : springs) {
    const double d = q[spec.joint_coord(s.joint)] - s.rest_angle;
    e += 0.5 * s.stiffness * d * d;
  }
  for (size_t j = 0; j < spec.joints.size(); ++j) {
    const double a = q[spec.joint_coord(static_cast<int>(j))];
    double excess = 0.0;
    if (a > spec.joints[j].upper_limit) excess = a - spec.joints[j].upper_limit;
    if (a < spec.joints[j].lower_limit) excess = spec.joints[j].lower_limit - a;
    e += 0.5 * limit_stiffness * excess * excess;
  }
  return e;
}

}  // namespace sagitta
