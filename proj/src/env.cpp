#include "sagitta/env.hpp"

#include <cmath>
#include <random>

namespace sagitta {

void RewardConfig::validate() const {
  if (!(target_velocity > stall_velocity))
    throw std::invalid_argument("target velocity must exceed v0");
  if (!(w_v > 0.0)) throw std::invalid_argument("w_v must be > 0");
}

RewardConfig make_reward_config(double target_velocity) {
  RewardConfig cfg;
  cfg.target_velocity = target_velocity;
  cfg.w_v = 1.0 / (target_velocity - cfg.stall_velocity);
  cfg.validate();
  return cfg;
}

RewardTerms reward(double xdot, double z, const RewardConfig& cfg) {
  RewardTerms r;
  r.velocity_term = xdot <= cfg.target_velocity
                        ? xdot - cfg.stall_velocity
                        : 2.0 * cfg.target_velocity - xdot - cfg.stall_velocity;
  r.height_term = z < cfg.min_height ? -1.0 : 0.0;
  r.total = cfg.w_v * r.velocity_term + cfg.w_h * r.height_term;
  return r;
}

void EpisodeConfig::validate() const {
  if (!(control_dt > 0.0)) throw std::invalid_argument("control_dt must be > 0");
  if (steps_per_episode < 1 || physics_substeps < 1)
    throw std::invalid_argument("episode step counts must be >= 1");
  ground.validate();
}

int observation_size() { return 23; }

std::vector<std::string> observation_names(const ModelBundle& bundle) {
  std::vector<std::string> names = {"z", "xdot", "zdot"};
  for (const JointSpec& j : bundle.robot.joints) names.push_back("q_" + j.name);
  for (const JointSpec& j : bundle.robot.joints) names.push_back("qd_" + j.name);
  for (const char* p : {"heel_r", "toe_r", "heel_l", "toe_l"})
    names.push_back(std::string("contact_") + p);
  return names;
}

Environment::Environment(ModelBundle bundle, EpisodeConfig episode,
                         RewardConfig reward)
    : bundle_(std::move(bundle)), episode_(episode), reward_(reward) {
  episode_.validate();
  reward_.validate();
  const ValidationReport rep = validate(bundle_);
  if (!rep.ok())
    throw std::invalid_argument("invalid model bundle: " + rep.errors.front());
  state_.q = VecX::Zero(bundle_.robot.dof());
  state_.qdot = VecX::Zero(bundle_.robot.dof());
}

VecX Environment::reset(uint64_t seed) {
  const int n = bundle_.robot.dof();
  state_.q = VecX::Zero(n);
  state_.qdot = VecX::Zero(n);
  state_.t = 0.0;
  steps_done_ = 0;

  state_.q[1] = bundle_.initial_pose.pelvis_z;
  state_.q[bundle_.robot.joint_coord(bundle_.robot.find_joint("hip_r"))] +=
      bundle_.initial_pose.hip_split;
  state_.q[bundle_.robot.joint_coord(bundle_.robot.find_joint("hip_l"))] -=
      bundle_.initial_pose.hip_split;

  if (bundle_.initial_pose.joint_noise_std > 0.0) {
    std::mt19937_64 rng(config::derive_seed(seed, "env.reset"));
    std::normal_distribution<double> noise(0.0,
                                           bundle_.initial_pose.joint_noise_std);
    for (size_t j = 0; j < bundle_.robot.joints.size(); ++j)
      state_.q[bundle_.robot.joint_coord(static_cast<int>(j))] += noise(rng);
  }
  return observe();
}

VecX Environment::assemble_forces(const SimState& s, const LegCommands& cmds,
                                  std::vector<double>* work_rates,
                                  std::array<bool, 4>* contact) const {
  const RobotSpec& robot = bundle_.robot;
  const int n = robot.dof();
  VecX tau = VecX::Zero(n);
  if (work_rates) work_rates->assign(bundle_.actuator_count(), 0.0);

  // Action channels: muscles or direct joint torques, right then left.
  for (size_t c = 0; c < bundle_.bindings.size(); ++c) {
    const ChannelBinding& bind = bundle_.bindings[c];
    const double cmd_right = cmds.right[c];
    const double cmd_left = cmds.left[c];
    for (int side = 0; side < 2; ++side) {
      const double cmd = side == 0 ? cmd_right : cmd_left;
      const int target = side == 0 ? bind.right_target : bind.left_target;
      double rate = 0.0;
      if (bind.kind == ChannelBinding::Kind::kMuscle) {
        const MuscleSpec& m = bundle_.muscles[target];
        const double len = muscle_path_length(m, s.q, robot);
        const double vel = muscle_path_velocity(m, s.qdot, robot);
        const double tension = muscle_force(m, len, vel, cmd);
        muscle_to_generalized(m, tension, robot, tau);
        rate = std::abs(tension * vel);
      } else {
        const int coord = robot.joint_coord(target);
        tau[coord] += cmd;
        rate = std::abs(cmd * s.qdot[coord]);
      }
      if (work_rates) (*work_rates)[2 * c + side] = rate;
    }
  }

  for (const JointSpringSpec& spring : bundle_.springs) {
    const int coord = robot.joint_coord(spring.joint);
    tau[coord] += joint_spring_torque(spring, s.q[coord], s.qdot[coord]);
  }

  for (size_t j = 0; j < robot.joints.size(); ++j) {
    const JointSpec& joint = robot.joints[j];
    const int coord = robot.joint_coord(static_cast<int>(j));
    tau[coord] -= joint.viscous_damping * s.qdot[coord];
    tau[coord] += joint_limit_torque(joint, s.q[coord], bundle_.limit_stiffness);
  }

  const Kinematics kin = forward_kinematics(robot, s.q, s.qdot);
  for (size_t p = 0; p < robot.points.size(); ++p) {
    const PointAttachment& point = robot.points[p];
    const Vec2 pos = point_position(robot, kin, point);
    const Vec2 vel = point_velocity(robot, kin, point);
    const ContactForce cf = contact_forces(episode_.ground, pos, vel);
    if (contact && p < 4) (*contact)[p] = cf.report.in_contact;
    if (cf.report.in_contact) {
      const MatX jac = point_jacobian(robot, kin, point);
      tau.noalias() += jac.transpose() * cf.force;
    }
  }
  return tau;
}

VecX Environment::observe() const {
  VecX obs(observation_size());
  obs[0] = state_.q[1];
  obs[1] = state_.qdot[0];
  obs[2] = state_.qdot[1];
  const int nj = static_cast<int>(bundle_.robot.joints.size());
  for (int j = 0; j < nj; ++j) {
    obs[3 + j] = state_.q[bundle_.robot.joint_coord(j)];
    obs[3 + nj + j] = state_.qdot[bundle_.robot.joint_coord(j)];
  }
  const Kinematics kin = forward_kinematics(bundle_.robot, state_.q, state_.qdot);
  for (int p = 0; p < 4; ++p) {
    const PointAttachment& point = bundle_.robot.points[p];
    const ContactForce cf = contact_forces(
        episode_.ground, point_position(bundle_.robot, kin, point),
        point_velocity(bundle_.robot, kin, point));
    obs[3 + 2 * nj + p] = cf.report.in_contact ? 1.0 : 0.0;
  }
  return obs;
}

Environment::StepResult Environment::step(const Action& action) {
  const LegCommands cmds = decode_action(bundle_.actions, action);
  const double dt = episode_.physics_dt();
  StepInfo info;
  info.commands = cmds;
  info.actuator_work.assign(bundle_.actuator_count(), 0.0);
  info.contact = {false, false, false, false};

  std::vector<double> rates;
  std::array<bool, 4> contact_now{};
  for (int sub = 0; sub < episode_.physics_substeps; ++sub) {
    const auto callback = [&](const SimState& s) {
      return assemble_forces(s, cmds, &rates, &contact_now);
    };
    state_ = sagitta::step(bundle_.robot, state_, callback, dt);
    for (size_t a = 0; a < rates.size(); ++a)
      info.actuator_work[a] += rates[a] * dt;
  }
  info.contact = contact_now;
  for (double w : info.actuator_work) info.work += w;

  StepResult result;
  result.obs = observe();
  // Contact flags in the observation are evaluated at the post-step state;
  // keep the logged flags consistent with what the agent sees.
  for (int p = 0; p < 4; ++p)
    info.contact[p] = result.obs[observation_size() - 4 + p] != 0.0;
  result.reward = reward(state_.qdot[0], state_.q[1], reward_);
  result.info = info;
  ++steps_done_;
  return result;
}

double Environment::total_energy() const {
  return mechanical_energy(bundle_.robot, state_) +
         elastic_energy(bundle_.robot, bundle_.muscles, bundle_.springs,
                        state_.q, bundle_.limit_stiffness);
}

double Trajectory::cumulative_reward() const {
  double sum = 0.0;
  for (const TrajectoryRow& r : rows) sum += r.reward.total;
  return sum;
}

csv::Table trajectory_to_table(const ModelBundle& bundle, const Trajectory& tr) {
  csv::Table t;
  t.columns.push_back("t");
  t.columns.push_back("q_base_x");
  t.columns.push_back("q_base_z");
  for (const JointSpec& j : bundle.robot.joints) t.columns.push_back("q_" + j.name);
  t.columns.push_back("qd_base_x");
  t.columns.push_back("qd_base_z");
  for (const JointSpec& j : bundle.robot.joints)
    t.columns.push_back("qd_" + j.name);
  for (int c = 0; c < bundle.actions.channels(); ++c)
    t.columns.push_back("a_" + bundle.actions.channel_names[c]);
  for (int c = 0; c < bundle.actions.channels(); ++c)
    t.columns.push_back("cmd_r_" + bundle.actions.channel_names[c]);
  for (int c = 0; c < bundle.actions.channels(); ++c)
    t.columns.push_back("cmd_l_" + bundle.actions.channel_names[c]);
  t.columns.push_back("reward");
  t.columns.push_back("r_v");
  t.columns.push_back("r_h");
  for (const char* p : {"heel_r", "toe_r", "heel_l", "toe_l"})
    t.columns.push_back(std::string("contact_") + p);
  t.columns.push_back("work");
  for (const std::string& a : bundle.actuator_names)
    t.columns.push_back("work_" + a);

  for (const TrajectoryRow& row : tr.rows) {
    std::vector<double> r;
    r.push_back(row.t);
    for (int i = 0; i < row.q.size(); ++i) r.push_back(row.q[i]);
    for (int i = 0; i < row.qdot.size(); ++i) r.push_back(row.qdot[i]);
    for (int a : row.action) r.push_back(a);
    for (double c : row.commands.right) r.push_back(c);
    for (double c : row.commands.left) r.push_back(c);
    r.push_back(row.reward.total);
    r.push_back(row.reward.velocity_term);
    r.push_back(row.reward.height_term);
    for (bool c : row.contact) r.push_back(c ? 1.0 : 0.0);
    r.push_back(row.work);
    for (double w : row.actuator_work) r.push_back(w);
    t.rows.push_back(std::move(r));
  }
  return t;
}

Trajectory trajectory_from_table(const csv::Table& table) {
  Trajectory tr;
  const int t_col = table.require_col("t");
  const int qx = table.require_col("q_base_x");
  const int reward_col = table.require_col("reward");
  const int rv_col = table.require_col("r_v");
  const int rh_col = table.require_col("r_h");
  const int contact0 = table.require_col("contact_heel_r");
  const int work_col = table.require_col("work");
  // Joint columns sit between the base columns and the action columns.
  int qd_start = table.require_col("qd_base_x");
  const int nq = qd_start - qx;
  int action_start = -1;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i].rfind("a_", 0) == 0) {
      action_start = static_cast<int>(i);
      break;
    }
  }
  if (action_start < 0) throw std::runtime_error("trajectory has no actions");
  const int n_channels = table.require_col("cmd_r_" + table.columns[action_start]
                                                          .substr(2)) -
                         action_start;
  for (const auto& raw : table.rows) {
    TrajectoryRow row;
    row.t = raw[t_col];
    row.q = VecX(nq);
    row.qdot = VecX(nq);
    for (int i = 0; i < nq; ++i) {
      row.q[i] = raw[qx + i];
      row.qdot[i] = raw[qd_start + i];
    }
    for (int c = 0; c < n_channels; ++c) {
      row.action.push_back(static_cast<int>(raw[action_start + c]));
      row.commands.right.push_back(raw[action_start + n_channels + c]);
      row.commands.left.push_back(raw[action_start + 2 * n_channels + c]);
    }
    row.reward.total = raw[reward_col];
    row.reward.velocity_term = raw[rv_col];
    row.reward.height_term = raw[rh_col];
    for (int p = 0; p < 4; ++p) row.contact[p] = raw[contact0 + p] != 0.0;
    row.work = raw[work_col];
    for (size_t i = work_col + 1; i < raw.size(); ++i)
      row.actuator_work.push_back(raw[i]);
    tr.rows.push_back(std::move(row));
  }
  return tr;
}

}  // namespace sagitta
