#pragma once

#include <cstdint>

#include "sagitta/contact.hpp"
#include "sagitta/csv.hpp"
#include "sagitta/dynamics.hpp"
#include "sagitta/models.hpp"

namespace sagitta {

// Reward weights: r = w_v * r_v + w_h * r_h with the speed term maximized at
// the target velocity and the height term penalizing a low pelvis. With
// w_v = 1 / (v_d - v0) the maximum per-step reward is 1.
struct RewardConfig {
  double target_velocity = 1.5;  // v_d, m/s
  double stall_velocity = 0.2;   // v0, m/s
  double min_height = 0.7;       // z0, m
  double w_h = 1.0;
  double w_v = 1.0 / (1.5 - 0.2);

  void validate() const;
};

RewardConfig make_reward_config(double target_velocity);

struct RewardTerms {
  double total = 0.0;
  double velocity_term = 0.0;  // r_v, unweighted
  double height_term = 0.0;    // r_h, unweighted
};

RewardTerms reward(double xdot, double z, const RewardConfig& cfg);

// A control step holds the decoded commands for substeps * dt seconds of
// physics (zero-order hold); 500 steps of 50 ms make one 25 s episode.
struct EpisodeConfig {
  double control_dt = 0.05;  // s
  int steps_per_episode = 500;
  int physics_substeps = 50;
  GroundSpec ground;

  double physics_dt() const { return control_dt / physics_substeps; }
  void validate() const;
};

// Fixed observation layout (23 values): pelvis height, pelvis velocities,
// 8 joint angles, 8 joint rates, 4 contact flags. Pelvis x is excluded so
// observations are translation invariant.
int observation_size();
std::vector<std::string> observation_names(const ModelBundle& bundle);

struct StepInfo {
  LegCommands commands;
  std::array<bool, 4> contact;               // heel_r, toe_r, heel_l, toe_l
  std::vector<double> actuator_work;         // J, per actuator this step
  double work = 0.0;                         // J, total this step
};

class Environment {
 public:
  Environment(ModelBundle bundle, EpisodeConfig episode, RewardConfig reward);

  // Deterministic per seed: standing pose, antiphase hip split, seeded
  // joint-angle noise, muscles at rest. Returns the initial observation.
  VecX reset(uint64_t seed);

  struct StepResult {
    VecX obs;
    RewardTerms reward;
    StepInfo info;
  };
  StepResult step(const Action& action);

  VecX observe() const;
  const SimState& state() const { return state_; }
  const ModelBundle& bundle() const { return bundle_; }
  const EpisodeConfig& episode_config() const { return episode_; }
  const RewardConfig& reward_config() const { return reward_; }
  int steps_done() const { return steps_done_; }

  // Total generalized forces at a state under held commands; exposed for
  // force-level tests.
  VecX assemble_forces(const SimState& s, const LegCommands& cmds,
                       std::vector<double>* work_rates = nullptr,
                       std::array<bool, 4>* contact = nullptr) const;

  // Kinetic + gravitational + elastic energy of the current state.
  double total_energy() const;

 private:
  ModelBundle bundle_;
  EpisodeConfig episode_;
  RewardConfig reward_;
  SimState state_;
  int steps_done_ = 0;
};

// One logged control step; written one row per step to the episode CSV.
struct TrajectoryRow {
  double t = 0.0;
  VecX q, qdot;
  std::vector<int> action;
  LegCommands commands;
  RewardTerms reward;
  std::array<bool, 4> contact{};
  double work = 0.0;
  std::vector<double> actuator_work;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  double cumulative_reward() const;
};

csv::Table trajectory_to_table(const ModelBundle& bundle, const Trajectory& tr);
Trajectory trajectory_from_table(const csv::Table& table);

}  // namespace sagitta
