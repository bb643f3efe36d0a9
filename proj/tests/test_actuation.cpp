#include "sagitta/actuation.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "sagitta/models.hpp"

using namespace sagitta;

TEST_CASE("both action spaces enumerate exactly 24 command sets") {
  CHECK(build_passive_model().actions.size() == 24);
  CHECK(build_torque_model().actions.size() == 24);
}

TEST_CASE("passive action (0,0,0) decodes to the table row and its mirror") {
  const ModelBundle b = build_passive_model();
  const LegCommands cmd = decode_action(b.actions, Action{{0, 0, 0}});
  CHECK(cmd.right[0] == 400.0);
  CHECK(cmd.right[1] == 0.0);
  CHECK(cmd.right[2] == 24.0);
  CHECK(cmd.left[0] == -400.0);
  CHECK(cmd.left[1] == -400.0);
  CHECK(cmd.left[2] == -24.0);
}

TEST_CASE("torque action (1,1,1) decodes with reversed-index mirroring") {
  const ModelBundle b = build_torque_model();
  const LegCommands cmd = decode_action(b.actions, Action{{1, 1, 1}});
  CHECK(cmd.right[0] == 502.0);
  CHECK(cmd.right[1] == 0.0);
  CHECK(cmd.right[2] == 0.0);
  CHECK(cmd.left[0] == -502.0);
  CHECK(cmd.left[1] == 0.0);
  CHECK(cmd.left[2] == 251.0);
}

TEST_CASE("decoding is a bijection and mirroring is involutive") {
  for (const ModelBundle& b : {build_passive_model(), build_torque_model()}) {
    std::set<std::vector<double>> seen;
    for (int flat = 0; flat < b.actions.size(); ++flat) {
      const Action a{b.actions.unflatten(flat)};
      CHECK(b.actions.flatten(a.indices) == flat);
      const Action m = mirror_action(b.actions, a);
      const Action mm = mirror_action(b.actions, m);
      CHECK(mm.indices == a.indices);
      // Mirroring swaps the two legs' command sets.
      const LegCommands c = decode_action(b.actions, a);
      const LegCommands cm = decode_action(b.actions, m);
      CHECK(c.right == cm.left);
      CHECK(c.left == cm.right);
      std::vector<double> combined = c.right;
      combined.insert(combined.end(), c.left.begin(), c.left.end());
      seen.insert(combined);
    }
    CHECK(static_cast<int>(seen.size()) == 24);
  }
}

TEST_CASE("out-of-range action indices are rejected") {
  const ModelBundle b = build_passive_model();
  CHECK_THROWS_AS(decode_action(b.actions, Action{{3, 0, 0}}), std::out_of_range);
  CHECK_THROWS_AS(decode_action(b.actions, Action{{0, 0}}), std::out_of_range);
  CHECK_THROWS_AS(b.actions.unflatten(24), std::out_of_range);
}

TEST_CASE("decoded commands never exceed the candidate extrema") {
  for (const ModelBundle& b : {build_passive_model(), build_torque_model()}) {
    for (int flat = 0; flat < b.actions.size(); ++flat) {
      const LegCommands c =
          decode_action(b.actions, Action{b.actions.unflatten(flat)});
      for (int ch = 0; ch < b.actions.channels(); ++ch) {
        double lo = 1e300, hi = -1e300;
        for (double v : b.actions.candidates[ch]) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        CHECK(c.right[ch] >= lo);
        CHECK(c.right[ch] <= hi);
        CHECK(c.left[ch] >= lo);
        CHECK(c.left[ch] <= hi);
      }
    }
  }
}

TEST_CASE("a stretched vastus tendon carries its spring tension") {
  const ModelBundle b = build_passive_model();
  const MuscleSpec& vas = b.muscles[0];
  const double tension =
      muscle_force(vas, vas.rest_length + 0.05, 0.0, 0.0);
  CHECK(tension == doctest::Approx(8000.0 * 0.05).epsilon(1e-12));
}

TEST_CASE("gastrocnemius is tension-only") {
  const ModelBundle b = build_passive_model();
  const MuscleSpec& gas = b.muscles[2];
  // Slack path plus zero demand would be compressive: clamps to zero.
  CHECK(muscle_force(gas, gas.rest_length - 0.05, 0.0, 0.0) == 0.0);
  // A pull demand of 400 N (table value -400) transmits.
  CHECK(muscle_force(gas, gas.rest_length, 0.0, -400.0) ==
        doctest::Approx(400.0));
}

TEST_CASE("muscle at rest with no demand produces no force") {
  const ModelBundle b = build_passive_model();
  for (const MuscleSpec& m : b.muscles)
    CHECK(muscle_force(m, m.rest_length, 0.0, 0.0) == 0.0);
}

TEST_CASE("vastus tension extends the knee with a 0.05 m arm") {
  const ModelBundle b = build_passive_model();
  const MuscleSpec& vas = b.muscles[0];
  VecX tau = VecX::Zero(10);
  muscle_to_generalized(vas, 400.0, b.robot, tau);
  const int knee = b.robot.joint_coord(b.robot.find_joint("knee_r"));
  // Knee flexion is positive, so 20 N m of extension is -20 on the coordinate.
  CHECK(tau[knee] == doctest::Approx(-20.0).epsilon(1e-12));
  CHECK(tau.cwiseAbs().sum() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("gastrocnemius tension flexes the knee and plantarflexes the ankle") {
  const ModelBundle b = build_passive_model();
  const MuscleSpec& gas = b.muscles[2];
  VecX tau = VecX::Zero(10);
  muscle_to_generalized(gas, 400.0, b.robot, tau);
  const int knee = b.robot.joint_coord(b.robot.find_joint("knee_r"));
  const int ankle = b.robot.joint_coord(b.robot.find_joint("ankle_r"));
  CHECK(tau[knee] == doctest::Approx(12.0).epsilon(1e-12));    // flexion
  CHECK(tau[ankle] == doctest::Approx(-20.0).epsilon(1e-12));  // plantarflexion
}

TEST_CASE("zero tension contributes nothing") {
  const ModelBundle b = build_passive_model();
  VecX tau = VecX::Zero(10);
  for (const MuscleSpec& m : b.muscles) muscle_to_generalized(m, 0.0, b.robot, tau);
  CHECK(tau.norm() == 0.0);
}

TEST_CASE("moment arms and path kinematics are energetically consistent") {
  // The power a tendon delivers to the joints equals -tension * path rate.
  const ModelBundle b = build_passive_model();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    VecX q(10), qd(10);
    for (int i = 0; i < 10; ++i) {
      q[i] = u(rng);
      qd[i] = u(rng);
    }
    for (const MuscleSpec& m : b.muscles) {
      VecX tau = VecX::Zero(10);
      const double tension = 123.0;
      muscle_to_generalized(m, tension, b.robot, tau);
      const double joint_power = tau.dot(qd);
      const double path_power =
          -tension * muscle_path_velocity(m, qd, b.robot);
      CHECK(joint_power == doctest::Approx(path_power).epsilon(1e-9));
    }
  }
}

TEST_CASE("ankle spring torque at +0.1 rad is -10 N m") {
  const ModelBundle b = build_passive_model();
  const JointSpringSpec& ankle = b.springs[0];
  CHECK(joint_spring_torque(ankle, 0.1, 0.0) == doctest::Approx(-10.0));
  CHECK(joint_spring_torque(ankle, 0.0, 0.0) == 0.0);
}

TEST_CASE("foot spring torque at -0.2 rad is +2 N m") {
  const ModelBundle b = build_passive_model();
  const JointSpringSpec& foot = b.springs[1];
  CHECK(joint_spring_torque(foot, -0.2, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("joint limit penalty engages only outside the range") {
  const ModelBundle b = build_passive_model();
  const JointSpec& j = b.robot.joints[0];
  CHECK(joint_limit_torque(j, 0.0, 500.0) == 0.0);
  CHECK(joint_limit_torque(j, 2.5, 500.0) == 0.0);
  CHECK(joint_limit_torque(j, 2.7, 500.0) ==
        doctest::Approx(-500.0 * (2.7 - 2.6)).epsilon(1e-9));
  CHECK(joint_limit_torque(j, -3.0, 500.0) ==
        doctest::Approx(500.0 * 0.4).epsilon(1e-9));
}

TEST_CASE("unilateral muscles never push across random states and actions") {
  const ModelBundle b = build_passive_model();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uq(-2.0, 2.0), uv(-5.0, 5.0);
  std::uniform_int_distribution<int> ua(0, 1);
  const MuscleSpec& gas = b.muscles[2];
  for (int i = 0; i < 10000; ++i) {
    const double len = gas.rest_length + 0.2 * uq(rng);
    const double vel = uv(rng);
    const double action = gas.act_sign < 0 ? (ua(rng) ? -400.0 : 0.0) : 0.0;
    CHECK(muscle_force(gas, len, vel, action) >= 0.0);
  }
}
