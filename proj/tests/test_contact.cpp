#include "sagitta/contact.hpp"

#include <random>

#include "doctest.h"
#include "sagitta/dynamics.hpp"

using namespace sagitta;

namespace {

RobotSpec point_mass(double mass) {
  RobotSpec spec;
  spec.base_translation = true;
  LinkSpec body;
  body.name = "body";
  body.mass = mass;
  spec.links.push_back(body);
  spec.points.push_back({"p", 0, 0.0});
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("slope transform reduces to the vertical distance on flat ground") {
  GroundSpec ground;
  const SlopeFrame f = slope_transform(ground, Vec2(3.0, 0.1));
  CHECK(f.distance == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("a point on the slope plane has zero distance") {
  GroundSpec ground;
  ground.slope_angle_deg = 3.0;
  const double a = 3.0 * M_PI / 180.0;
  const Vec2 on_plane(2.0, 2.0 * std::tan(a));
  const SlopeFrame f = slope_transform(ground, on_plane);
  CHECK(std::abs(f.distance) < 1e-12);
}

TEST_CASE("descending slope leaves (1, 0) above the plane by sin(5 deg)") {
  GroundSpec ground;
  ground.slope_angle_deg = -5.0;
  const SlopeFrame f = slope_transform(ground, Vec2(1.0, 0.0));
  CHECK(f.distance == doctest::Approx(std::sin(5.0 * M_PI / 180.0)).epsilon(1e-12));
}

TEST_CASE("no penetration means zero force") {
  GroundSpec ground;
  const ContactForce cf = contact_forces(ground, Vec2(0.0, 0.01), Vec2(1.0, -2.0));
  CHECK(cf.report.normal_force == 0.0);
  CHECK(cf.report.tangential_force == 0.0);
  CHECK(!cf.report.in_contact);
  CHECK(cf.force.norm() == 0.0);
}

TEST_CASE("fast sliding saturates friction at mu times the normal force") {
  GroundSpec ground;
  const double depth = 1e-3;
  const ContactForce cf =
      contact_forces(ground, Vec2(0.0, -depth), Vec2(100.0 * ground.friction_vel_eps, 0.0));
  const double fn = cf.report.normal_force;
  CHECK(fn == doctest::Approx(ground.normal_stiffness * depth).epsilon(1e-12));
  CHECK(std::abs(cf.report.tangential_force) ==
        doctest::Approx(ground.friction * fn).epsilon(0.01));
  CHECK(cf.report.tangential_force < 0.0);  // opposes forward sliding
}

TEST_CASE("unilaterality and friction cone hold over random queries") {
  GroundSpec ground;
  ground.slope_angle_deg = -3.0;
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> upos(-0.05, 0.05), uvel(-3.0, 3.0);
  for (int i = 0; i < 5000; ++i) {
    const ContactForce cf = contact_forces(ground, Vec2(upos(rng), upos(rng)),
                                           Vec2(uvel(rng), uvel(rng)));
    CHECK(cf.report.normal_force >= 0.0);
    CHECK(std::abs(cf.report.tangential_force) <=
          ground.friction * cf.report.normal_force + 1e-9);
    if (!cf.report.in_contact) CHECK(cf.report.normal_force == 0.0);
  }
}

TEST_CASE("a dropped point mass never rebounds above its release height") {
  const RobotSpec spec = point_mass(1.0);
  GroundSpec ground;  // defaults
  SimState s;
  s.q = (VecX(2) << 0.0, 0.5).finished();
  s.qdot = VecX::Zero(2);
  const auto forces = [&](const SimState& st) {
    const Kinematics kin = forward_kinematics(spec, st.q, st.qdot);
    const ContactForce cf = contact_forces(
        ground, point_position(spec, kin, spec.points[0]),
        point_velocity(spec, kin, spec.points[0]));
    VecX tau = VecX::Zero(2);
    tau += point_jacobian(spec, kin, spec.points[0]).transpose() * cf.force;
    return tau;
  };
  double max_height_after_impact = -1.0;
  bool touched = false;
  for (int i = 0; i < 4000; ++i) {
    s = step(spec, s, forces, 1e-3);
    if (s.q[1] <= 0.0) touched = true;
    if (touched) max_height_after_impact = std::max(max_height_after_impact, s.q[1]);
  }
  CHECK(touched);
  CHECK(max_height_after_impact <= 0.5);
}

TEST_CASE("resting penetration of the robot's weight is below 2 mm") {
  // Static bound: full weight on one point at default stiffness.
  GroundSpec ground;
  const double weight = 6.328 * 9.81;
  CHECK(weight / ground.normal_stiffness < 2e-3);
}

TEST_CASE("ground spec validation rejects bad parameters") {
  GroundSpec g;
  g.normal_stiffness = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GroundSpec{};
  g.slope_angle_deg = 95.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GroundSpec{};
  g.friction_vel_eps = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
