#include "sagitta/models.hpp"

#include "doctest.h"

using namespace sagitta;

TEST_CASE("total mass is the segment-table sum") {
  const ModelBundle b = build_passive_model();
  CHECK(total_mass(b.robot) ==
        doctest::Approx(2.77 + 2 * (1.4 + 0.22 + 0.076 + 0.083)).epsilon(1e-12));
  CHECK(total_mass(b.robot) == doctest::Approx(6.328).epsilon(1e-12));
}

TEST_CASE("passive model carries the quasi-direct-drive hip rotor inertia") {
  const ModelBundle b = build_passive_model();
  for (const char* hip : {"hip_r", "hip_l"})
    CHECK(b.robot.joints[b.robot.find_joint(hip)].rotor_inertia ==
          doctest::Approx(1.22e-2));
  for (const char* j : {"knee_r", "ankle_r", "foot_r"})
    CHECK(b.robot.joints[b.robot.find_joint(j)].rotor_inertia == 0.0);
}

TEST_CASE("passive model elastic parameters match the table") {
  const ModelBundle b = build_passive_model();
  CHECK(b.muscles[0].stiffness == 8000.0);
  CHECK(b.muscles[0].damping == 100.0);
  CHECK(b.muscles[2].stiffness == 3000.0);
  CHECK(b.muscles[2].damping == 100.0);
  CHECK(b.springs[0].stiffness == 100.0);  // ankle
  CHECK(b.springs[0].damping == 0.1);
  CHECK(b.springs[1].stiffness == 10.0);  // foot
  CHECK(b.springs[1].damping == 0.2);
}

TEST_CASE("torque model puts the high-reduction rotor inertia on every joint") {
  const ModelBundle b = build_torque_model();
  for (const char* j : {"hip_r", "knee_r", "ankle_r", "hip_l", "knee_l", "ankle_l"}) {
    CHECK(b.robot.joints[b.robot.find_joint(j)].rotor_inertia ==
          doctest::Approx(22.83));
    CHECK(b.robot.joints[b.robot.find_joint(j)].viscous_damping > 0.0);
  }
  // Free foot joint: no actuator, no spring, light damping only.
  CHECK(b.robot.joints[b.robot.find_joint("foot_r")].rotor_inertia == 0.0);
  CHECK(b.robot.joints[b.robot.find_joint("foot_r")].viscous_damping ==
        doctest::Approx(0.01));
  CHECK(b.muscles.empty());
  CHECK(b.springs.empty());
}

TEST_CASE("torque model ankle candidates are {+251, 0}") {
  const ModelBundle b = build_torque_model();
  CHECK(b.actions.candidates[2] == std::vector<double>{251.0, 0.0});
}

TEST_CASE("both builders pass validation with the two known warnings") {
  for (const ModelBundle& b : {build_passive_model(), build_torque_model()}) {
    const ValidationReport rep = validate(b);
    CHECK(rep.ok());
    REQUIRE(rep.warnings.size() == 2);
    CHECK(rep.warnings[0].find("6.38") != std::string::npos);
    CHECK(rep.warnings[1].find("0.78") != std::string::npos);
  }
}

TEST_CASE("both bundles expose 6 actuators, 24 actions, 10 coordinates") {
  for (const ModelBundle& b : {build_passive_model(), build_torque_model()}) {
    CHECK(b.actuator_count() == 6);
    CHECK(b.actions.size() == 24);
    CHECK(b.robot.dof() == 10);
  }
}

TEST_CASE("the two models share identical kinematic and inertial structure") {
  const ModelBundle p = build_passive_model();
  const ModelBundle t = build_torque_model();
  REQUIRE(p.robot.links.size() == t.robot.links.size());
  for (size_t i = 0; i < p.robot.links.size(); ++i) {
    CHECK(p.robot.links[i].name == t.robot.links[i].name);
    CHECK(p.robot.links[i].length == t.robot.links[i].length);
    CHECK(p.robot.links[i].mass == t.robot.links[i].mass);
    CHECK(p.robot.links[i].inertia == t.robot.links[i].inertia);
    CHECK(p.robot.links[i].com_offset == t.robot.links[i].com_offset);
  }
  REQUIRE(p.robot.joints.size() == t.robot.joints.size());
  for (size_t j = 0; j < p.robot.joints.size(); ++j) {
    CHECK(p.robot.joints[j].name == t.robot.joints[j].name);
    CHECK(p.robot.joints[j].parent_link == t.robot.joints[j].parent_link);
    CHECK(p.robot.joints[j].child_link == t.robot.joints[j].child_link);
    CHECK(p.robot.joints[j].parent_along == t.robot.joints[j].parent_along);
    CHECK(p.robot.joints[j].axis_sign == t.robot.joints[j].axis_sign);
    CHECK(p.robot.joints[j].mount_angle == t.robot.joints[j].mount_angle);
  }
}

TEST_CASE("builders are deterministic") {
  const std::string a = bundle_to_config(build_passive_model()).serialize();
  const std::string b = bundle_to_config(build_passive_model()).serialize();
  CHECK(a == b);
}

TEST_CASE("standing pose stacks the segments to 0.828 m") {
  const ModelBundle b = build_passive_model();
  CHECK(b.initial_pose.pelvis_z == doctest::Approx(0.345 + 0.447 + 0.036));
}

TEST_CASE("bundle round-trips through the config document") {
  const ModelBundle b = build_torque_model();
  const config::Document doc = bundle_to_config(b);
  const ModelBundle back = bundle_from_config(doc);
  CHECK(bundle_to_config(back).serialize() == doc.serialize());
}

TEST_CASE("config overrides perturb individual table values") {
  config::Document doc = bundle_to_config(build_passive_model());
  doc.set("link.femur_r", "mass", 1.5);
  doc.set("muscle.vas_r", "stiffness", 9000.0);
  const ModelBundle b = bundle_from_config(doc);
  CHECK(b.robot.links[b.robot.find_link("femur_r")].mass == 1.5);
  CHECK(b.muscles[0].stiffness == 9000.0);
  // Everything else untouched.
  CHECK(b.robot.links[b.robot.find_link("femur_l")].mass == 1.4);
  const ValidationReport rep = validate(b);
  CHECK(rep.ok());
}

TEST_CASE("unknown model name is rejected") {
  CHECK_THROWS_AS(build_model("hexapod"), std::invalid_argument);
}
