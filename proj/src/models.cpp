#include "sagitta/models.hpp"

#include <cmath>
#include <sstream>

namespace sagitta {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Segment parameters shared by both models (lengths between joints, masses,
// inertias about each center of mass). Pelvis pitch inertia is realized as a
// locked degree of freedom, not a numeric value.
constexpr double kPelvisMass = 2.77;
constexpr double kFemurLength = 0.345, kFemurMass = 1.4, kFemurInertia = 1.1e-2;
constexpr double kTibiaLength = 0.447, kTibiaMass = 2.2e-1, kTibiaInertia = 3.0e-3;
constexpr double kAnkleLength = 0.036, kAnkleMass = 7.6e-2, kAnkleInertia = 6.1e-5;
constexpr double kToeLength = 0.072, kToeMass = 8.3e-2, kToeInertia = 9.0e-5;

constexpr double kHipRotorPassive = 1.22e-2;  // 6:1 quasi-direct drive
constexpr double kRotorTorqueModel = 22.83;   // 251:1 reduction, all joints
constexpr double kTorqueModelViscosity = 5.0; // N m s / rad at actuated joints
constexpr double kFreeFootViscosity = 0.01;   // N m s / rad, torque-model foot

constexpr double kJointRange = 2.6;  // rad, soft penalty beyond +-range

// Muscle-tendon elasticity and the passive rotational springs.
constexpr double kVasStiffness = 8000.0, kVasDamping = 100.0;
constexpr double kGasStiffness = 3000.0, kGasDamping = 100.0;
constexpr double kAnkleSpringK = 100.0, kAnkleSpringC = 0.1;
constexpr double kFootSpringK = 10.0, kFootSpringC = 0.2;

// Constant moment arms (wire routing of the physical robot is not modeled).
constexpr double kVasKneeArm = 0.05;
constexpr double kGasKneeArm = 0.03;
constexpr double kGasAnkleArm = 0.05;
constexpr double kVasRestLength = 0.30;
constexpr double kGasRestLength = 0.40;

LinkSpec link(const std::string& name, double length, double mass,
              double inertia) {
  LinkSpec l;
  l.name = name;
  l.length = length;
  l.mass = mass;
  l.inertia = inertia;
  l.com_offset = length / 2.0;  // per-link value, config-overridable
  return l;
}

// One leg: hip -> femur -> knee -> tibia -> ankle -> ankle link -> foot ->
// toe link. Sign conventions (documented in the config schema): hip flexion
// (femur forward) positive, knee flexion positive, ankle dorsiflexion
// positive. The toe link mounts at +90 deg so all joint angles zero puts the
// leg straight down with the toe segment flat along +x.
void add_leg(RobotSpec& spec, const std::string& suffix) {
  const int pelvis = 0;
  const int femur = static_cast<int>(spec.links.size());
  spec.links.push_back(link("femur_" + suffix, kFemurLength, kFemurMass, kFemurInertia));
  spec.links.push_back(link("tibia_" + suffix, kTibiaLength, kTibiaMass, kTibiaInertia));
  spec.links.push_back(link("ankle_" + suffix, kAnkleLength, kAnkleMass, kAnkleInertia));
  spec.links.push_back(link("toe_" + suffix, kToeLength, kToeMass, kToeInertia));

  JointSpec hip;
  hip.name = "hip_" + suffix;
  hip.parent_link = pelvis;
  hip.child_link = femur;
  hip.parent_along = 0.0;
  hip.axis_sign = 1.0;

  JointSpec knee;
  knee.name = "knee_" + suffix;
  knee.parent_link = femur;
  knee.child_link = femur + 1;
  knee.parent_along = kFemurLength;
  knee.axis_sign = -1.0;  // flexion (tibia backward) positive

  JointSpec ankle;
  ankle.name = "ankle_" + suffix;
  ankle.parent_link = femur + 1;
  ankle.child_link = femur + 2;
  ankle.parent_along = kTibiaLength;
  ankle.axis_sign = 1.0;  // dorsiflexion positive, plantarflexion negative

  JointSpec foot;
  foot.name = "foot_" + suffix;
  foot.parent_link = femur + 2;
  foot.child_link = femur + 3;
  foot.parent_along = kAnkleLength;
  foot.axis_sign = 1.0;
  foot.mount_angle = kPi / 2.0;  // toe segment horizontal in reference pose

  for (JointSpec* j : {&hip, &knee, &ankle, &foot}) {
    j->lower_limit = -kJointRange;
    j->upper_limit = kJointRange;
    spec.joints.push_back(*j);
  }

  spec.points.push_back({"heel_" + suffix, femur + 2, kAnkleLength});
  spec.points.push_back({"toe_" + suffix, femur + 3, kToeLength});
}

RobotSpec shared_tree() {
  RobotSpec spec;
  spec.base_translation = true;
  spec.gravity = 9.81;
  LinkSpec pelvis;
  pelvis.name = "pelvis";
  pelvis.mass = kPelvisMass;
  spec.links.push_back(pelvis);
  add_leg(spec, "r");
  add_leg(spec, "l");
  return spec;
}

MuscleSpec make_vas(const RobotSpec& spec, const std::string& suffix) {
  MuscleSpec m;
  m.name = "vas_" + suffix;
  m.stiffness = kVasStiffness;
  m.damping = kVasDamping;
  m.rest_length = kVasRestLength;
  m.unilateral = false;  // pneumatic cylinder, pushes and pulls
  m.act_sign = 1.0;
  // Knee extensor: tension drives the knee toward extension (-q).
  m.arms.push_back({spec.find_joint("knee_" + suffix), kVasKneeArm, -1.0});
  return m;
}

MuscleSpec make_gas(const RobotSpec& spec, const std::string& suffix) {
  MuscleSpec m;
  m.name = "gas_" + suffix;
  m.stiffness = kGasStiffness;
  m.damping = kGasDamping;
  m.rest_length = kGasRestLength;
  m.unilateral = true;  // wire-tendon drive, tension only
  // Table values list gastrocnemius demand as {0, -400}: magnitude of pull.
  m.act_sign = -1.0;
  // Biarticular: knee flexor (+q), ankle plantarflexor (-q).
  m.arms.push_back({spec.find_joint("knee_" + suffix), kGasKneeArm, 1.0});
  m.arms.push_back({spec.find_joint("ankle_" + suffix), kGasAnkleArm, -1.0});
  return m;
}

InitialPose standing_pose() {
  InitialPose pose;
  pose.pelvis_z = kFemurLength + kTibiaLength + kAnkleLength;  // heel on ground
  pose.hip_split = 0.05;
  pose.joint_noise_std = 0.01;
  return pose;
}

}  // namespace

ModelBundle build_passive_model() {
  ModelBundle b;
  b.name = "passive";
  b.robot = shared_tree();
  for (const char* leg : {"r", "l"}) {
    b.robot.joints[b.robot.find_joint(std::string("hip_") + leg)].rotor_inertia =
        kHipRotorPassive;
  }
  b.muscles = {make_vas(b.robot, "r"), make_vas(b.robot, "l"),
               make_gas(b.robot, "r"), make_gas(b.robot, "l")};
  for (const char* leg : {"r", "l"}) {
    b.springs.push_back({b.robot.find_joint(std::string("ankle_") + leg),
                         kAnkleSpringK, kAnkleSpringC, 0.0});
    b.springs.push_back({b.robot.find_joint(std::string("foot_") + leg),
                         kFootSpringK, kFootSpringC, 0.0});
  }
  b.actions.channel_names = {"f_vas", "f_gas", "tau_hip"};
  b.actions.candidates = {{400.0, 0.0, -400.0},
                          {0.0, -400.0},
                          {24.0, 18.0, -18.0, -24.0}};
  b.bindings = {{ChannelBinding::Kind::kMuscle, 0, 1},
                {ChannelBinding::Kind::kMuscle, 2, 3},
                {ChannelBinding::Kind::kJointTorque, b.robot.find_joint("hip_r"),
                 b.robot.find_joint("hip_l")}};
  b.actuator_names = {"vas_r", "vas_l", "gas_r", "gas_l", "hip_r", "hip_l"};
  b.initial_pose = standing_pose();
  return b;
}

ModelBundle build_torque_model() {
  ModelBundle b;
  b.name = "torque";
  b.robot = shared_tree();
  for (const char* leg : {"r", "l"}) {
    for (const char* joint : {"hip_", "knee_", "ankle_"}) {
      JointSpec& j = b.robot.joints[b.robot.find_joint(joint + std::string(leg))];
      j.rotor_inertia = kRotorTorqueModel;
      j.viscous_damping = kTorqueModelViscosity;
    }
    // The foot joint keeps neither spring nor actuator; a small damping
    // avoids an undamped flail of the toe segment.
    b.robot.joints[b.robot.find_joint(std::string("foot_") + leg)]
        .viscous_damping = kFreeFootViscosity;
  }
  b.actions.channel_names = {"tau_hip", "tau_knee", "tau_ankle"};
  b.actions.candidates = {{753.0, 502.0, -502.0, -753.0},
                          {502.0, 0.0, -251.0},
                          {251.0, 0.0}};
  b.bindings = {
      {ChannelBinding::Kind::kJointTorque, b.robot.find_joint("hip_r"),
       b.robot.find_joint("hip_l")},
      {ChannelBinding::Kind::kJointTorque, b.robot.find_joint("knee_r"),
       b.robot.find_joint("knee_l")},
      {ChannelBinding::Kind::kJointTorque, b.robot.find_joint("ankle_r"),
       b.robot.find_joint("ankle_l")}};
  b.actuator_names = {"hip_r", "hip_l", "knee_r", "knee_l", "ankle_r", "ankle_l"};
  b.initial_pose = standing_pose();
  return b;
}

ModelBundle build_model(const std::string& name) {
  if (name == "passive") return build_passive_model();
  if (name == "torque") return build_torque_model();
  throw std::invalid_argument("unknown model: " + name +
                              " (expected passive or torque)");
}

double total_mass(const RobotSpec& spec) {
  double m = 0.0;
  for (const LinkSpec& l : spec.links) m += l.mass;
  return m;
}

ValidationReport validate(const ModelBundle& bundle) {
  ValidationReport rep;
  try {
    bundle.robot.validate();
  } catch (const std::exception& e) {
    rep.errors.push_back(e.what());
    return rep;
  }
  if (bundle.robot.dof() != 10)
    rep.errors.push_back("expected 10 generalized coordinates, got " +
                         std::to_string(bundle.robot.dof()));
  if (bundle.actuator_count() != 6)
    rep.errors.push_back("expected 6 actuators, got " +
                         std::to_string(bundle.actuator_count()));
  if (bundle.actions.size() != 24)
    rep.errors.push_back("expected 24 actions, got " +
                         std::to_string(bundle.actions.size()));
  if (bundle.actions.channels() != static_cast<int>(bundle.bindings.size()))
    rep.errors.push_back("channel/binding count mismatch");
  for (const MuscleSpec& m : bundle.muscles) {
    if (!(m.stiffness > 0.0))
      rep.errors.push_back("muscle stiffness must be > 0: " + m.name);
    for (const MomentArm& a : m.arms)
      if (a.arm == 0.0) rep.errors.push_back("zero moment arm in " + m.name);
    if (m.name.rfind("gas", 0) == 0 && !m.unilateral)
      rep.errors.push_back("gastrocnemius must be tension-only: " + m.name);
  }
  for (const JointSpringSpec& s : bundle.springs) {
    if (s.stiffness < 0.0 || s.damping < 0.0)
      rep.errors.push_back("negative joint spring parameters");
  }

  // Known discrepancies between nominal prose values and the segment table;
  // the table values are authoritative.
  const double mass = total_mass(bundle.robot);
  if (std::abs(mass - 6.38) > 1e-9) {
    std::ostringstream os;
    os << "total mass " << mass << " kg differs from the 6.38 kg nominal";
    rep.warnings.push_back(os.str());
  }
  const double leg = kFemurLength + kTibiaLength;
  if (std::abs(leg - 0.78) > 1e-9) {
    std::ostringstream os;
    os << "hip-to-ankle length " << leg << " m differs from the 0.78 m nominal";
    rep.warnings.push_back(os.str());
  }
  return rep;
}

namespace {

config::Value arr(const std::vector<double>& v) {
  config::Value::Array a;
  for (double d : v) a.push_back(config::Value(d));
  return config::Value(a);
}

}  // namespace

config::Document bundle_to_config(const ModelBundle& b) {
  config::Document doc;
  doc.set("model", "schema_version", 1);
  doc.set("model", "name", b.name);
  doc.set("model", "limit_stiffness", b.limit_stiffness);
  doc.set("model", "gravity", b.robot.gravity);
  doc.set("model", "pelvis_mass", b.robot.links[0].mass);

  for (size_t i = 1; i < b.robot.links.size(); ++i) {
    const LinkSpec& l = b.robot.links[i];
    const std::string sec = "link." + l.name;
    doc.set(sec, "length", l.length);
    doc.set(sec, "mass", l.mass);
    doc.set(sec, "inertia", l.inertia);
    doc.set(sec, "com_offset", l.com_offset);
  }
  for (const JointSpec& j : b.robot.joints) {
    const std::string sec = "joint." + j.name;
    doc.set(sec, "rotor_inertia", j.rotor_inertia);
    doc.set(sec, "viscous_damping", j.viscous_damping);
    doc.set(sec, "lower_limit", j.lower_limit);
    doc.set(sec, "upper_limit", j.upper_limit);
  }
  for (const MuscleSpec& m : b.muscles) {
    const std::string sec = "muscle." + m.name;
    doc.set(sec, "stiffness", m.stiffness);
    doc.set(sec, "damping", m.damping);
    doc.set(sec, "rest_length", m.rest_length);
    doc.set(sec, "unilateral", m.unilateral);
    doc.set(sec, "act_sign", m.act_sign);
    std::vector<double> joints, arms, signs;
    for (const MomentArm& a : m.arms) {
      joints.push_back(a.joint);
      arms.push_back(a.arm);
      signs.push_back(a.sign);
    }
    doc.set(sec, "arm_joints", arr(joints));
    doc.set(sec, "arm_lengths", arr(arms));
    doc.set(sec, "arm_signs", arr(signs));
  }
  for (const JointSpringSpec& s : b.springs) {
    const std::string sec = "spring." + b.robot.joints[s.joint].name;
    doc.set(sec, "stiffness", s.stiffness);
    doc.set(sec, "damping", s.damping);
    doc.set(sec, "rest_angle", s.rest_angle);
  }
  for (int c = 0; c < b.actions.channels(); ++c) {
    const std::string sec = "action." + b.actions.channel_names[c];
    doc.set(sec, "candidates", arr(b.actions.candidates[c]));
  }
  doc.set("initial_pose", "pelvis_z", b.initial_pose.pelvis_z);
  doc.set("initial_pose", "hip_split", b.initial_pose.hip_split);
  doc.set("initial_pose", "joint_noise_std", b.initial_pose.joint_noise_std);
  return doc;
}

ModelBundle bundle_from_config(const config::Document& doc) {
  const int version =
      static_cast<int>(doc.get_or("model", "schema_version", 1).as_int());
  if (version != 1)
    throw std::runtime_error("unsupported model schema version " +
                             std::to_string(version));
  ModelBundle b = build_model(doc.get("model", "name").as_string());
  b.limit_stiffness =
      doc.get_or("model", "limit_stiffness", b.limit_stiffness).as_double();
  b.robot.gravity = doc.get_or("model", "gravity", b.robot.gravity).as_double();
  b.robot.links[0].mass =
      doc.get_or("model", "pelvis_mass", b.robot.links[0].mass).as_double();

  for (size_t i = 1; i < b.robot.links.size(); ++i) {
    LinkSpec& l = b.robot.links[i];
    const std::string sec = "link." + l.name;
    if (!doc.has_section(sec)) continue;
    l.length = doc.get_or(sec, "length", l.length).as_double();
    l.mass = doc.get_or(sec, "mass", l.mass).as_double();
    l.inertia = doc.get_or(sec, "inertia", l.inertia).as_double();
    l.com_offset = doc.get_or(sec, "com_offset", l.com_offset).as_double();
  }
  for (JointSpec& j : b.robot.joints) {
    const std::string sec = "joint." + j.name;
    if (!doc.has_section(sec)) continue;
    j.rotor_inertia = doc.get_or(sec, "rotor_inertia", j.rotor_inertia).as_double();
    j.viscous_damping =
        doc.get_or(sec, "viscous_damping", j.viscous_damping).as_double();
    j.lower_limit = doc.get_or(sec, "lower_limit", j.lower_limit).as_double();
    j.upper_limit = doc.get_or(sec, "upper_limit", j.upper_limit).as_double();
  }
  for (MuscleSpec& m : b.muscles) {
    const std::string sec = "muscle." + m.name;
    if (!doc.has_section(sec)) continue;
    m.stiffness = doc.get_or(sec, "stiffness", m.stiffness).as_double();
    m.damping = doc.get_or(sec, "damping", m.damping).as_double();
    m.rest_length = doc.get_or(sec, "rest_length", m.rest_length).as_double();
    m.unilateral = doc.get_or(sec, "unilateral", m.unilateral).as_bool();
    m.act_sign = doc.get_or(sec, "act_sign", m.act_sign).as_double();
    if (doc.has(sec, "arm_joints")) {
      const auto joints = doc.get(sec, "arm_joints").as_double_array();
      const auto arms = doc.get(sec, "arm_lengths").as_double_array();
      const auto signs = doc.get(sec, "arm_signs").as_double_array();
      if (joints.size() != arms.size() || arms.size() != signs.size())
        throw std::runtime_error("inconsistent moment arm arrays in " + sec);
      m.arms.clear();
      for (size_t i = 0; i < joints.size(); ++i)
        m.arms.push_back({static_cast<int>(joints[i]), arms[i], signs[i]});
    }
  }
  for (JointSpringSpec& s : b.springs) {
    const std::string sec = "spring." + b.robot.joints[s.joint].name;
    if (!doc.has_section(sec)) continue;
    s.stiffness = doc.get_or(sec, "stiffness", s.stiffness).as_double();
    s.damping = doc.get_or(sec, "damping", s.damping).as_double();
    s.rest_angle = doc.get_or(sec, "rest_angle", s.rest_angle).as_double();
  }
  for (int c = 0; c < b.actions.channels(); ++c) {
    const std::string sec = "action." + b.actions.channel_names[c];
    if (doc.has(sec, "candidates"))
      b.actions.candidates[c] = doc.get(sec, "candidates").as_double_array();
  }
  b.initial_pose.pelvis_z =
      doc.get_or("initial_pose", "pelvis_z", b.initial_pose.pelvis_z).as_double();
  b.initial_pose.hip_split =
      doc.get_or("initial_pose", "hip_split", b.initial_pose.hip_split).as_double();
  b.initial_pose.joint_noise_std =
      doc.get_or("initial_pose", "joint_noise_std", b.initial_pose.joint_noise_std)
          .as_double();
  return b;
}

}  // namespace sagitta
