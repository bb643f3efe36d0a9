#include "sagitta/dynamics.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

namespace sagitta {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string dump_state(const SimState& s) {
  std::ostringstream os;
  os << "t=" << s.t << " q=[" << s.q.transpose() << "] qdot=["
     << s.qdot.transpose() << "]";
  return os.str();
}

}  // namespace

SimulationFault::SimulationFault(const std::string& what, const SimState& s)
    : std::runtime_error(what + ": " + dump_state(s)), state(s) {}

int RobotSpec::find_link(const std::string& name) const {
  for (size_t i = 0; i < links.size(); ++i)
    if (links[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown link: " + name);
}

int RobotSpec::find_joint(const std::string& name) const {
  for (size_t i = 0; i < joints.size(); ++i)
    if (joints[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown joint: " + name);
}

int RobotSpec::find_point(const std::string& name) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown point attachment: " + name);
}

void RobotSpec::validate() const {
  require(!links.empty(), "robot has no links");
  const int n_links = static_cast<int>(links.size());
  for (int i = 0; i < n_links; ++i) {
    const LinkSpec& l = links[i];
    // A fixed root is a pure anchor and may be massless.
    const bool fixed_root = (i == 0 && !base_translation);
    require(l.mass > 0.0 || fixed_root, "link mass must be > 0: " + l.name);
    require(l.inertia >= 0.0, "link inertia must be >= 0: " + l.name);
    require(l.length >= 0.0, "link length must be >= 0: " + l.name);
    require(l.com_offset >= 0.0 && l.com_offset <= l.length,
            "com_offset outside [0, length]: " + l.name);
    require(std::isfinite(l.mass) && std::isfinite(l.inertia),
            "non-finite link parameters: " + l.name);
  }
  std::vector<bool> has_parent(links.size(), false);
  for (size_t j = 0; j < joints.size(); ++j) {
    const JointSpec& js = joints[j];
    require(js.parent_link >= 0 && js.parent_link < n_links,
            "joint parent out of range: " + js.name);
    require(js.child_link > 0 && js.child_link < n_links,
            "joint child out of range: " + js.name);
    require(!has_parent[js.child_link], "link has two parents: " + js.name);
    require(js.child_link != js.parent_link, "self-loop joint: " + js.name);
    // Topological order: the parent must already be reachable.
    require(js.parent_link == 0 || has_parent[js.parent_link],
            "joints not in topological order at: " + js.name);
    has_parent[js.child_link] = true;
    require(js.rotor_inertia >= 0.0, "rotor_inertia must be >= 0: " + js.name);
    require(js.viscous_damping >= 0.0,
            "viscous_damping must be >= 0: " + js.name);
    require(js.lower_limit < js.upper_limit, "empty joint range: " + js.name);
    require(std::abs(js.axis_sign) == 1.0, "axis_sign must be +-1: " + js.name);
    require(js.parent_along >= 0.0 &&
                js.parent_along <= links[js.parent_link].length,
            "parent_along outside the parent link: " + js.name);
  }
  for (size_t i = 1; i < links.size(); ++i)
    require(has_parent[i], "link not connected to the tree: " + links[i].name);
  for (const PointAttachment& p : points) {
    require(p.link >= 0 && p.link < n_links, "point on unknown link: " + p.name);
    require(p.along >= 0.0 && p.along <= links[p.link].length,
            "point outside its link: " + p.name);
  }
  require(gravity >= 0.0 && std::isfinite(gravity), "bad gravity");
}

namespace {

void check_q(const RobotSpec& spec, const VecX& q) {
  if (q.size() != spec.dof())
    throw std::invalid_argument("q has wrong dimension");
  if (!q.allFinite()) throw std::invalid_argument("non-finite q");
}

// Ancestor joints of each link, root to leaf.
std::vector<std::vector<int>> ancestor_chains(const RobotSpec& spec) {
  std::vector<std::vector<int>> chain(spec.links.size());
  for (size_t j = 0; j < spec.joints.size(); ++j) {
    const JointSpec& js = spec.joints[j];
    chain[js.child_link] = chain[js.parent_link];
    chain[js.child_link].push_back(static_cast<int>(j));
  }
  return chain;
}

}  // namespace

Kinematics forward_kinematics(const RobotSpec& spec, const VecX& q) {
  return forward_kinematics(spec, q, VecX::Zero(spec.dof()));
}

Kinematics forward_kinematics(const RobotSpec& spec, const VecX& q,
                              const VecX& qdot) {
  check_q(spec, q);
  if (qdot.size() != spec.dof())
    throw std::invalid_argument("qdot has wrong dimension");
  Kinematics kin;
  const size_t nl = spec.links.size();
  kin.link_origin.resize(nl);
  kin.link_angle.resize(nl);
  kin.link_vel.resize(nl);
  kin.link_rate.resize(nl);
  kin.joint_origin.resize(spec.joints.size());
  kin.joint_vel.resize(spec.joints.size());

  kin.link_origin[0] = spec.base_translation ? Vec2(q[0], q[1]) : Vec2(0, 0);
  kin.link_vel[0] = spec.base_translation ? Vec2(qdot[0], qdot[1]) : Vec2(0, 0);
  kin.link_angle[0] = 0.0;
  kin.link_rate[0] = 0.0;

  for (size_t j = 0; j < spec.joints.size(); ++j) {
    const JointSpec& js = spec.joints[j];
    const int p = js.parent_link;
    const Vec2 pivot = kin.link_origin[p] +
                       axis_dir(kin.link_angle[p]) * js.parent_along;
    const Vec2 pivot_vel =
        kin.link_vel[p] +
        kin.link_rate[p] * rot90(pivot - kin.link_origin[p]);
    kin.joint_origin[j] = pivot;
    kin.joint_vel[j] = pivot_vel;
    const int c = js.child_link;
    const int d = spec.joint_coord(static_cast<int>(j));
    kin.link_origin[c] = pivot;
    kin.link_vel[c] = pivot_vel;
    kin.link_angle[c] =
        kin.link_angle[p] + js.mount_angle + js.axis_sign * q[d];
    kin.link_rate[c] = kin.link_rate[p] + js.axis_sign * qdot[d];
  }
  return kin;
}

Vec2 point_position(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point) {
  if (point.link < 0 || point.link >= static_cast<int>(spec.links.size()))
    throw std::invalid_argument("point on unknown link: " + point.name);
  return kin.link_origin[point.link] +
         axis_dir(kin.link_angle[point.link]) * point.along;
}

Vec2 point_velocity(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point) {
  const Vec2 p = point_position(spec, kin, point);
  return kin.link_vel[point.link] +
         kin.link_rate[point.link] * rot90(p - kin.link_origin[point.link]);
}

MatX point_jacobian(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point) {
  const Vec2 p = point_position(spec, kin, point);
  MatX jac = MatX::Zero(2, spec.dof());
  if (spec.base_translation) {
    jac(0, 0) = 1.0;
    jac(1, 1) = 1.0;
  }
  const auto chains = ancestor_chains(spec);
  for (int j : chains[point.link]) {
    const Vec2 r = rot90(p - kin.joint_origin[j]);
    const int d = spec.joint_coord(j);
    jac(0, d) = spec.joints[j].axis_sign * r.x();
    jac(1, d) = spec.joints[j].axis_sign * r.y();
  }
  return jac;
}

MatX mass_matrix(const RobotSpec& spec, const VecX& q) {
  check_q(spec, q);
  const int n = spec.dof();
  const Kinematics kin = forward_kinematics(spec, q);
  const auto chains = ancestor_chains(spec);
  MatX m = MatX::Zero(n, n);

  for (size_t l = 0; l < spec.links.size(); ++l) {
    const LinkSpec& link = spec.links[l];
    if (link.mass == 0.0 && link.inertia == 0.0) continue;
    const Vec2 com = kin.link_origin[l] +
                     axis_dir(kin.link_angle[l]) * link.com_offset;
    MatX jv = MatX::Zero(2, n);
    VecX jw = VecX::Zero(n);
    if (spec.base_translation) {
      jv(0, 0) = 1.0;
      jv(1, 1) = 1.0;
    }
    for (int j : chains[l]) {
      const Vec2 r = rot90(com - kin.joint_origin[j]);
      const int d = spec.joint_coord(j);
      jv(0, d) = spec.joints[j].axis_sign * r.x();
      jv(1, d) = spec.joints[j].axis_sign * r.y();
      jw[d] = spec.joints[j].axis_sign;
    }
    m.noalias() += link.mass * jv.transpose() * jv;
    m.noalias() += link.inertia * jw * jw.transpose();
  }
  for (size_t j = 0; j < spec.joints.size(); ++j) {
    const int d = spec.joint_coord(static_cast<int>(j));
    m(d, d) += spec.joints[j].rotor_inertia;
  }
  return m;
}

VecX bias_forces(const RobotSpec& spec, const VecX& q, const VecX& qdot) {
  check_q(spec, q);
  if (!qdot.allFinite()) throw std::invalid_argument("non-finite qdot");
  const int n = spec.dof();
  const Kinematics kin = forward_kinematics(spec, q, qdot);
  const auto chains = ancestor_chains(spec);
  const Vec2 gvec(0.0, -spec.gravity);
  VecX h = VecX::Zero(n);

  for (size_t l = 0; l < spec.links.size(); ++l) {
    const LinkSpec& link = spec.links[l];
    if (link.mass == 0.0) continue;
    const Vec2 com = kin.link_origin[l] +
                     axis_dir(kin.link_angle[l]) * link.com_offset;
    const Vec2 com_vel =
        kin.link_vel[l] + kin.link_rate[l] * rot90(com - kin.link_origin[l]);
    MatX jv = MatX::Zero(2, n);
    if (spec.base_translation) {
      jv(0, 0) = 1.0;
      jv(1, 1) = 1.0;
    }
    // Jdot * qdot: revolute columns differentiate to rot90 of the relative
    // velocity; prismatic base columns are constant.
    Vec2 jdot_qd(0.0, 0.0);
    for (int j : chains[l]) {
      const int d = spec.joint_coord(j);
      const Vec2 r = rot90(com - kin.joint_origin[j]);
      jv(0, d) = spec.joints[j].axis_sign * r.x();
      jv(1, d) = spec.joints[j].axis_sign * r.y();
      jdot_qd += spec.joints[j].axis_sign * qdot[d] *
                 rot90(com_vel - kin.joint_vel[j]);
    }
    h.noalias() += link.mass * jv.transpose() * jdot_qd;
    h.noalias() -= jv.transpose() * (link.mass * gvec);
  }
  return h;
}

VecX forward_dynamics(const RobotSpec& spec, const SimState& state,
                      const VecX& applied_forces) {
  if (applied_forces.size() != spec.dof())
    throw std::invalid_argument("applied force vector has wrong dimension");
  const MatX m = mass_matrix(spec, state.q);
  const VecX rhs = applied_forces - bias_forces(spec, state.q, state.qdot);
  Eigen::LDLT<MatX> ldlt(m);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("mass matrix factorization failed");
  VecX qddot = ldlt.solve(rhs);
  if (!qddot.allFinite())
    throw std::runtime_error("forward dynamics produced non-finite qddot");
  return qddot;
}

SimState step(const RobotSpec& spec, const SimState& state,
              const ForceCallback& forces, double dt) {
  return step(
      spec, state,
      [&](const SimState& s) {
        return ForceResult{forces(s), MatX()};
      },
      dt);
}

SimState step(const RobotSpec& spec, const SimState& state,
              const DampedForceCallback& forces, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  const ForceResult fr = forces(state);
  if (fr.tau.size() != spec.dof())
    throw std::invalid_argument("applied force vector has wrong dimension");
  if (!fr.tau.allFinite())
    throw SimulationFault("non-finite applied forces", state);

  const MatX m = mass_matrix(spec, state.q);
  const VecX rhs_force = fr.tau - bias_forces(spec, state.q, state.qdot);
  SimState next;
  if (fr.damping.size() == 0) {
    Eigen::LDLT<MatX> ldlt(m);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("mass matrix factorization failed");
    next.qdot = state.qdot + dt * ldlt.solve(rhs_force);
  } else {
    if (!fr.damping.allFinite())
      throw SimulationFault("non-finite damping matrix", state);
    Eigen::LDLT<MatX> ldlt(m + dt * fr.damping);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("damped mass matrix factorization failed");
    next.qdot = ldlt.solve(m * state.qdot + dt * rhs_force);
  }
  next.q = state.q + dt * next.qdot;
  next.t = state.t + dt;
  if (!next.q.allFinite() || !next.qdot.allFinite())
    throw SimulationFault("NaN propagation detected", next);
  return next;
}

double kinetic_energy(const RobotSpec& spec, const SimState& state) {
  const MatX m = mass_matrix(spec, state.q);
  return 0.5 * state.qdot.dot(m * state.qdot);
}

double potential_energy(const RobotSpec& spec, const VecX& q) {
  const Kinematics kin = forward_kinematics(spec, q);
  double e = 0.0;
  for (size_t l = 0; l < spec.links.size(); ++l) {
    const LinkSpec& link = spec.links[l];
    if (link.mass == 0.0) continue;
    const double com_z =
        (kin.link_origin[l] + axis_dir(kin.link_angle[l]) * link.com_offset)
            .y();
    e += link.mass * spec.gravity * com_z;
  }
  return e;
}

double mechanical_energy(const RobotSpec& spec, const SimState& state) {
  return kinetic_energy(spec, state) + potential_energy(spec, state.q);
}

}  // namespace sagitta
