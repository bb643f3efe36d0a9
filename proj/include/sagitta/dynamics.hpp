#pragma once

#include <functional>

#include "sagitta/types.hpp"

namespace sagitta {

// Direction of a link axis at absolute angle phi. phi = 0 points straight
// down (-z); increasing phi tilts the axis toward +x (forward).
inline Vec2 axis_dir(double phi) { return {std::sin(phi), -std::cos(phi)}; }

// d(axis_dir)/dphi; also the generator of in-plane rotation: a point at
// offset v from a pivot moves along rot90(v) per unit angle.
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

// Positions and velocities of every link frame, evaluated once per query.
struct Kinematics {
  std::vector<Vec2> link_origin;   // proximal joint position per link
  std::vector<double> link_angle;  // absolute axis angle per link
  std::vector<Vec2> link_vel;      // velocity of the link origin
  std::vector<double> link_rate;   // absolute angular rate per link
  std::vector<Vec2> joint_origin;  // pivot position per joint
  std::vector<Vec2> joint_vel;     // pivot velocity per joint
};

Kinematics forward_kinematics(const RobotSpec& spec, const VecX& q);
Kinematics forward_kinematics(const RobotSpec& spec, const VecX& q,
                              const VecX& qdot);

Vec2 point_position(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point);
Vec2 point_velocity(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point);

// 2 x dof Jacobian of a point: v_point = J qdot, and J^T maps a Cartesian
// force at the point to generalized forces.
MatX point_jacobian(const RobotSpec& spec, const Kinematics& kin,
                    const PointAttachment& point);

// Joint-space inertia matrix, rotor inertias included on the diagonal.
// Symmetric positive definite for every valid spec.
MatX mass_matrix(const RobotSpec& spec, const VecX& q);

// Coriolis/centrifugal plus gravity terms h(q, qdot) with the convention
// M(q) qddot + h = tau_applied.
VecX bias_forces(const RobotSpec& spec, const VecX& q, const VecX& qdot);

// Solves M qddot = tau - h. Throws std::runtime_error when the factorization
// fails (cannot happen for specs passing validate()).
VecX forward_dynamics(const RobotSpec& spec, const SimState& state,
                      const VecX& applied_forces);

using ForceCallback = std::function<VecX(const SimState&)>;

// Generalized forces split into an explicit part and a velocity-linear
// damping matrix: total = tau - damping * qdot. The damping part is
// integrated implicitly, which keeps the table's damper constants stable on
// the light foot segments at dt = 1 ms (their explicit modal damping ratio
// exceeds the symplectic-Euler limit).
struct ForceResult {
  VecX tau;
  MatX damping;  // positive semidefinite; empty means zero
};

using DampedForceCallback = std::function<ForceResult(const SimState&)>;

// One semi-implicit Euler substep: qdot += dt * qddot, then q += dt * qdot,
// with qddot solving (M + dt D) (qdot + dt qddot) = M qdot + dt (tau - h).
// With D = 0 this is the plain symplectic update. Throws SimulationFault
// when the next state is not finite.
SimState step(const RobotSpec& spec, const SimState& state,
              const ForceCallback& forces, double dt);
SimState step(const RobotSpec& spec, const SimState& state,
              const DampedForceCallback& forces, double dt);

// Kinetic plus gravitational potential energy. Elastic storage is owned by
// the actuation layer (see elastic_energy in actuation.hpp).
double mechanical_energy(const RobotSpec& spec, const SimState& state);

double kinetic_energy(const RobotSpec& spec, const SimState& state);
double potential_energy(const RobotSpec& spec, const VecX& q);

}  // namespace sagitta
