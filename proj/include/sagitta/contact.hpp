#pragma once

#include "sagitta/types.hpp"

namespace sagitta {

// Flat ground or uniform slope through the origin. Positive slope_angle_deg
// ascends in +x. Contact is a Kelvin-Voigt penalty with regularized Coulomb
// friction.
struct GroundSpec {
  double slope_angle_deg = 0.0;
  double normal_stiffness = 1.0e5;   // N/m
  double normal_damping = 50.0;      // N s/m, see models.cpp for the choice
  double friction = 1.0;             // Coulomb coefficient
  double friction_vel_eps = 1.0e-2;  // m/s, tanh regularization scale

  void validate() const;
};

struct ContactPointReport {
  double penetration = 0.0;       // m, > 0 when below the surface
  double normal_force = 0.0;      // N, >= 0
  double tangential_force = 0.0;  // N, along the uphill tangent
  bool in_contact = false;
};

// Signed distance above the slope plane and the velocity split into normal
// and uphill-tangent components.
struct SlopeFrame {
  double distance = 0.0;
  double normal_vel = 0.0;
  double tangent_vel = 0.0;
  Vec2 normal;
  Vec2 tangent;
};

SlopeFrame slope_transform(const GroundSpec& ground, const Vec2& pos,
                           const Vec2& vel = Vec2::Zero());

struct ContactForce {
  ContactPointReport report;
  Vec2 force;  // Cartesian, to be mapped through a point Jacobian transpose
};

// Normal: f_n = max(0, k_n * penetration - c_n * separation_velocity) when
// penetrating, else 0. Tangential: f_t = -mu * f_n * tanh(v_t / v_eps).
ContactForce contact_forces(const GroundSpec& ground, const Vec2& pos,
                            const Vec2& vel);

}  // namespace sagitta
