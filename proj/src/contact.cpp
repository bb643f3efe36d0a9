#include "sagitta/contact.hpp"

#include <cmath>

namespace sagitta {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void GroundSpec::validate() const {
  if (!(normal_stiffness > 0.0))
    throw std::invalid_argument("normal_stiffness must be > 0");
  if (normal_damping < 0.0)
    throw std::invalid_argument("normal_damping must be >= 0");
  if (friction < 0.0) throw std::invalid_argument("friction must be >= 0");
  if (!(friction_vel_eps > 0.0))
    throw std::invalid_argument("friction_vel_eps must be > 0");
  if (!(std::abs(slope_angle_deg) < 90.0))
    throw std::invalid_argument("slope angle must satisfy |alpha| < 90 deg");
}

SlopeFrame slope_transform(const GroundSpec& ground, const Vec2& pos,
                           const Vec2& vel) {
  const double a = ground.slope_angle_deg * kPi / 180.0;
  SlopeFrame f;
  f.normal = Vec2(-std::sin(a), std::cos(a));
  f.tangent = Vec2(std::cos(a), std::sin(a));
  f.distance = pos.dot(f.normal);
  f.normal_vel = vel.dot(f.normal);
  f.tangent_vel = vel.dot(f.tangent);
  return f;
}

ContactForce contact_forces(const GroundSpec& ground, const Vec2& pos,
                            const Vec2& vel) {
  const SlopeFrame f = slope_transform(ground, pos, vel);
  ContactForce out;
  out.force = Vec2::Zero();
  if (f.distance >= 0.0) return out;

  const double penetration = -f.distance;
  double fn = ground.normal_stiffness * penetration -
              ground.normal_damping * f.normal_vel;
  if (fn < 0.0) fn = 0.0;  // non-sticking clamp during separation
  const double ft =
      -ground.friction * fn * std::tanh(f.tangent_vel / ground.friction_vel_eps);

  out.report.penetration = penetration;
  out.report.normal_force = fn;
  out.report.tangential_force = ft;
  out.report.in_contact = true;
  out.force = fn * f.normal + ft * f.tangent;
  return out;
}

}  // namespace sagitta
