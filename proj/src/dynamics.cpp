#include "hopper/dynamics.hpp"

#include <cmath>

namespace hopper {

namespace {
constexpr double kLengthFloor = 1e-9;  // m, below this the leg axis is undefined
}

void WorldParams::validate() const {
  if (!(gravity > 0.0)) throw ConfigError("gravity", "gravity must be positive");
  if (!(std::abs(slope_angle) < 1.5707963267948966))
    throw ConfigError("slope_deg", "slope angle must lie strictly between -90 and 90 degrees");
  if (!(dt > 0.0)) throw ConfigError("sample_rate_hz", "sample rate must be positive");
}

void RobotParams::validate() const {
  if (!(mass_body > 0.0)) throw ConfigError("mass_body_kg", "mass_body must be positive");
  if (!(mass_foot > 0.0)) throw ConfigError("mass_foot_kg", "mass_foot must be positive");
  if (!(stiffness > 0.0)) throw ConfigError("stiffness_n_per_m", "k must be positive");
  if (!(rest_length > 0.0)) throw ConfigError("rest_length_m", "rest_length must be positive");
  if (!(foot_radius >= 0.0)) throw ConfigError("foot_radius_m", "foot_radius must be non-negative");
  if (!(mu_static >= 0.0)) throw ConfigError("mu_static", "mu_static must be non-negative");
  if (!(mu_kinetic >= 0.0)) throw ConfigError("mu_kinetic", "mu_kinetic must be non-negative");
  if (mu_kinetic > mu_static)
    throw ConfigError("mu_kinetic", "mu_kinetic must not exceed mu_static");
  if (!(restitution >= 0.0 && restitution <= 1.0))
    throw ConfigError("restitution", "restitution must lie in [0, 1]");
  if (!(inertia > 0.0)) throw ConfigError("inertia_kg_m2", "inertia must be positive");
}

SlopeFrame slope_frame(const WorldParams& world) {
  const double c = std::cos(world.slope_angle);
  const double s = std::sin(world.slope_angle);
  return {{c, s}, {-s, c}};
}

SpringGeometry spring_geometry(Vec2 body_r, Vec2 foot_r, double rest_length) {
  const Vec2 d = body_r - foot_r;
  const double len = norm(d);
  if (!(len > kLengthFloor))
    throw DegenerateSpring("leg length collapsed below the numerical floor");
  SpringGeometry g;
  g.length = len;
  g.axis = d / len;
  g.elongation = g.axis * (len - rest_length);
  return g;
}

FlightAccel flight_accelerations(const MassState& body, const MassState& foot,
                                 const RobotParams& robot, const WorldParams& world) {
  const SpringGeometry g = spring_geometry(body.r, foot.r, robot.rest_length);
  const Vec2 gravity{0.0, -world.gravity};
  FlightAccel a;
  a.body = gravity - g.elongation * (robot.stiffness / robot.mass_body);
  a.foot = gravity + g.elongation * (robot.stiffness / robot.mass_foot);
  return a;
}

Vec2 impact_acceleration(Vec2 foot_velocity, double dt) { return foot_velocity * (-1.0 / dt); }

void integrate_step(RobotState& state, Vec2 body_accel, Vec2 foot_accel, double dt) {
  state.body.r += state.body.v * dt + body_accel * (0.5 * dt * dt);
  state.foot.r += state.foot.v * dt + foot_accel * (0.5 * dt * dt);
  state.body.v += body_accel * dt;
  state.foot.v += foot_accel * dt;
  state.attitude.alpha += state.attitude.omega * dt;
  state.t += dt;
}

double contact_gap(Vec2 foot_r, double foot_radius, const WorldParams& world) {
  return dot(foot_r, slope_frame(world).normal) - foot_radius;
}

StanceReaction stance_foot_reaction(const RobotState& state, const RobotParams& robot,
                                    const WorldParams& world) {
  const SpringGeometry g = spring_geometry(state.body.r, state.foot.r, robot.rest_length);
  const Vec2 spring_on_foot = g.elongation * robot.stiffness;  // pulls foot toward body when stretched
  const Vec2 foot_weight{0.0, -robot.mass_foot * world.gravity};
  StanceReaction r;
  r.force = -(spring_on_foot + foot_weight);
  const SlopeFrame frame = slope_frame(world);
  r.normal = dot(r.force, frame.normal);
  r.tangential = dot(r.force, frame.tangent);
  r.liftoff = r.normal < 0.0;
  r.slipping = !r.liftoff && std::abs(r.tangential) > robot.mu_static * r.normal;
  return r;
}

double mechanical_energy(const RobotState& state, const RobotParams& robot,
                         const WorldParams& world) {
  const SpringGeometry g = spring_geometry(state.body.r, state.foot.r, robot.rest_length);
  const double stretch = g.length - robot.rest_length;
  const double kinetic = 0.5 * robot.mass_body * dot(state.body.v, state.body.v) +
                         0.5 * robot.mass_foot * dot(state.foot.v, state.foot.v) +
                         0.5 * robot.inertia * state.attitude.omega * state.attitude.omega;
  const double gravitational =
      world.gravity * (robot.mass_body * state.body.r.z + robot.mass_foot * state.foot.r.z);
  const double elastic = 0.5 * robot.stiffness * stretch * stretch;
  return kinetic + gravitational + elastic;
}

MassState com_state(const RobotState& state, const RobotParams& robot) {
  const double total = robot.mass_body + robot.mass_foot;
  MassState com;
  com.r = (state.body.r * robot.mass_body + state.foot.r * robot.mass_foot) / total;
  com.v = (state.body.v * robot.mass_body + state.foot.v * robot.mass_foot) / total;
  return com;
}

}  // namespace hopper
