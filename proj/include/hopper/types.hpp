#pragma once

#include <stdexcept>
#include <string>

#include "hopper/vec2.hpp"

namespace hopper {

// Spring length collapsed below the numerical floor; the leg model is
// undefined there and the simulation must abort.
struct DegenerateSpring : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state component became non-finite mid-run.
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid scenario or configuration input. `field` names the offending key.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& what_)
      : std::runtime_error(what_), field(std::move(field_)) {}
};

enum class Phase { Flight, Impact, Stance };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Flight:
      return "Flight";
    case Phase::Impact:
      return "Impact";
    case Phase::Stance:
      return "Stance";
  }
  return "?";
}

// Environment: gravity, slope inclination, timestep.
struct WorldParams {
  double gravity = 9.81;    // m/s^2, magnitude, acts along -z
  double slope_angle = 0.0; // rad, positive rotates the surface uphill toward +x
  double dt = 5e-6;         // s, sample period

  void validate() const;
};

// Robot constants. Two point masses joined by a leg spring; the body
// additionally carries a rotational inertia about its own center.
struct RobotParams {
  double mass_body = 0.095;   // kg
  double mass_foot = 0.005;   // kg
  double stiffness = 500.0;   // N/m
  double rest_length = 0.10;  // m, spring natural length
  double foot_radius = 0.005; // m, hemispherical foot
  double mu_static = 0.6;
  double mu_kinetic = 0.42;
  double restitution = 0.0;   // impact restitution, 0 = perfectly inelastic
  double inertia = default_inertia(0.095, 0.10); // kg m^2, body about its COM

  static constexpr double default_inertia(double mass_body, double rest_length) {
    const double rho = rest_length / 2.0;
    return mass_body * rho * rho;
  }

  void validate() const;
};

struct MassState {
  Vec2 r;  // m
  Vec2 v;  // m/s
};

// Leg geometry derived from the two mass positions.
struct SpringGeometry {
  double length = 0.0;     // m, |body - foot|
  Vec2 axis{0.0, 1.0};     // unit vector foot -> body
  Vec2 elongation{0.0, 0.0}; // (length - rest_length) * axis
};

// Body lean bookkeeping. alpha is measured from world vertical,
// counterclockwise-positive in the (x, z) plane; L = inertia * omega.
struct AttitudeState {
  double alpha = 0.0;  // rad
  double omega = 0.0;  // rad/s
  double L = 0.0;      // kg m^2 / s
};

struct RobotState {
  MassState body;
  MassState foot;
  AttitudeState attitude;
  Phase phase = Phase::Flight;
  double t = 0.0;  // s
};

// Unit frame of the inclined surface. The plane passes through the origin.
struct SlopeFrame {
  Vec2 tangent{1.0, 0.0}; // points uphill
  Vec2 normal{0.0, 1.0};  // points out of the surface
};

// Leg direction for a lean angle alpha (from vertical, CCW-positive): a
// positive alpha tilts the leg toward -x.
inline Vec2 lean_direction(double alpha) {
  return {-std::sin(alpha), std::cos(alpha)};
}

// Lean angle of a foot->body vector, inverse of lean_direction.
inline double lean_angle(Vec2 leg_axis) { return std::atan2(-leg_axis.x, leg_axis.z); }

}  // namespace hopper
