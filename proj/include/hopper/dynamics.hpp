#pragma once

#include "hopper/types.hpp"

namespace hopper {

// Unit tangent/normal of the inclined plane through the origin.
SlopeFrame slope_frame(const WorldParams& world);

// Leg geometry for the given mass positions. Throws DegenerateSpring when the
// masses coincide below the numerical floor.
SpringGeometry spring_geometry(Vec2 body_r, Vec2 foot_r, double rest_length);

struct FlightAccel {
  Vec2 body;
  Vec2 foot;
};

// Free-flight accelerations of both masses: gravity plus the leg spring
// acting along the body-foot axis, reaction-equal on the two ends.
FlightAccel flight_accelerations(const MassState& body, const MassState& foot,
                                 const RobotParams& robot, const WorldParams& world);

// Acceleration that removes the foot's velocity over exactly one sample
// (single-sample inelastic stop).
Vec2 impact_acceleration(Vec2 foot_velocity, double dt);

// One kinematic sample: r += v*dt + a*dt^2/2, then v += a*dt, attitude
// alpha += omega*dt, clock t += dt.
void integrate_step(RobotState& state, Vec2 body_accel, Vec2 foot_accel, double dt);

// Signed distance from the foot sphere surface to the slope plane along the
// outward normal. Zero at touch, negative when penetrating.
double contact_gap(Vec2 foot_r, double foot_radius, const WorldParams& world);

struct StanceReaction {
  Vec2 force;          // ground reaction required to hold the foot in place
  double normal = 0.0;     // component along the outward slope normal
  double tangential = 0.0; // component along the uphill tangent
  bool slipping = false;   // Coulomb static cone violated
  bool liftoff = false;    // required normal force is negative: foot releases
};

// Reaction the ground must supply to keep a pinned foot static against the
// spring and the foot's weight, with Coulomb stick/slip and liftoff tests.
StanceReaction stance_foot_reaction(const RobotState& state, const RobotParams& robot,
                                    const WorldParams& world);

// Kinetic + gravitational + spring elastic energy. The rotational term
// inertia*omega^2/2 is included so attitude work is visible in the budget.
double mechanical_energy(const RobotState& state, const RobotParams& robot,
                         const WorldParams& world);

// Mass-weighted center of mass position and velocity.
MassState com_state(const RobotState& state, const RobotParams& robot);

}  // namespace hopper
