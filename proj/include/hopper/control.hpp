#pragma once

#include <functional>
#include <vector>

#include "hopper/types.hpp"

namespace hopper {

// Touchdown-angle planning and pre-takeoff compensation.
//
// Planning runs in the slope frame: angles are measured from the slope
// normal, positive when the leg leans uphill of the normal. In that frame the
// world vertical sits at +phi, so a desired lean of alpha_real away from
// vertical (positive = into the hill) gives the touchdown target
// alpha_real + phi. The engine converts to/from the stored world-frame lean
// (alpha_world = phi - alpha_slope) at its boundaries.

// Touchdown target: lean alpha_real beyond the vertical, expressed from the
// slope normal.
double desired_touchdown_angle(double alpha_real, double slope_angle);

// Body angle reached after rotating at a constant rate for the flight time.
double predict_body_angle(double alpha_takeoff, double omega, double flight_time);

// Rotation rate that carries the body from its takeoff angle to the target
// over the predicted flight time. flight_time must be positive.
double takeoff_rotation_rate(double alpha_takeoff, double alpha_target, double flight_time);

// Magnitude of the normal impulse that arrests an approach speed v_n:
// m*(1+e)*v_n.
double impact_impulse(double mass, double restitution, double normal_speed);

// Angular impulse of a normal impulse acting a lever arm away from the center
// of mass.
double impact_angular_impulse(double lever_arm, double normal_impulse);

// Signed perpendicular distance from the system center of mass to the
// slope-normal line through the foot center. Positive when the leg leans
// downhill-of-normal (e.g. +0.095*sin(phi) for a vertical leg on an uphill
// slope).
double touchdown_lever_arm(const RobotState& state, const RobotParams& robot,
                           const WorldParams& world);

// Affine model of the landing angular impulse around a nominal touchdown
// angle: dL(alpha) = A + B*(alpha - alpha_nominal).
struct ImpulseModel {
  double A = 0.0;              // kg m^2/s, impulse at the nominal angle
  double B = 0.0;              // kg m^2/s per rad, sensitivity
  double alpha_nominal = 0.0;  // rad, expansion point
};

// Touchdown angle minimizing the squared residual
//   [B*(alpha - alpha_target) + A + (alpha - alpha_takeoff)/T]^2,
// trading landing angular impulse against the rotation spent in flight:
//   alpha* = [alpha_target*B - A + alpha_takeoff/T] / [B + 1/T].
double optimal_touchdown_angle(const ImpulseModel& model, double alpha_target,
                               double alpha_takeoff, double flight_time);

// Probe runner: returns the measured landing angular impulse when the robot
// is dropped with the given touchdown angle (slope-frame).
using ImpulseProbe = std::function<double(double)>;

struct DegenerateProbes : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fits the affine impulse model from two probe drops at distinct touchdown
// angles. Throws DegenerateProbes when the probe angles coincide.
ImpulseModel calibrate_impulse_model(const ImpulseProbe& probe, double angle_lo,
                                     double angle_hi, double alpha_nominal);

// Exact affine fit through two (angle, impulse) samples, the core of the
// calibration. Exposed for direct testing.
ImpulseModel fit_impulse_model(double angle_lo, double impulse_lo, double angle_hi,
                               double impulse_hi, double alpha_nominal);

// Angular momentum change the takeoff correction must supply so the upcoming
// landing ends with zero residual: -L_before + dL_impact, where dL_impact is
// the angular momentum the landing will remove.
double pre_takeoff_impulse(double L_before, double impact_angular_impulse);

// Constant torque delivering the correction impulse over the window t_s.
double pre_takeoff_torque(double correction_impulse, double window);

// Horizontal reactive damper on the body: F = (-gamma * v.x, 0).
Vec2 horizontal_damping_force(double gamma, Vec2 body_velocity);

// Controller switches and gains for a run.
struct ControlConfig {
  bool step1 = false;          // plan touchdown angle, set rotation at liftoff
  bool step2_torque = false;   // pre-takeoff correction torque over t_s
  bool step2_damper = false;   // horizontal damper during stance
  bool use_optimal_alpha = false;  // aim at alpha* instead of alpha_d
  double alpha_real = 0.0;     // rad, commanded lean beyond vertical at touchdown
  double gamma = 7.0;          // kg/s, damper reactivity
  double t_s = 0.02;           // s, correction-torque window
  ImpulseModel impulse_model;  // consulted only when use_optimal_alpha is set
};

}  // namespace hopper
