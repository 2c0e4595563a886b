#include "hopper/control.hpp"

#include <cmath>

#include "hopper/dynamics.hpp"

namespace hopper {

double desired_touchdown_angle(double alpha_real, double slope_angle) {
  return alpha_real + slope_angle;
}

double predict_body_angle(double alpha_takeoff, double omega, double flight_time) {
  return alpha_takeoff + omega * flight_time;
}

double takeoff_rotation_rate(double alpha_takeoff, double alpha_target,
                             double flight_time) {
  if (!(flight_time > 0.0)) {
    throw std::invalid_argument("flight time must be positive");
  }
  return (alpha_target - alpha_takeoff) / flight_time;
}

double impact_impulse(double mass, double restitution, double normal_speed) {
  return mass * (1.0 + restitution) * normal_speed;
}

double impact_angular_impulse(double lever_arm, double normal_impulse) {
  return lever_arm * normal_impulse;
}

double touchdown_lever_arm(const RobotState& state, const RobotParams& robot,
                           const WorldParams& world) {
  const SlopeFrame frame = slope_frame(world);
  const MassState com = com_state(state, robot);
  const Vec2 offset = com.r - state.foot.r;
  return cross(offset, frame.normal);
}

double optimal_touchdown_angle(const ImpulseModel& model, double alpha_target,
                               double alpha_takeoff, double flight_time) {
  if (!(flight_time > 0.0)) {
    throw std::invalid_argument("flight time must be positive");
  }
  const double inv_t = 1.0 / flight_time;
  return (alpha_target * model.B - model.A + alpha_takeoff * inv_t) /
         (model.B + inv_t);
}

ImpulseModel fit_impulse_model(double angle_lo, double impulse_lo, double angle_hi,
                               double impulse_hi, double alpha_nominal) {
  const double spread = angle_hi - angle_lo;
  if (std::abs(spread) < 1e-12) {
    throw DegenerateProbes("probe angles coincide; cannot fit impulse slope");
  }
  ImpulseModel model;
  model.B = (impulse_hi - impulse_lo) / spread;
  model.alpha_nominal = alpha_nominal;
  model.A = impulse_lo + model.B * (alpha_nominal - angle_lo);
  return model;
}

ImpulseModel calibrate_impulse_model(const ImpulseProbe& probe, double angle_lo,
                                     double angle_hi, double alpha_nominal) {
  if (std::abs(angle_hi - angle_lo) < 1e-12) {
    throw DegenerateProbes("probe angles coincide; cannot fit impulse slope");
  }
  const double impulse_lo = probe(angle_lo);
  const double impulse_hi = probe(angle_hi);
  return fit_impulse_model(angle_lo, impulse_lo, angle_hi, impulse_hi,
                           alpha_nominal);
}

double pre_takeoff_impulse(double L_before, double impact_angular_impulse) {
  return -L_before + impact_angular_impulse;
}

double pre_takeoff_torque(double correction_impulse, double window) {
  if (!(window > 0.0)) {
    throw std::invalid_argument("torque window must be positive");
  }
  return correction_impulse / window;
}

Vec2 horizontal_damping_force(double gamma, Vec2 body_velocity) {
  return Vec2{-gamma * body_velocity.x, 0.0};
}

}  // namespace hopper
