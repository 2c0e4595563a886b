#pragma once

#include <cstdint>
#include <vector>

#include "hopper/control.hpp"
#include "hopper/types.hpp"

namespace hopper {

// Full description of one run. Angles are radians, everything SI.
struct Scenario {
  WorldParams world;
  RobotParams robot;
  ControlConfig control;
  double duration = 3.0;          // s
  double foot_start_height = 0.6; // m, foot center above z = 0 at release
  double initial_alpha = 0.0;     // rad, world-frame lean at release
  int decimation = 100;           // trajectory rows every N samples

  void validate() const;
};

struct Sample {
  double t = 0.0;
  MassState body;
  MassState foot;
  double alpha = 0.0;
  double omega = 0.0;
  Phase phase = Phase::Flight;
  double energy = 0.0;
};

using Trajectory = std::vector<Sample>;

enum class EventKind { Touchdown, Liftoff, Apex, SlipStart, SlipStop };

inline const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::Touchdown:
      return "touchdown";
    case EventKind::Liftoff:
      return "liftoff";
    case EventKind::Apex:
      return "apex";
    case EventKind::SlipStart:
      return "slip_start";
    case EventKind::SlipStop:
      return "slip_stop";
  }
  return "?";
}

// value carries kind-specific payload: touchdown = |body rotation rate| just
// before the landing merge, liftoff = measured stance duration, apex = center
// of mass height, slip_start = tangential/normal force ratio that broke the
// static cone, slip_stop = tangential distance slid.
struct HopEvent {
  EventKind kind = EventKind::Touchdown;
  double t = 0.0;
  double com_x = 0.0;
  double com_z = 0.0;
  double value = 0.0;
};

struct Metrics {
  std::int64_t samples = 0;  // full-rate states observed, including t = 0
  double duration = 0.0;
  int num_touchdowns = 0;
  double com_x_start = 0.0;
  double com_x_end = 0.0;
  double horizontal_drift = 0.0;  // |com_x_end - com_x_start|
  std::vector<double> per_hop_drift;  // |com_x| change between touchdowns
  std::vector<double> hop_periods;    // s between consecutive touchdowns
  double max_residual_omega = 0.0;  // max |rate| entering any touchdown
  double max_abs_alpha = 0.0;       // rad, over the whole run
  double energy_start = 0.0;
  double energy_end = 0.0;
};

struct RunResult {
  Scenario scenario;
  Trajectory trajectory;
  std::vector<HopEvent> events;
  Metrics metrics;
};

// Runs the scenario start to finish. Metrics come from the full-rate state
// stream regardless of trajectory decimation. Throws NumericalAbort if the
// state leaves the finite floats, ConfigError on invalid scenario fields.
RunResult run_scenario(const Scenario& scenario);

// Recomputes metrics from an undecimated trajectory plus the robot constants;
// matches run_scenario's metrics bit for bit when decimation == 1.
Metrics compute_metrics(const Trajectory& trajectory, const RobotParams& robot);

// Drops the robot with the leg held at the given slope-frame touchdown angle
// (measured from the slope normal, positive leaning uphill of it) and returns
// the angular momentum the first landing injects about the new pivot.
double measure_landing_impulse(Scenario scenario, double touchdown_angle);

// Calibrates the affine landing-impulse model from two probe drops.
ImpulseModel calibrate_from_drops(const Scenario& base, double angle_lo,
                                  double angle_hi, double alpha_nominal);

}  // namespace hopper
