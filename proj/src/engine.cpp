#include "hopper/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hopper/dynamics.hpp"

namespace hopper {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTinySlideSpeed = 1e-10;  // m/s, below this the foot counts as stopped

// Landing with the spring momentarily stretched (it rings in flight) can
// bounce the foot off the surface for a few ms before the real stance.
// Re-contacts inside this window belong to the same landing: hop metrics
// fold them together, and the takeoff planner ignores the fake stances.
constexpr double kHopDebounce = 0.05;  // s, far below any real hop period

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Advances one run sample by sample. Each iteration is prepare() (classify the
// state at t, fire transitions and control actions, emit events) followed by
// advance() (integrate t -> t + dt under the phase prepare chose). States
// handed out between the two calls are the per-sample observations.
class Stepper {
 public:
  explicit Stepper(const Scenario& sc)
      : sc_(sc),
        frame_(slope_frame(sc.world)),
        dt_(sc.world.dt),
        // seed for the first correction window: half period of the radial
        // spring-mass mode, the stance duration of a straight-down bounce
        stance_duration_pred_(kPi * std::sqrt(sc.robot.mass_body / sc.robot.stiffness)) {
    state_.foot.r = {0.0, sc.foot_start_height};
    state_.foot.v = {0.0, 0.0};
    state_.body.r = state_.foot.r + sc.robot.rest_length * lean_direction(sc.initial_alpha);
    state_.body.v = {0.0, 0.0};
    state_.attitude.alpha = sc.initial_alpha;
    state_.attitude.omega = 0.0;
    state_.attitude.L = 0.0;
    state_.phase = Phase::Flight;
    state_.t = 0.0;
    flight_accel_ = flight_accelerations(state_.body, state_.foot, sc_.robot, sc_.world);
    prev_com_vz_ = 0.0;
  }

  void prepare() {
    requireFinite();
    switch (state_.phase) {
      case Phase::Flight: {
        const double gap = contact_gap(state_.foot.r, sc_.robot.foot_radius, sc_.world);
        const bool approaching = dot(state_.foot.v, frame_.normal) < 0.0;
        if (gap <= 0.0 && approaching) onTouchdown();
        break;
      }
      case Phase::Stance: {
        const StanceReaction reaction =
            slipping_ ? stance_foot_reaction(state_, sc_.robot, sc_.world)
                      : heldAxisReaction();
        if (reaction.liftoff) {
          onLiftoff();
        } else if (!slipping_ && reaction.slipping) {
          slipping_ = true;
          slip_start_tangent_ = dot(state_.foot.r, frame_.tangent);
          emit(EventKind::SlipStart, std::abs(reaction.tangential) / reaction.normal);
        }
        break;
      }
      case Phase::Impact:
        break;  // unreachable: the impact advance() leaves the phase at Stance
    }
  }

  void advance() {
    switch (state_.phase) {
      case Phase::Flight:
        advanceFlight();
        break;
      case Phase::Impact:
        advanceImpact();
        break;
      case Phase::Stance:
        if (slipping_) {
          advanceSlip();
        } else {
          advanceStance();
        }
        break;
    }
  }

  Sample sample() const {
    Sample s;
    s.t = state_.t;
    s.body = state_.body;
    s.foot = state_.foot;
    s.alpha = state_.attitude.alpha;
    s.omega = state_.attitude.omega;
    s.phase = state_.phase;
    s.energy = mechanical_energy(state_, sc_.robot, sc_.world);
    return s;
  }

  const RobotState& state() const { return state_; }
  const std::vector<HopEvent>& events() const { return events_; }
  int touchdown_count() const { return touchdown_count_; }
  double last_kick() const { return kick_this_stance_; }

 private:
  void requireFinite() const {
    if (!is_finite(state_.body.r) || !is_finite(state_.body.v) ||
        !is_finite(state_.foot.r) || !is_finite(state_.foot.v) ||
        !std::isfinite(state_.attitude.alpha) || !std::isfinite(state_.attitude.omega)) {
      throw NumericalAbort("state became non-finite at t = " + std::to_string(state_.t));
    }
  }

  void emit(EventKind kind, double value) {
    const MassState com = com_state(state_, sc_.robot);
    events_.push_back({kind, state_.t, com.r.x, com.r.z, value});
  }

  void onTouchdown() {
    state_.phase = Phase::Impact;
    ++touchdown_count_;
    emit(EventKind::Touchdown, std::abs(state_.attitude.omega));
    last_flight_duration_ = state_.t - flight_start_t_;
    touchdown_t_ = state_.t;
  }

  // Impact sample: the foot decelerates to rest within one dt while the body
  // still follows the flight forces. Afterwards the foot is parked exactly on
  // the surface. Stopping the foot takes an impulse at the contact patch,
  // which sits a foot radius below the foot center along the surface normal;
  // the moment of that impulse about the foot spins the landed assembly about
  // the pin as if momentarily rigid: the body picks up the kick both as spin
  // and as the matching transverse velocity, on top of its incoming motion.
  // The leg direction at this instant becomes the held stance axis.
  void advanceImpact() {
    const Vec2 foot_v_pre = state_.foot.v;
    const FlightAccel fa = flight_accelerations(state_.body, state_.foot, sc_.robot, sc_.world);
    const Vec2 foot_accel = impact_acceleration(foot_v_pre, dt_);
    integrate_step(state_, fa.body, foot_accel, dt_);

    state_.foot.v = {0.0, 0.0};
    const double gap = contact_gap(state_.foot.r, sc_.robot.foot_radius, sc_.world);
    state_.foot.r -= gap * frame_.normal;

    const Vec2 stop_impulse =
        -((1.0 + sc_.robot.restitution) * sc_.robot.mass_foot) * foot_v_pre;
    const Vec2 contact_offset = -sc_.robot.foot_radius * frame_.normal;
    const double kick = cross(contact_offset, stop_impulse);

    const SpringGeometry g =
        spring_geometry(state_.body.r, state_.foot.r, sc_.robot.rest_length);
    const double pivot_inertia =
        sc_.robot.inertia + sc_.robot.mass_body * g.length * g.length;
    const double kick_rate = kick / pivot_inertia;
    state_.body.v += (g.length * kick_rate) * ccw90(g.axis);
    held_axis_ = g.axis;
    state_.attitude.alpha = lean_angle(g.axis);
    state_.attitude.omega += kick_rate;
    state_.attitude.L = pivot_inertia * state_.attitude.omega;

    kick_this_stance_ = kick;
    state_.phase = Phase::Stance;
    slipping_ = false;
    torque_armed_ = false;
    torque_value_ = 0.0;
  }

  // Pinned stance: the foot bears load and stays parked while the hip servo
  // holds the leg along the direction it had at touchdown, so the spring
  // pushes the body along that held axis only and transverse body motion
  // carries no spring reaction. The pre-takeoff correction torque spins the
  // body about the pin without touching its translation.
  void advanceStance() {
    const Vec2 d = state_.body.r - state_.foot.r;
    const double stretch = dot(d, held_axis_) - sc_.robot.rest_length;
    Vec2 body_accel =
        Vec2{0.0, -sc_.world.gravity} -
        (sc_.robot.stiffness / sc_.robot.mass_body * stretch) * held_axis_;
    if (sc_.control.step2_damper) {
      const Vec2 damper = horizontal_damping_force(sc_.control.gamma, state_.body.v);
      body_accel += damper / sc_.robot.mass_body;
    }
    const double pivot_inertia =
        sc_.robot.inertia + sc_.robot.mass_body * sc_.robot.rest_length * sc_.robot.rest_length;
    if (sc_.control.step2_torque) {
      const double elapsed = state_.t - touchdown_t_;
      if (!torque_armed_ && elapsed >= stance_duration_pred_ - sc_.control.t_s) {
        const double L_now = pivot_inertia * state_.attitude.omega;
        const double correction = pre_takeoff_impulse(L_now, -kick_this_stance_);
        torque_value_ = pre_takeoff_torque(correction, sc_.control.t_s);
        torque_armed_ = true;
      }
      if (torque_armed_) {
        state_.attitude.omega += torque_value_ / pivot_inertia * dt_;
      }
    }
    integrate_step(state_, body_accel, {0.0, 0.0}, dt_);
    state_.attitude.L = pivot_inertia * state_.attitude.omega;
  }

  // Sliding stance: the static friction cone broke, so the foot skids along
  // the surface under kinetic friction while the body runs free on the
  // spring. The foot re-pins once its slide speed crosses zero and static
  // friction can hold the required tangential force.
  void advanceSlip() {
    const SpringGeometry g =
        spring_geometry(state_.body.r, state_.foot.r, sc_.robot.rest_length);
    const Vec2 spring_on_foot = g.elongation * sc_.robot.stiffness;
    const Vec2 foot_weight{0.0, -sc_.robot.mass_foot * sc_.world.gravity};
    const double normal_force = -dot(spring_on_foot + foot_weight, frame_.normal);
    const double drive = dot(spring_on_foot + foot_weight, frame_.tangent);

    const double slide_speed = dot(state_.foot.v, frame_.tangent);
    const double dir =
        std::abs(slide_speed) > kTinySlideSpeed ? sign_of(slide_speed) : sign_of(drive);
    const double friction = -dir * sc_.robot.mu_kinetic * normal_force;

    const Vec2 foot_accel =
        ((drive + friction) / sc_.robot.mass_foot) * frame_.tangent;
    Vec2 damper{0.0, 0.0};
    if (sc_.control.step2_damper) {
      damper = horizontal_damping_force(sc_.control.gamma, state_.body.v);
    }
    const Vec2 body_accel = Vec2{0.0, -sc_.world.gravity} -
                            g.elongation * (sc_.robot.stiffness / sc_.robot.mass_body) +
                            damper / sc_.robot.mass_body;

    integrate_step(state_, body_accel, foot_accel, dt_);

    const double gap = contact_gap(state_.foot.r, sc_.robot.foot_radius, sc_.world);
    state_.foot.r -= gap * frame_.normal;
    const double slide_after = dot(state_.foot.v, frame_.tangent);
    state_.foot.v = slide_after * frame_.tangent;

    const bool crossed = slide_speed * slide_after < 0.0;
    if (crossed || std::abs(slide_after) <= kTinySlideSpeed) {
      state_.foot.v = {0.0, 0.0};
      const StanceReaction reaction = stance_foot_reaction(state_, sc_.robot, sc_.world);
      if (!reaction.slipping && !reaction.liftoff) {
        slipping_ = false;
        // re-grip: the hip holds whatever direction the slide left the leg in
        held_axis_ =
            spring_geometry(state_.body.r, state_.foot.r, sc_.robot.rest_length).axis;
        const double slid =
            dot(state_.foot.r, frame_.tangent) - slip_start_tangent_;
        emit(EventKind::SlipStop, std::abs(slid));
      }
    }
  }

  void advanceFlight() {
    const FlightAccel a0 = flight_accel_;
    // The horizontal compensator reacts to the body's velocity wherever the
    // body moves; it is frozen over the step, outside the two-point average.
    Vec2 damp{0.0, 0.0};
    if (sc_.control.step2_damper) {
      damp = horizontal_damping_force(sc_.control.gamma, state_.body.v) /
             sc_.robot.mass_body;
    }
    state_.body.r += state_.body.v * dt_ + (a0.body + damp) * (0.5 * dt_ * dt_);
    state_.foot.r += state_.foot.v * dt_ + a0.foot * (0.5 * dt_ * dt_);
    const FlightAccel a1 =
        flight_accelerations(state_.body, state_.foot, sc_.robot, sc_.world);
    state_.body.v += (a0.body + a1.body) * (0.5 * dt_) + damp * dt_;
    state_.foot.v += (a0.foot + a1.foot) * (0.5 * dt_);
    state_.attitude.alpha += state_.attitude.omega * dt_;
    state_.attitude.L = sc_.robot.inertia * state_.attitude.omega;
    state_.t += dt_;
    flight_accel_ = a1;

    const MassState com = com_state(state_, sc_.robot);
    if (prev_com_vz_ > 0.0 && com.v.z <= 0.0) emit(EventKind::Apex, com.r.z);
    prev_com_vz_ = com.v.z;
  }

  // Liftoff hands the leg back to the hip detent: the leg locks to the body,
  // so the pair leaves the ground rotating together at the body's spin rate,
  // or at the planned rate when touchdown-angle planning is active. The
  // internal impulse that aligns the leg's swing with that rate exchanges
  // transverse momentum between body and foot without changing their sum.
  void onLiftoff() {
    const double stance_duration = state_.t - touchdown_t_;
    emit(EventKind::Liftoff, stance_duration);
    const bool real_stance = stance_duration >= 0.1 * kHopDebounce;
    if (real_stance) stance_duration_pred_ = stance_duration;

    if (real_stance) {
      const SpringGeometry g =
          spring_geometry(state_.body.r, state_.foot.r, sc_.robot.rest_length);
      const double lean = lean_angle(g.axis);
      double world_rate = state_.attitude.omega;

      if (sc_.control.step1) {
        const MassState com = com_state(state_, sc_.robot);
        const double ascent_rate = dot(com.v, frame_.normal);
        double flight_time = 0.0;
        if (ascent_rate > 0.0) {
          flight_time = 2.0 * ascent_rate / (sc_.world.gravity * frame_.normal.z);
        } else {
          flight_time = last_flight_duration_;
        }
        if (flight_time > 0.0) {
          const double takeoff_angle = sc_.world.slope_angle - lean;
          double target = desired_touchdown_angle(sc_.control.alpha_real, sc_.world.slope_angle);
          if (sc_.control.use_optimal_alpha) {
            target = optimal_touchdown_angle(sc_.control.impulse_model, target,
                                             takeoff_angle, flight_time);
          }
          world_rate = -takeoff_rotation_rate(takeoff_angle, target, flight_time);
        }
      }

      const Vec2 up = ccw90(g.axis);
      const double rel = dot(state_.body.v - state_.foot.v, up);
      const double dv = g.length * world_rate - rel;
      const double total_mass = sc_.robot.mass_body + sc_.robot.mass_foot;
      state_.body.v += (sc_.robot.mass_foot / total_mass * dv) * up;
      state_.foot.v -= (sc_.robot.mass_body / total_mass * dv) * up;
      state_.attitude.alpha = lean;
      state_.attitude.omega = world_rate;
    }

    state_.attitude.L = sc_.robot.inertia * state_.attitude.omega;
    state_.phase = Phase::Flight;
    slipping_ = false;
    torque_armed_ = false;
    flight_start_t_ = state_.t;
    flight_accel_ = flight_accelerations(state_.body, state_.foot, sc_.robot, sc_.world);
    prev_com_vz_ = com_state(state_, sc_.robot).v.z;
  }

  Scenario sc_;
  SlopeFrame frame_;
  double dt_;
  RobotState state_;
  FlightAccel flight_accel_;
  std::vector<HopEvent> events_;

  bool slipping_ = false;
  Vec2 held_axis_{0.0, 1.0};
  double slip_start_tangent_ = 0.0;
  bool torque_armed_ = false;
  double torque_value_ = 0.0;
  double kick_this_stance_ = 0.0;
  double stance_duration_pred_;
  double touchdown_t_ = 0.0;
  double flight_start_t_ = 0.0;
  double last_flight_duration_ = 0.0;
  double prev_com_vz_ = 0.0;
  int touchdown_count_ = 0;
};

double sample_com_x(const Sample& s, const RobotParams& robot) {
  const double total = robot.mass_body + robot.mass_foot;
  return (s.body.r.x * robot.mass_body + s.foot.r.x * robot.mass_foot) / total;
}

void fold_touchdowns(Metrics& m, const std::vector<double>& times,
                     const std::vector<double>& com_xs,
                     const std::vector<double>& residuals) {
  std::vector<double> t, x;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!t.empty() && times[i] - t.back() < kHopDebounce) continue;
    t.push_back(times[i]);
    x.push_back(com_xs[i]);
    m.max_residual_omega = std::max(m.max_residual_omega, residuals[i]);
  }
  m.num_touchdowns = static_cast<int>(t.size());
  for (std::size_t i = 1; i < t.size(); ++i) {
    m.hop_periods.push_back(t[i] - t[i - 1]);
    m.per_hop_drift.push_back(std::abs(x[i] - x[i - 1]));
  }
}

}  // namespace

void Scenario::validate() const {
  world.validate();
  robot.validate();
  if (!(duration > 0.0)) throw ConfigError("duration_s", "duration must be positive");
  if (decimation < 1) throw ConfigError("decimation", "decimation must be at least 1");
  if (!std::isfinite(initial_alpha))
    throw ConfigError("alpha_real_deg", "initial lean must be finite");
  if (!(contact_gap({0.0, foot_start_height}, robot.foot_radius, world) > 0.0))
    throw ConfigError("foot_start_height", "start height must place the foot above the surface");
  if (!(control.gamma >= 0.0))
    throw ConfigError("gamma_kg_per_s", "damper reactivity must be non-negative");
  if (!(control.t_s > 0.0))
    throw ConfigError("t_s_s", "correction window must be positive");
  if (!std::isfinite(control.alpha_real))
    throw ConfigError("alpha_real_deg", "touchdown lean must be finite");
}

RunResult run_scenario(const Scenario& scenario) {
  scenario.validate();
  Stepper stepper(scenario);
  const std::int64_t n_steps = std::llround(scenario.duration / scenario.world.dt);

  RunResult out;
  out.scenario = scenario;
  out.trajectory.reserve(static_cast<std::size_t>(n_steps / scenario.decimation) + 2);

  Metrics& m = out.metrics;
  std::vector<double> td_times, td_com_xs, td_residuals;

  bool first = true;
  auto observe = [&](const Stepper& st, bool record) {
    const RobotState& s = st.state();
    const MassState com = com_state(s, scenario.robot);
    const double energy = mechanical_energy(s, scenario.robot, scenario.world);
    if (first) {
      m.com_x_start = com.r.x;
      m.energy_start = energy;
      first = false;
    }
    m.com_x_end = com.r.x;
    m.energy_end = energy;
    m.duration = s.t;
    m.max_abs_alpha = std::max(m.max_abs_alpha, std::abs(s.attitude.alpha));
    ++m.samples;
    if (record) out.trajectory.push_back(st.sample());
  };

  std::size_t seen_events = 0;
  auto harvest = [&](const Stepper& st) {
    const auto& ev = st.events();
    for (; seen_events < ev.size(); ++seen_events) {
      const HopEvent& e = ev[seen_events];
      if (e.kind == EventKind::Touchdown) {
        td_times.push_back(e.t);
        td_com_xs.push_back(e.com_x);
        td_residuals.push_back(e.value);
      }
    }
  };

  for (std::int64_t i = 0; i < n_steps; ++i) {
    stepper.prepare();
    harvest(stepper);
    observe(stepper, i % scenario.decimation == 0);
    stepper.advance();
    harvest(stepper);
  }
  stepper.prepare();
  harvest(stepper);
  observe(stepper, true);

  fold_touchdowns(m, td_times, td_com_xs, td_residuals);
  m.horizontal_drift = std::abs(m.com_x_end - m.com_x_start);
  out.events = stepper.events();
  return out;
}

Metrics compute_metrics(const Trajectory& trajectory, const RobotParams& robot) {
  Metrics m;
  if (trajectory.empty()) return m;
  std::vector<double> td_times, td_com_xs, td_residuals;
  for (const Sample& s : trajectory) {
    m.max_abs_alpha = std::max(m.max_abs_alpha, std::abs(s.alpha));
    ++m.samples;
    if (s.phase == Phase::Impact) {
      td_times.push_back(s.t);
      td_com_xs.push_back(sample_com_x(s, robot));
      td_residuals.push_back(std::abs(s.omega));
    }
  }
  m.com_x_start = sample_com_x(trajectory.front(), robot);
  m.com_x_end = sample_com_x(trajectory.back(), robot);
  m.energy_start = trajectory.front().energy;
  m.energy_end = trajectory.back().energy;
  m.duration = trajectory.back().t;
  fold_touchdowns(m, td_times, td_com_xs, td_residuals);
  m.horizontal_drift = std::abs(m.com_x_end - m.com_x_start);
  return m;
}

double measure_landing_impulse(Scenario scenario, double touchdown_angle) {
  scenario.control.step1 = false;
  scenario.control.step2_torque = false;
  scenario.control.step2_damper = false;
  scenario.initial_alpha = scenario.world.slope_angle - touchdown_angle;
  scenario.validate();

  Stepper stepper(scenario);
  const std::int64_t cap = std::llround(10.0 / scenario.world.dt);
  for (std::int64_t i = 0; i < cap; ++i) {
    stepper.prepare();
    stepper.advance();
    if (stepper.touchdown_count() >= 1) return stepper.last_kick();
  }
  throw NumericalAbort("calibration drop never reached the surface");
}

ImpulseModel calibrate_from_drops(const Scenario& base, double angle_lo,
                                  double angle_hi, double alpha_nominal) {
  return calibrate_impulse_model(
      [&base](double angle) { return measure_landing_impulse(base, angle); },
      angle_lo, angle_hi, alpha_nominal);
}

}  // namespace hopper
