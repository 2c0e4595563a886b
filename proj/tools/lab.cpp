// Scratch experiment driver. Not part of the build.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "hopper/dynamics.hpp"
#include "hopper/engine.hpp"

using namespace hopper;

constexpr double kDeg = 3.14159265358979323846 / 180.0;

Scenario stage_base() {
  Scenario sc;
  sc.world.slope_angle = 30.0 * kDeg;
  sc.duration = 3.0;
  sc.decimation = 100;
  return sc;
}

void report(const char* name, const RunResult& r, double elapsed_s) {
  const Metrics& m = r.metrics;
  std::printf("=== %s  (%.2f s wall)\n", name, elapsed_s);
  std::printf("  drift %.9f m   com_x %.9f -> %.9f\n", m.horizontal_drift,
              m.com_x_start, m.com_x_end);
  std::printf("  touchdowns %d  max|alpha| %.6f rad  max residual omega %.6f\n",
              m.num_touchdowns, m.max_abs_alpha, m.max_residual_omega);
  std::printf("  energy %.6f -> %.6f\n", m.energy_start, m.energy_end);
  std::printf("  per-hop drift:");
  for (double d : m.per_hop_drift) std::printf(" %.6g", d);
  std::printf("\n  hop periods:");
  for (double p : m.hop_periods) std::printf(" %.5f", p);
  std::printf("\n  events:");
  int shown = 0;
  for (const auto& e : r.events) {
    if (++shown > 24) { std::printf(" ..."); break; }
    std::printf(" [%s t=%.4f x=%.6f v=%.4g]", event_name(e.kind), e.t, e.com_x,
                e.value);
  }
  std::printf("\n\n");
}

RunResult timed(const char* name, const Scenario& sc) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult r = run_scenario(sc);
  auto t1 = std::chrono::steady_clock::now();
  report(name, r, std::chrono::duration<double>(t1 - t0).count());
  return r;
}

int main() {
  // stage 1: no control
  Scenario s1 = stage_base();
  RunResult r1 = timed("stage 1 (open loop)", s1);

  // stage 2: step 1, both alpha_real signs
  for (double sgn : {+1.0, -1.0}) {
    Scenario s2 = stage_base();
    s2.control.step1 = true;
    s2.control.alpha_real = sgn * 0.006 * kDeg;
    s2.initial_alpha = -s2.control.alpha_real;
    char name[64];
    std::snprintf(name, sizeof name, "stage 2 (step1, alpha_real=%+.3f deg)", sgn * 0.006);
    timed(name, s2);
  }

  // stage 3: step 1 + damper, both signs
  for (double sgn : {+1.0, -1.0}) {
    Scenario s3 = stage_base();
    s3.control.step1 = true;
    s3.control.step2_damper = true;
    s3.control.alpha_real = sgn * 0.006 * kDeg;
    s3.initial_alpha = -s3.control.alpha_real;
    char name[64];
    std::snprintf(name, sizeof name, "stage 3 (step1+damper, alpha_real=%+.3f deg)", sgn * 0.006);
    timed(name, s3);
  }

  // stage 3 with torque as well
  {
    Scenario s3 = stage_base();
    s3.control.step1 = true;
    s3.control.step2_damper = true;
    s3.control.step2_torque = true;
    s3.control.alpha_real = 0.006 * kDeg;
    s3.initial_alpha = -s3.control.alpha_real;
    timed("stage 3 + torque", s3);
  }

  // flat-ground drop
  {
    Scenario f = stage_base();
    f.world.slope_angle = 0.0;
    timed("flat drop", f);
  }

  // static placement friction check
  for (double mu : {0.6, 0.5}) {
    Scenario st = stage_base();
    st.robot.mu_static = mu;
    st.robot.mu_kinetic = 0.42;
    if (mu < 0.42) st.robot.mu_kinetic = mu;
    st.foot_start_height = st.robot.foot_radius / std::cos(st.world.slope_angle) + 1e-6;
    st.duration = 1.0;
    char name[64];
    std::snprintf(name, sizeof name, "static placement mu_s=%.2f", mu);
    timed(name, st);
  }

  // landing impulse probe around the slope normal
  {
    Scenario base = stage_base();
    for (double th : {-0.05, 0.0, 0.05, 0.5236}) {
      double kick = measure_landing_impulse(base, th);
      std::printf("probe theta=%+.4f rad -> kick %.6e\n", th, kick);
    }
    ImpulseModel im = calibrate_from_drops(base, 0.5236 - 0.02, 0.5236 + 0.02, 0.5236);
    std::printf("calibrated A=%.6e B=%.6e about %.4f\n\n", im.A, im.B, im.alpha_nominal);
  }
  return 0;
}
