#pragma once

#include <cmath>

namespace hopper {

// Planar vector in the (x, z) plane. x is horizontal (uphill positive on an
// inclined world), z is vertical up.
struct Vec2 {
  double x = 0.0;
  double z = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, z + o.z}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, z - o.z}; }
  constexpr Vec2 operator-() const { return {-x, -z}; }
  constexpr Vec2 operator*(double s) const { return {x * s, z * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, z / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    z += o.z;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    z -= o.z;
    return *this;
  }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.z * b.z; }

// Scalar cross product, positive for counterclockwise a->b in the (x, z)
// plane.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.z - a.z * b.x; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.z); }

inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.z / n};
}

// Rotate v by +90 degrees (counterclockwise).
constexpr Vec2 ccw90(Vec2 v) { return {-v.z, v.x}; }

inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.z); }

}  // namespace hopper
