#pragma once

#include <cmath>
#include <span>

namespace ubiloc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return s * v; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

// Wraps any finite angle into [-pi, pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r - kPi;
}

// Shortest signed difference a - b, in [-pi, pi).
inline double angle_diff(double a, double b) { return normalize_angle(a - b); }

// Counterclockwise rotation by `angle`.
inline Vec2 rotate(double angle, Vec2 v) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// User state: world position plus absolute heading (ccw from world +x).
struct Pose {
  Vec2 position;
  double heading = 0.0;    // rad, [-pi, pi)
  double timestamp = 0.0;  // s
};

// Fixed reference device at a known world position.
struct AnchorTag {
  int id = 0;
  Vec2 position;
};

// One (range, bearing) observation of an anchor from a device pose.
// Bearings are measured ccw from the device forward axis.
struct TagMeasurement {
  int anchor_id = 0;
  double range_m = 0.0;
  double bearing_rad = 0.0;
  double timestamp = 0.0;
};

inline Vec2 relative_to_world(const Pose& pose, Vec2 local) {
  return pose.position + rotate(pose.heading, local);
}

inline Vec2 world_to_relative(const Pose& pose, Vec2 world) {
  return rotate(-pose.heading, world - pose.position);
}

inline double euclidean_distance(Vec2 a, Vec2 b) { return norm(a - b); }

double circular_mean(std::span<const double> angles);
double circular_stddev(std::span<const double> angles);

}  // namespace ubiloc
