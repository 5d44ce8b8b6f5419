#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gst {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using cdouble = std::complex<double>;

/// Violated caller-side contract (bad argument, unmet precondition).
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not reach its accuracy or convergence target.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Point in the time-frequency plane (first coordinate time, second frequency)
/// and general planar vector; the plane is identified with C via x + i*y.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double xx, double yy) : x(xx), y(yy) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  Vec2 rot90() const { return {-y, x}; }
  Vec2 normalized() const {
    double n = norm();
    if (n == 0.0) throw precondition_error("cannot normalize zero vector");
    return {x / n, y / n};
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

using PhasePoint = Vec2;

inline cdouble to_complex(Vec2 v) { return {v.x, v.y}; }
inline Vec2 from_complex(cdouble z) { return {z.real(), z.imag()}; }

/// Unit vector at angle theta, measured in revolutions.
inline Vec2 unit_dir(double theta_rev) {
  return {std::cos(kTwoPi * theta_rev), std::sin(kTwoPi * theta_rev)};
}

/// Rotation by theta revolutions.
inline Vec2 rotate(Vec2 v, double theta_rev) {
  double c = std::cos(kTwoPi * theta_rev);
  double s = std::sin(kTwoPi * theta_rev);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Angle of v in revolutions, wrapped to [0, 1).
inline double angle_rev(Vec2 v) {
  double a = std::atan2(v.y, v.x) / kTwoPi;
  if (a < 0.0) a += 1.0;
  return a;
}

/// Wrap an angle in revolutions to [0, 1).
inline double wrap_rev(double a) {
  a = std::fmod(a, 1.0);
  if (a < 0.0) a += 1.0;
  return a;
}

/// Distance between two angles (revolutions) on the circle, in [0, 1/2].
inline double circle_dist_rev(double a, double b) {
  double d = std::fabs(wrap_rev(a) - wrap_rev(b));
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace gst
