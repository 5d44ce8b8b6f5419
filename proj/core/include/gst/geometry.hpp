#pragma once

#include <optional>
#include <vector>

#include "gst/common.hpp"

namespace gst {

/// Closed interval [lo, hi]; used for angle and parameter ranges.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Subintervals of [a0, a1] (an absolute angle range, radians) whose points
/// on the circle center/radius lie in the closed ball B_R(z).  a1 >= a0 and
/// a1 - a0 <= 2 pi + eps.
std::vector<Interval> arc_intervals_in_ball(Vec2 center, double radius,
                                            double a0, double a1, Vec2 z,
                                            double R);

/// Parameter subinterval of [0,1] of the segment a + t(b-a) inside B_R(z).
std::optional<Interval> segment_interval_in_ball(Vec2 a, Vec2 b, Vec2 z,
                                                 double R);

/// Parameter interval of the line p + t d inside the closed axis-aligned
/// rectangle [lo, hi], restricted to [tmin, tmax].  Liang-Barsky.
std::optional<Interval> clip_line_to_rect(Vec2 p, Vec2 d, Vec2 lo, Vec2 hi,
                                          double tmin, double tmax);

/// Length of the segment [a, b] inside the half-open rectangle
/// [lo.x, hi.x) x [lo.y, hi.y): collinear overlap with the two high edges
/// does not count, overlap with the low edges does.
double segment_length_in_rect(Vec2 a, Vec2 b, Vec2 lo, Vec2 hi);

/// Length of the circular arc (absolute angle range [a0, a1]) inside the
/// rectangle treated as closed; arcs meet edge lines in measure zero, so
/// the half-open distinction is immaterial for them.
double arc_length_in_rect(Vec2 center, double radius, double a0, double a1,
                          Vec2 lo, Vec2 hi);

}  // namespace gst
