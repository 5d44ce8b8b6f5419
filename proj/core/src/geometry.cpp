#include "gst/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gst {

std::vector<Interval> arc_intervals_in_ball(Vec2 center, double radius,
                                            double a0, double a1, Vec2 z,
                                            double R) {
  if (radius <= 0.0 || a1 < a0)
    throw precondition_error("arc_intervals_in_ball: malformed arc");
  Vec2 rel = z - center;
  double d = rel.norm();
  // Entirely inside / outside without angular structure.
  if (d + radius <= R) return {{a0, a1}};
  if (d <= 1e-300) return radius <= R ? std::vector<Interval>{{a0, a1}}
                                      : std::vector<Interval>{};
  double cosu = (radius * radius + d * d - R * R) / (2.0 * radius * d);
  if (cosu <= -1.0) return {{a0, a1}};
  if (cosu >= 1.0) return {};
  double u = std::acos(cosu);
  double phi0 = std::atan2(rel.y, rel.x);
  // Allowed band [phi0 - u, phi0 + u] modulo 2 pi, unrolled over the arc.
  std::vector<Interval> out;
  double k0 = std::floor((a0 - (phi0 + u)) / kTwoPi);
  for (double k = k0; (phi0 - u) + kTwoPi * k <= a1 + 1e-12; k += 1.0) {
    double lo = std::max(a0, phi0 - u + kTwoPi * k);
    double hi = std::min(a1, phi0 + u + kTwoPi * k);
    if (hi - lo > 1e-12) out.push_back({lo, hi});
  }
  return out;
}

std::optional<Interval> segment_interval_in_ball(Vec2 a, Vec2 b, Vec2 z,
                                                 double R) {
  Vec2 d = b - a;
  Vec2 rel = a - z;
  double qa = d.norm2();
  if (qa <= 1e-300) {
    return rel.norm() <= R ? std::optional<Interval>({0.0, 1.0}) : std::nullopt;
  }
  double qb = 2.0 * rel.dot(d);
  double qc = rel.norm2() - R * R;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  double t0 = (-qb - sq) / (2.0 * qa);
  double t1 = (-qb + sq) / (2.0 * qa);
  double lo = std::max(0.0, t0);
  double hi = std::min(1.0, t1);
  if (hi - lo <= 1e-14) return std::nullopt;
  return Interval{lo, hi};
}

std::optional<Interval> clip_line_to_rect(Vec2 p, Vec2 d, Vec2 lo, Vec2 hi,
                                          double tmin, double tmax) {
  double t0 = tmin, t1 = tmax;
  const double pv[2] = {p.x, p.y};
  const double dv[2] = {d.x, d.y};
  const double lov[2] = {lo.x, lo.y};
  const double hiv[2] = {hi.x, hi.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (std::fabs(dv[axis]) < 1e-300) {
      if (pv[axis] < lov[axis] || pv[axis] > hiv[axis]) return std::nullopt;
      continue;
    }
    double ta = (lov[axis] - pv[axis]) / dv[axis];
    double tb = (hiv[axis] - pv[axis]) / dv[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return std::nullopt;
  }
  return Interval{t0, t1};
}

double segment_length_in_rect(Vec2 a, Vec2 b, Vec2 lo, Vec2 hi) {
  Vec2 d = b - a;
  double len = d.norm();
  if (len <= 1e-300) return 0.0;
  // Half-open convention: measure lying exactly on a high edge is excluded.
  if (d.x == 0.0 && a.x == hi.x) return 0.0;
  if (d.y == 0.0 && a.y == hi.y) return 0.0;
  auto iv = clip_line_to_rect(a, d, lo, hi, 0.0, 1.0);
  return iv ? iv->length() * len : 0.0;
}

double arc_length_in_rect(Vec2 center, double radius, double a0, double a1,
                          Vec2 lo, Vec2 hi) {
  if (radius <= 0.0 || a1 < a0) return 0.0;
  // Cut angles at every crossing of the four edge lines, then classify
  // subarc midpoints against the closed rectangle.
  std::vector<double> cuts = {a0, a1};
  auto add_vertical = [&](double X) {
    double u = (X - center.x) / radius;
    if (u < -1.0 || u > 1.0) return;
    double base = std::acos(std::clamp(u, -1.0, 1.0));
    for (double phi : {base, -base}) {
      double k0 = std::ceil((a0 - phi) / kTwoPi);
      for (double k = k0; phi + kTwoPi * k <= a1; k += 1.0)
        cuts.push_back(phi + kTwoPi * k);
    }
  };
  auto add_horizontal = [&](double Y) {
    double u = (Y - center.y) / radius;
    if (u < -1.0 || u > 1.0) return;
    double base = std::asin(std::clamp(u, -1.0, 1.0));
    for (double phi : {base, kPi - base}) {
      double k0 = std::ceil((a0 - phi) / kTwoPi);
      for (double k = k0; phi + kTwoPi * k <= a1; k += 1.0)
        cuts.push_back(phi + kTwoPi * k);
    }
  };
  add_vertical(lo.x);
  add_vertical(hi.x);
  add_horizontal(lo.y);
  add_horizontal(hi.y);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    Vec2 p{center.x + radius * std::cos(mid), center.y + radius * std::sin(mid)};
    if (p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y)
      total += radius * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

}  // namespace gst
