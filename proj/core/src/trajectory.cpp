#include "gst/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "gst/geometry.hpp"
#include "gst/numerics.hpp"

namespace gst {

namespace {

std::string format_point(Vec2 z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%g, %g)", z.x, z.y);
  return buf;
}

Vec2 polar_point(const PolarSegment& p, double th) {
  double rr = p.r(th);
  Vec2 u = unit_dir(th);
  return {rr * u.x, rr * u.y};
}

double polar_speed(const PolarSegment& p, double th) {
  double rr = p.r(th);
  double dd = p.dr(th);
  return std::sqrt(dd * dd + kTwoPi * kTwoPi * rr * rr);
}

/// Arc length of a polar segment over [t0, t1] (revolutions), panel-doubled
/// Gauss-Legendre until successive refinements agree to 1e-13 relative.
double polar_arclength(const PolarSegment& p, double t0, double t1) {
  if (t1 <= t0) return 0.0;
  auto f = [&](double th) { return polar_speed(p, th); };
  int panels = std::max(4, static_cast<int>(std::ceil((t1 - t0) * 8.0)));
  double prev = integrate(f, t0, t1, panels);
  for (; panels <= 4096; panels *= 2) {
    double next = integrate(f, t0, t1, panels * 2);
    if (std::fabs(next - prev) <= 1e-13 * std::max(1.0, std::fabs(next)))
      return next;
    prev = next;
  }
  return prev;
}

/// Roots of g on [t0, t1]: scan a fine grid for sign changes and refine each
/// by bisection.  Used to cut polar segments at ball/rectangle boundaries.
std::vector<double> scalar_roots(const std::function<double(double)>& g,
                                 double t0, double t1) {
  int samples = std::clamp(static_cast<int>(std::ceil((t1 - t0) * 2048.0)),
                           256, 1 << 20);
  std::vector<double> roots;
  double prev_t = t0;
  double prev_v = g(t0);
  for (int i = 1; i <= samples; ++i) {
    double t = t0 + (t1 - t0) * static_cast<double>(i) / samples;
    double v = g(t);
    if (prev_v == 0.0) roots.push_back(prev_t);
    if (prev_v * v < 0.0) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = g(mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  if (g(t1) == 0.0) roots.push_back(t1);
  return roots;
}

/// Subranges of [theta0, theta1] on which `inside(theta)` holds, cut at the
/// roots of the signed boundary functions in `cuts`.
std::vector<std::pair<double, double>> polar_subranges(
    const PolarSegment& p,
    const std::vector<std::function<double(double)>>& cuts,
    const std::function<bool(double)>& inside) {
  std::vector<double> pts = {p.theta0, p.theta1};
  for (const auto& g : cuts) {
    auto r = scalar_roots(g, p.theta0, p.theta1);
    pts.insert(pts.end(), r.begin(), r.end());
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    if (b - a <= 1e-14) continue;
    if (inside(0.5 * (a + b))) {
      if (!out.empty() && std::fabs(out.back().second - a) <= 1e-12) {
        out.back().second = b;  // merge adjacent keeps
      } else {
        out.push_back({a, b});
      }
    }
  }
  return out;
}

bool is_full_circle(const ArcSegment& a) {
  return std::fabs((a.a1 - a.a0) - kTwoPi) <= 1e-12;
}

}  // namespace

double segment_length(const Segment& s) {
  struct Visitor {
    double operator()(const ArcSegment& a) const {
      if (a.radius <= 0.0 || a.a1 < a.a0)
        throw precondition_error("segment_length: malformed arc");
      return a.radius * (a.a1 - a.a0);
    }
    double operator()(const LineSeg& l) const { return (l.b - l.a).norm(); }
    double operator()(const PolarSegment& p) const {
      if (!p.r || !p.dr)
        throw precondition_error("segment_length: polar segment lacks r/dr");
      return polar_arclength(p, p.theta0, p.theta1);
    }
  };
  return std::visit(Visitor{}, s);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::circles: return "circles";
    case Family::polygons: return "polygons";
    case Family::point_path: return "point-path";
    case Family::lines: return "lines";
    case Family::edges: return "edges";
    case Family::archimedes: return "archimedes";
    case Family::custom: return "custom";
  }
  throw precondition_error("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "circles") return Family::circles;
  if (name == "polygons") return Family::polygons;
  if (name == "point-path") return Family::point_path;
  if (name == "lines") return Family::lines;
  if (name == "edges") return Family::edges;
  if (name == "archimedes") return Family::archimedes;
  if (name == "custom") return Family::custom;
  throw precondition_error("unknown trajectory family: " + name);
}

double Trajectory::length() const {
  double total = 0.0;
  for (const auto& s : segments) total += segment_length(s);
  return total;
}

Trajectory make_circles(double eta, int k_max) {
  if (eta <= 0.0)
    throw precondition_error("make_circles: eta must be positive");
  if (k_max < 1)
    throw precondition_error("make_circles: k_max must be at least 1");
  Trajectory t;
  t.family = Family::circles;
  t.eta = eta;
  t.k_max = k_max;
  t.r_trunc = eta * k_max;
  for (int k = 1; k <= k_max; ++k)
    t.segments.push_back(ArcSegment{{0.0, 0.0}, eta * k, 0.0, kTwoPi});
  return t;
}

Trajectory make_polygon_family(const std::vector<Vec2>& vertices, double eta,
                               int k_max) {
  if (eta <= 0.0)
    throw precondition_error("make_polygon_family: eta must be positive");
  if (k_max < 1)
    throw precondition_error("make_polygon_family: k_max must be at least 1");
  std::size_t n = vertices.size();
  if (n < 3)
    throw precondition_error(
        "make_polygon_family: need at least 3 vertices");
  // Star-shape about the origin: every edge must subtend the same strict
  // orientation seen from 0, and no edge line may pass through 0.
  double orient = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = vertices[i];
    Vec2 b = vertices[(i + 1) % n];
    double edge_len = (b - a).norm();
    if (edge_len <= 1e-12)
      throw precondition_error("make_polygon_family: degenerate edge " +
                               std::to_string(i));
    double cr = a.cross(b);
    if (std::fabs(cr) / edge_len <= 1e-9)
      throw precondition_error(
          "make_polygon_family: edge line " + std::to_string(i) +
          " passes through the origin");
    if (orient == 0.0) {
      orient = cr > 0.0 ? 1.0 : -1.0;
    } else if (cr * orient < 0.0) {
      throw precondition_error(
          "make_polygon_family: origin is outside the kernel at edge " +
          std::to_string(i));
    }
  }
  Trajectory t;
  t.family = Family::polygons;
  t.eta = eta;
  t.k_max = k_max;
  t.generators = vertices;
  double rmax = 0.0;
  for (const Vec2& v : vertices) rmax = std::max(rmax, v.norm());
  t.r_trunc = eta * k_max * rmax;
  for (int k = 1; k <= k_max; ++k) {
    double s = eta * k;
    for (std::size_t i = 0; i < n; ++i)
      t.segments.push_back(
          LineSeg{vertices[i] * s, vertices[(i + 1) % n] * s});
  }
  return t;
}

Trajectory make_point_path(const std::vector<Vec2>& points, double eta,
                           int rounds) {
  if (eta <= 0.0)
    throw precondition_error("make_point_path: eta must be positive");
  if (rounds < 1)
    throw precondition_error("make_point_path: rounds must be at least 1");
  std::size_t n = points.size();
  if (n < 3)
    throw precondition_error("make_point_path: need at least 3 points");
  for (std::size_t i = 0; i < n; ++i)
    if (points[i].norm() <= 1e-12)
      throw precondition_error("make_point_path: point " + std::to_string(i) +
                               " is at the origin");
  // Arguments must wind exactly once, strictly monotonically mod 1
  // revolution, in either direction.  Step i is arg(z_{i+1}) - arg(z_i).
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = angle_rev(points[i]);
    double b = angle_rev(points[(i + 1) % n]);
    step[i] = wrap_rev(b - a);
    if (step[i] <= 1e-12 || step[i] >= 1.0 - 1e-12)
      throw precondition_error(
          "make_point_path: arguments not strictly monotone at index " +
          std::to_string(i));
  }
  double fwd = 0.0, bwd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fwd += step[i];
    bwd += 1.0 - step[i];
  }
  bool increasing = std::fabs(fwd - 1.0) <= 1e-9;
  bool decreasing = std::fabs(bwd - 1.0) <= 1e-9;
  if (!increasing && !decreasing) {
    // Find the step fighting the majority direction to name it.
    bool majority_up = fwd < bwd;
    for (std::size_t i = 0; i < n; ++i) {
      bool up = step[i] < 0.5;
      if (up != majority_up)
        throw precondition_error(
            "make_point_path: arguments not strictly monotone at index " +
            std::to_string(i));
    }
    throw precondition_error(
        "make_point_path: arguments wind more than once around the origin");
  }
  Trajectory t;
  t.family = Family::point_path;
  t.eta = eta;
  t.rounds = rounds;
  t.generators = points;
  // Vertex list: eta k z_1 .. eta k z_n for k = 1..rounds, closed by the
  // connector to eta (k+1) z_1; n segments per round.
  std::vector<Vec2> verts;
  for (int k = 1; k <= rounds; ++k)
    for (std::size_t i = 0; i < n; ++i) verts.push_back(points[i] * (eta * k));
  verts.push_back(points[0] * (eta * (rounds + 1)));
  double rmax = 0.0;
  for (const Vec2& v : verts) rmax = std::max(rmax, v.norm());
  t.r_trunc = rmax;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    t.segments.push_back(LineSeg{verts[i], verts[i + 1]});
  return t;
}

Trajectory make_parallel_lines(double theta, const std::vector<double>& offsets,
                               double box_half_width) {
  if (offsets.empty())
    throw precondition_error("make_parallel_lines: offsets must be non-empty");
  if (box_half_width <= 0.0)
    throw precondition_error(
        "make_parallel_lines: box half-width must be positive");
  Trajectory t;
  t.family = Family::lines;
  t.line_angle = theta;
  t.r_trunc = box_half_width * std::sqrt(2.0);
  Vec2 ell = unit_dir(theta);
  Vec2 dir = rotate(Vec2{0.0, 1.0}, theta);
  Vec2 lo{-box_half_width, -box_half_width};
  Vec2 hi{box_half_width, box_half_width};
  for (double lambda : offsets) {
    Vec2 p = ell * lambda;
    double span = 4.0 * (box_half_width + std::fabs(lambda) + 1.0);
    auto iv = clip_line_to_rect(p, dir, lo, hi, -span, span);
    if (!iv) continue;
    t.line_offsets.push_back(lambda);
    t.segments.push_back(LineSeg{p + dir * iv->lo, p + dir * iv->hi});
  }
  return t;
}

Trajectory make_edges(double gamma, double eta, Vec2 dminus, Vec2 dplus,
                      double box_half_width) {
  if (eta <= 0.0) throw precondition_error("make_edges: eta must be positive");
  if (box_half_width <= 0.0)
    throw precondition_error("make_edges: box half-width must be positive");
  if (dminus.norm() <= 1e-12 || dplus.norm() <= 1e-12)
    throw precondition_error("make_edges: directions must be non-zero");
  Vec2 dm = dminus.normalized();
  Vec2 dp = dplus.normalized();
  Vec2 ell = unit_dir(gamma);
  double cm = std::fabs(ell.cross(dm));
  double cp = std::fabs(ell.cross(dp));
  if (cm <= 1e-12)
    throw precondition_error(
        "make_edges: backward direction is collinear with the vertex line");
  if (cp <= 1e-12)
    throw precondition_error(
        "make_edges: forward direction is collinear with the vertex line");
  Trajectory t;
  t.family = Family::edges;
  t.eta = eta;
  t.edge_eta = eta;
  t.edge_gamma = gamma;
  t.edge_dminus = dm;
  t.edge_dplus = dp;
  t.r_trunc = box_half_width * std::sqrt(2.0);
  Vec2 lo{-box_half_width, -box_half_width};
  Vec2 hi{box_half_width, box_half_width};
  // A ray from vertex eta k ell can only reach the box while the line it
  // rides keeps distance |eta k| * |ell x d| below the box diameter.
  double reach = box_half_width * 2.0;
  int k_lim = static_cast<int>(
      std::ceil(reach / (eta * std::min(cm, cp)))) + 2;
  for (int k = -k_lim; k <= k_lim; ++k) {
    Vec2 v = ell * (eta * k);
    double span = 4.0 * (box_half_width + eta * std::fabs(k) + 1.0);
    if (auto iv = clip_line_to_rect(v, dm * -1.0, lo, hi, 0.0, span))
      t.segments.push_back(
          LineSeg{v - dm * iv->lo, v - dm * iv->hi});
    if (auto iv = clip_line_to_rect(v, dp, lo, hi, 0.0, span))
      t.segments.push_back(LineSeg{v + dp * iv->lo, v + dp * iv->hi});
  }
  t.k_max = k_lim;
  return t;
}

Trajectory make_archimedes(double eta, double turns) {
  if (eta <= 0.0)
    throw precondition_error("make_archimedes: eta must be positive");
  if (turns <= 0.0)
    throw precondition_error("make_archimedes: turns must be positive");
  Trajectory t;
  t.family = Family::archimedes;
  t.eta = eta;
  t.r_trunc = eta * turns;
  PolarSegment p;
  p.theta0 = 0.0;
  p.theta1 = turns;
  p.r = [eta](double th) { return eta * th; };
  p.dr = [eta](double) { return eta; };
  p.d2r = [](double) { return 0.0; };
  p.profile = "archimedes";
  p.param = eta;
  t.segments.push_back(std::move(p));
  return t;
}

Trajectory translated(const Trajectory& t, Vec2 dz) {
  Trajectory out;
  out.family = Family::custom;
  out.eta = t.eta;
  out.r_trunc = t.r_trunc + dz.norm();
  for (const auto& s : t.segments) {
    if (std::holds_alternative<PolarSegment>(s))
      throw precondition_error(
          "translated: polar segments are origin-anchored");
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      out.segments.push_back(
          ArcSegment{a->center + dz, a->radius, a->a0, a->a1});
    } else {
      const auto& l = std::get<LineSeg>(s);
      out.segments.push_back(LineSeg{l.a + dz, l.b + dz});
    }
  }
  return out;
}

Trajectory rotated(const Trajectory& t, double theta_rev) {
  Trajectory out = t;
  out.segments.clear();
  double rad = kTwoPi * theta_rev;
  for (const auto& s : t.segments) {
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      out.segments.push_back(ArcSegment{rotate(a->center, theta_rev),
                                        a->radius, a->a0 + rad, a->a1 + rad});
    } else if (const auto* l = std::get_if<LineSeg>(&s)) {
      out.segments.push_back(
          LineSeg{rotate(l->a, theta_rev), rotate(l->b, theta_rev)});
    } else {
      const auto& p = std::get<PolarSegment>(s);
      PolarSegment q;
      q.theta0 = p.theta0 + theta_rev;
      q.theta1 = p.theta1 + theta_rev;
      auto r = p.r;
      auto dr = p.dr;
      auto d2r = p.d2r;
      q.r = [r, theta_rev](double th) { return r(th - theta_rev); };
      q.dr = [dr, theta_rev](double th) { return dr(th - theta_rev); };
      q.d2r = [d2r, theta_rev](double th) { return d2r(th - theta_rev); };
      q.profile = "";  // rotated profile is no longer the named one
      q.param = p.param;
      out.segments.push_back(std::move(q));
    }
  }
  for (Vec2& g : out.generators) g = rotate(g, theta_rev);
  out.line_angle = wrap_rev(out.line_angle + theta_rev);
  out.edge_gamma = wrap_rev(out.edge_gamma + theta_rev);
  out.edge_dminus = rotate(out.edge_dminus, theta_rev);
  out.edge_dplus = rotate(out.edge_dplus, theta_rev);
  return out;
}

Trajectory clipped_to_ball(const Trajectory& t, Vec2 center, double radius) {
  if (radius <= 0.0)
    throw precondition_error("clipped_to_ball: radius must be positive");
  Trajectory out = t;
  out.segments.clear();
  out.r_trunc = std::min(t.r_trunc, center.norm() + radius);
  for (const auto& s : t.segments) {
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      for (const Interval& iv : arc_intervals_in_ball(
               a->center, a->radius, a->a0, a->a1, center, radius))
        out.segments.push_back(
            ArcSegment{a->center, a->radius, iv.lo, iv.hi});
    } else if (const auto* l = std::get_if<LineSeg>(&s)) {
      if (auto iv = segment_interval_in_ball(l->a, l->b, center, radius)) {
        Vec2 d = l->b - l->a;
        out.segments.push_back(
            LineSeg{l->a + d * iv->lo, l->a + d * iv->hi});
      }
    } else {
      const auto& p = std::get<PolarSegment>(s);
      auto g = [&p, center, radius](double th) {
        return (polar_point(p, th) - center).norm() - radius;
      };
      auto inside = [&g](double th) { return g(th) <= 0.0; };
      for (auto [a0, a1] : polar_subranges(p, {g}, inside)) {
        PolarSegment q = p;
        q.theta0 = a0;
        q.theta1 = a1;
        out.segments.push_back(std::move(q));
      }
    }
  }
  return out;
}

QuadratureSet quadrature(const Trajectory& t, double h) {
  if (h <= 0.0)
    throw precondition_error("quadrature: max spacing must be positive");
  QuadratureSet q;
  for (const auto& s : t.segments) {
    double len = segment_length(s);
    if (len <= 1e-300) continue;
    int n = std::max(1, static_cast<int>(std::ceil(len / h)));
    double step = len / n;
    q.spacing = std::max(q.spacing, step);
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      bool periodic = is_full_circle(*a);
      int count = periodic ? n : n + 1;
      for (int i = 0; i < count; ++i) {
        double ang = a->a0 + (a->a1 - a->a0) * static_cast<double>(i) / n;
        q.nodes.push_back(Vec2{a->center.x + a->radius * std::cos(ang),
                               a->center.y + a->radius * std::sin(ang)});
        double w = periodic ? step
                            : ((i == 0 || i == n) ? 0.5 * step : step);
        q.weights.push_back(w);
      }
    } else if (const auto* l = std::get_if<LineSeg>(&s)) {
      Vec2 d = l->b - l->a;
      for (int i = 0; i <= n; ++i) {
        double u = static_cast<double>(i) / n;
        q.nodes.push_back(l->a + d * u);
        q.weights.push_back((i == 0 || i == n) ? 0.5 * step : step);
      }
    } else {
      const auto& p = std::get<PolarSegment>(s);
      // Place nodes at equal arc length: walk the cumulative arc-length
      // table and refine each target by bisection in theta.
      int table = std::clamp(
          static_cast<int>(std::ceil((p.theta1 - p.theta0) * 1024.0)), 256,
          1 << 20);
      std::vector<double> cum(table + 1, 0.0);
      for (int i = 0; i < table; ++i) {
        double a0 = p.theta0 + (p.theta1 - p.theta0) * i / table;
        double a1 = p.theta0 + (p.theta1 - p.theta0) * (i + 1) / table;
        cum[i + 1] = cum[i] + integrate(
            [&](double th) { return polar_speed(p, th); }, a0, a1, 1, 8);
      }
      double total = cum[table];
      for (int i = 0; i <= n; ++i) {
        double target = total * static_cast<double>(i) / n;
        double th;
        if (i == 0) {
          th = p.theta0;
        } else if (i == n) {
          th = p.theta1;
        } else {
          auto it = std::lower_bound(cum.begin(), cum.end(), target);
          int j = std::max(1, static_cast<int>(it - cum.begin()));
          double lo = p.theta0 + (p.theta1 - p.theta0) * (j - 1) / table;
          double hi = p.theta0 + (p.theta1 - p.theta0) * j / table;
          double slo = cum[j - 1];
          for (int itb = 0; itb < 60; ++itb) {
            double mid = 0.5 * (lo + hi);
            double smid = slo + integrate(
                [&](double x) { return polar_speed(p, x); }, lo, mid, 1, 8);
            if (smid < target) {
              lo = mid;
              slo = smid;
            } else {
              hi = mid;
            }
          }
          th = 0.5 * (lo + hi);
        }
        q.nodes.push_back(polar_point(p, th));
        q.weights.push_back((i == 0 || i == n) ? 0.5 * step : step);
      }
    }
  }
  return q;
}

double ball_intersection_length(const Trajectory& t, Vec2 center,
                                double radius) {
  double total = 0.0;
  for (const auto& s : t.segments) {
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      for (const Interval& iv : arc_intervals_in_ball(
               a->center, a->radius, a->a0, a->a1, center, radius))
        total += a->radius * iv.length();
    } else if (const auto* l = std::get_if<LineSeg>(&s)) {
      if (auto iv = segment_interval_in_ball(l->a, l->b, center, radius))
        total += iv->length() * (l->b - l->a).norm();
    } else {
      const auto& p = std::get<PolarSegment>(s);
      auto g = [&p, center, radius](double th) {
        return (polar_point(p, th) - center).norm() - radius;
      };
      auto inside = [&g](double th) { return g(th) <= 0.0; };
      for (auto [a0, a1] : polar_subranges(p, {g}, inside))
        total += polar_arclength(p, a0, a1);
    }
  }
  return total;
}

double rect_intersection_length(const Trajectory& t, Vec2 lo, Vec2 hi) {
  double total = 0.0;
  for (const auto& s : t.segments) {
    if (const auto* a = std::get_if<ArcSegment>(&s)) {
      total += arc_length_in_rect(a->center, a->radius, a->a0, a->a1, lo, hi);
    } else if (const auto* l = std::get_if<LineSeg>(&s)) {
      total += segment_length_in_rect(l->a, l->b, lo, hi);
    } else {
      const auto& p = std::get<PolarSegment>(s);
      std::vector<std::function<double(double)>> cuts = {
          [&p, lo](double th) { return polar_point(p, th).x - lo.x; },
          [&p, hi](double th) { return polar_point(p, th).x - hi.x; },
          [&p, lo](double th) { return polar_point(p, th).y - lo.y; },
          [&p, hi](double th) { return polar_point(p, th).y - hi.y; }};
      auto inside = [&p, lo, hi](double th) {
        Vec2 w = polar_point(p, th);
        return w.x >= lo.x && w.x < hi.x && w.y >= lo.y && w.y < hi.y;
      };
      for (auto [a0, a1] : polar_subranges(p, cuts, inside))
        total += polar_arclength(p, a0, a1);
    }
  }
  return total;
}

GridSpec GridSpec::centered(double extent, double step) {
  if (extent <= 0.0 || step <= 0.0)
    throw precondition_error("GridSpec::centered: extent/step must be positive");
  GridSpec g;
  g.lo = {-extent, -extent};
  g.hi = {extent, extent};
  g.nx = std::max(1, static_cast<int>(std::lround(2.0 * extent / step)));
  g.ny = g.nx;
  return g;
}

std::vector<Vec2> GridSpec::points() const {
  if (nx < 0 || ny < 0)
    throw precondition_error("GridSpec: negative subdivision counts");
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    double y = ny == 0 ? lo.y : lo.y + (hi.y - lo.y) * j / ny;
    for (int i = 0; i <= nx; ++i) {
      double x = nx == 0 ? lo.x : lo.x + (hi.x - lo.x) * i / nx;
      out.push_back({x, y});
    }
  }
  return out;
}

DensityReport density_scan(const Trajectory& t, double R,
                           const GridSpec& grid) {
  if (R <= 0.0)
    throw precondition_error("density_scan: R must be positive");
  std::vector<Vec2> pts = grid.points();
  for (const Vec2& z : pts) {
    if (z.norm() + R + t.eta > t.r_trunc + 1e-12)
      throw precondition_error(
          "density_scan: grid point " + format_point(z) +
          " breaks the truncation margin (|z| + R + eta > r_trunc)");
  }
  auto partial = chunked_map<std::pair<double, double>>(
      pts.size(), 64, [&](std::size_t b, std::size_t e) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = b; i < e; ++i) {
          double len = ball_intersection_length(t, pts[i], R);
          lo = std::min(lo, len);
          hi = std::max(hi, len);
        }
        return std::make_pair(lo, hi);
      });
  DensityReport rep;
  rep.R = R;
  rep.grid = grid;
  rep.m_est = std::numeric_limits<double>::infinity();
  rep.M_est = 0.0;
  for (auto [lo, hi] : partial) {
    rep.m_est = std::min(rep.m_est, lo);
    rep.M_est = std::max(rep.M_est, hi);
  }
  if (pts.empty()) rep.m_est = 0.0;
  return rep;
}

RegularityReport phi_regularity_check(
    const Trajectory& t, const std::function<double(double)>& phi,
    const std::vector<double>& R_values, const GridSpec& grid) {
  if (!phi) throw precondition_error("phi_regularity_check: missing profile");
  for (double R : R_values)
    if (R <= 0.0 || R >= 1.0)
      throw precondition_error(
          "phi_regularity_check: R values must lie in (0, 1)");
  RegularityReport rep;
  std::vector<Vec2> pts = grid.points();
  for (double R : R_values) {
    double denom = kPi * R * phi(R);
    if (denom <= 0.0)
      throw precondition_error(
          "phi_regularity_check: profile must be positive on (0, 1)");
    auto partial = chunked_map<std::pair<double, std::size_t>>(
        pts.size(), 64, [&](std::size_t b, std::size_t e) {
          double worst = -1.0;
          std::size_t arg = b;
          for (std::size_t i = b; i < e; ++i) {
            double ratio = ball_intersection_length(t, pts[i], R) / denom;
            if (ratio > worst) {
              worst = ratio;
              arg = i;
            }
          }
          return std::make_pair(worst, arg);
        });
    for (auto [worst, arg] : partial) {
      if (worst > rep.worst_ratio) {
        rep.worst_ratio = worst;
        rep.worst_R = R;
        rep.worst_z = pts[arg];
      }
    }
  }
  rep.satisfied = rep.worst_ratio <= 1.0;
  return rep;
}

int occupied_square_count(const Trajectory& t, double R, int N, double delta,
                       Vec2 z) {
  if (R <= 0.0) throw precondition_error("occupied_square_count: R must be positive");
  if (N < 1) throw precondition_error("occupied_square_count: N must be at least 1");
  if (delta <= 0.0)
    throw precondition_error("occupied_square_count: delta must be positive");
  double side = R / N;
  int count = 0;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      Vec2 lo{z.x - 0.5 * R + side * i, z.y - 0.5 * R + side * j};
      Vec2 hi{lo.x + side, lo.y + side};
      if (rect_intersection_length(t, lo, hi) >= delta) ++count;
    }
  }
  return count;
}

CoveringReport occupied_square_scan(const Trajectory& t, double R, int N,
                                 double delta, const GridSpec& grid) {
  std::vector<Vec2> pts = grid.points();
  if (pts.empty())
    throw precondition_error("occupied_square_scan: empty scan grid");
  auto partial = chunked_map<double>(
      pts.size(), 16, [&](std::size_t b, std::size_t e) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = b; i < e; ++i)
          lo = std::min(lo, occupied_square_count(t, R, N, delta, pts[i]) /
                                (R * R));
        return lo;
      });
  CoveringReport rep;
  rep.inf_ratio = std::numeric_limits<double>::infinity();
  for (double v : partial) rep.inf_ratio = std::min(rep.inf_ratio, v);
  rep.satisfied = rep.inf_ratio > 1.0;
  return rep;
}

}  // namespace gst
