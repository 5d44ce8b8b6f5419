#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gst/common.hpp"

namespace gst {

/// Circular arc from absolute angle a0 to a1 (radians) on the circle
/// |w - center| = radius; traversal runs a0 -> a1, so a1 > a0 is
/// counterclockwise.  A full circle spans exactly 2 pi.
struct ArcSegment {
  Vec2 center;
  double radius = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
};

struct LineSeg {
  Vec2 a;
  Vec2 b;
};

/// Polar graph w(theta) = r(theta) (cos 2 pi theta, sin 2 pi theta),
/// theta in revolutions over [theta0, theta1].  dr/d2r are derivatives in
/// the revolution variable; profile/param identify named profiles for
/// serialization ("archimedes" with its pitch).
struct PolarSegment {
  double theta0 = 0.0;
  double theta1 = 0.0;
  std::function<double(double)> r;
  std::function<double(double)> dr;
  std::function<double(double)> d2r;
  std::string profile;
  double param = 0.0;
};

using Segment = std::variant<ArcSegment, LineSeg, PolarSegment>;

double segment_length(const Segment& s);

enum class Family { circles, polygons, point_path, lines, edges, archimedes, custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// A truncated sampling trajectory: explicit segment list plus the family
/// metadata downstream analyses key on.  r_trunc bounds |w| over all
/// segments; eta is the family's radial pitch where one exists.
struct Trajectory {
  std::vector<Segment> segments;
  Family family = Family::custom;
  double eta = 0.0;
  double r_trunc = 0.0;
  int k_max = 0;
  int rounds = 0;
  std::vector<Vec2> generators;        // polygon vertices / path points
  double line_angle = 0.0;             // revolutions
  std::vector<double> line_offsets;
  double edge_gamma = 0.0;             // revolutions
  double edge_eta = 0.0;
  Vec2 edge_dminus;
  Vec2 edge_dplus;

  double length() const;
};

/// Concentric circles of radii eta, 2 eta, ..., k_max eta about the origin.
Trajectory make_circles(double eta, int k_max);

/// Scaled copies eta k P of the polygon with the given vertices,
/// k = 1..k_max.  The origin must lie strictly inside the kernel: on the
/// inner side of every edge line, with no edge line closer to the origin
/// than 1e-9.  Violations name the offending edge.
Trajectory make_polygon_family(const std::vector<Vec2>& vertices, double eta,
                               int k_max);

/// Piecewise-linear outward path through eta k z_1, ..., eta k z_n for
/// round k = 1..rounds, each round closed by the connector to the next
/// round's first point (n segments per round).  The generator arguments
/// must be strictly monotone modulo one revolution, winding exactly once;
/// violations name the offending generator index.
Trajectory make_point_path(const std::vector<Vec2>& points, double eta,
                           int rounds);

/// Lines {lambda l(theta) + t R(theta) e_2 : t real} for each offset
/// lambda, clipped to the square [-box, box]^2 (l(theta) is the unit
/// vector at theta revolutions).  Offsets must be non-empty; lines that
/// miss the box are dropped.
Trajectory make_parallel_lines(double theta, const std::vector<double>& offsets,
                               double box_half_width);

/// Arrow family: from every vertex eta k l(gamma), k integer, the ray
/// backwards along -dminus and the ray forwards along +dplus, clipped to
/// the square box.  Directions must not be collinear with l(gamma).
Trajectory make_edges(double gamma, double eta, Vec2 dminus, Vec2 dplus,
                      double box_half_width);

/// Archimedean spiral r = eta theta, theta in [0, turns] revolutions.
Trajectory make_archimedes(double eta, double turns);

Trajectory translated(const Trajectory& t, Vec2 dz);
Trajectory rotated(const Trajectory& t, double theta_rev);
Trajectory clipped_to_ball(const Trajectory& t, Vec2 center, double radius);

/// Curve quadrature: equal-arc-length nodes per segment with
/// trapezoid-consistent weights; consecutive nodes at arc distance <= h and
/// the weights of each segment sum to its length.
struct QuadratureSet {
  std::vector<PhasePoint> nodes;
  std::vector<double> weights;
  double spacing = 0.0;
};

QuadratureSet quadrature(const Trajectory& t, double h);

double ball_intersection_length(const Trajectory& t, Vec2 center, double radius);

/// Half-open rectangle [lo.x, hi.x) x [lo.y, hi.y).
double rect_intersection_length(const Trajectory& t, Vec2 lo, Vec2 hi);

/// Scan lattice: (nx+1) x (ny+1) points spanning [lo, hi].
struct GridSpec {
  Vec2 lo;
  Vec2 hi;
  int nx = 0;
  int ny = 0;

  static GridSpec centered(double extent, double step);
  std::vector<Vec2> points() const;
};

/// Lower/upper estimates of H^1(Gamma cap B_R(z)) over the grid.  Every
/// grid point must keep margin R + eta inside the truncation radius.
struct DensityReport {
  double R = 0.0;
  double m_est = 0.0;
  double M_est = 0.0;
  GridSpec grid;
};

DensityReport density_scan(const Trajectory& t, double R, const GridSpec& grid);

/// Worst ratio H^1(Gamma cap B_R(z)) / (pi R phi(R)) over the scan; at most
/// one means phi-regular on the scanned set.
struct RegularityReport {
  double worst_ratio = 0.0;
  double worst_R = 0.0;
  Vec2 worst_z;
  bool satisfied = false;
};

RegularityReport phi_regularity_check(const Trajectory& t,
                                      const std::function<double(double)>& phi,
                                      const std::vector<double>& R_values,
                                      const GridSpec& grid);

/// Square-counting occupancy: split the half-open square z + [-R/2, R/2)^2
/// into N^2 subsquares of side R/N and count those meeting the curve in
/// length at least delta.  Lengths are exact per-subsquare clippings.
int occupied_square_count(const Trajectory& t, double R, int N, double delta,
                       Vec2 z);

struct CoveringReport {
  double inf_ratio = 0.0;  // inf over grid of count / R^2
  bool satisfied = false;  // inf_ratio > 1
};

CoveringReport occupied_square_scan(const Trajectory& t, double R, int N,
                                 double delta, const GridSpec& grid);

}  // namespace gst
