#pragma once

#include <vector>

#include "gst/common.hpp"
#include "gst/trajectory.hpp"

namespace gst {

/// One transversal intersection of the curve with the ray
/// {s * l(phi) : s > 0}.  `traversal` is a global curve coordinate
/// (segment index plus in-segment fraction) so radial ordering can be
/// compared against traversal ordering; `orientation` is the sign of the
/// tangent's component along the positive angular direction at the ray.
struct RayCrossing {
  double radius = 0.0;
  double traversal = 0.0;
  Vec2 tangent;
  double curvature = 0.0;
  int orientation = 0;
};

/// All crossings of the curve with the ray at angle phi (revolutions),
/// sorted by radius; crossings closer than 1e-9 in radius collapse to one
/// (shared polygon vertices on the ray count once).
std::vector<RayCrossing> ray_crossings(const Trajectory& t, double phi_rev);

/// Least-squares fit r_k ~ eta * k + rho over the ray crossings at a fixed
/// angle, k being the 1-based radial index.  The fit window is
/// [k_lo, k_hi] (0 = automatic tail: the outer half of the crossings,
/// shrunk by one to stay clear of the truncation edge); `dir` is the
/// Richardson-extrapolated limit of the crossing tangents and `resid` the
/// max absolute fit deviation over the window.
struct RadialFit {
  double eta = 0.0;
  double rho = 0.0;
  double resid = 0.0;
  Vec2 dir;
  int crossings = 0;
};

RadialFit radial_fit_at(const Trajectory& t, double phi_rev, int k_lo = 0,
                        int k_hi = 0);

/// Diagnostics for one probe angle inside an escape cone.
struct ConeProbe {
  double theta = 0.0;  // offset from the cone center, revolutions
  int crossings = 0;
  double eta_fit = 0.0;
  double rho_fit = 0.0;
  double resid_early = 0.0;  // max fit deviation over the inner window
  double resid_late = 0.0;   // max fit deviation over the outer window
  Vec2 dir;                  // extrapolated limit direction
  double dir_drift = 0.0;    // tangent change between mid and last crossing
  bool dir_transversal = false;  // non-collinear with the probe ray
};

/// Escape-cone report.  alpha is the cone half-width actually used
/// (bounded by 1/8 and by the distance to the excluded directions).
struct ConeReport {
  double beta = 0.0;
  double alpha = 0.0;
  bool excluded_direction = false;  // cone centered on a corner direction
  std::vector<ConeProbe> probes;
  int retrograde = 0;      // crossings traversed against the majority winding
  int order_violations = 0;  // radius order disagrees with traversal order
  int monotone_from = 1;   // 1-based index from which radii grow in order
  double curvature_peak = 0.0;   // max curvature among outermost crossings
  double curvature_trend = 0.0;  // outer peak / mid peak (0 if both vanish)
  Vec2 dir_minus;  // direction limit approaching the center from below
  Vec2 dir_plus;   // ... and from above
};

struct SpiralingReport {
  std::vector<double> excluded;  // corner directions (revolutions)
  std::vector<ConeReport> cones;
  double eta_hat = 0.0;  // median fitted radial pitch
  bool monotone = false;
  bool flat = false;
  bool equispaced = false;
  bool velocity_converged = false;
};

/// Directions along which the curve is not smooth (polygon / path vertex
/// rays, the vertex line of an edge family); empty for circles and spirals.
std::vector<double> excluded_directions(const Trajectory& t);

/// Validate the asymptotic cone conditions: parametrizability of each
/// escape cone (throws when crossing counts are too few or inconsistent
/// across a cone), radial monotonicity, curvature decay, equispacing fits,
/// and limit-direction convergence.  `betas` empty picks cone centers
/// automatically (gap midpoints between excluded directions plus the
/// excluded directions themselves; a fixed spread when none exist).
SpiralingReport spiraling_validate(const Trajectory& t,
                                   std::vector<double> betas = {},
                                   int probes_per_cone = 5, int k_lo = 0,
                                   int k_hi = 0);

}  // namespace gst
