#pragma once

#include <string>
#include <vector>

#include "gst/common.hpp"
#include "gst/trajectory.hpp"

namespace gst {

/// Smooth compactly supported radial test function centered at `center`:
///   phi(p) = exp(1 - 1/(1 - u^2)),  u = |p - center| / radius < 1,
/// and 0 outside; peak value 1, all derivatives vanish at the rim.
struct Bump {
  Vec2 center;
  double radius = 1.0;
};

double bump_value(const Bump& b, Vec2 p);

/// Finite surrogate for "every nonnegative test function": a fixed family
/// of bumps together with the box that must contain all their supports.
struct BumpFamily {
  std::vector<Bump> bumps;
  Vec2 box_lo{-3.0, -3.0};
  Vec2 box_hi{3.0, 3.0};

  /// 5x5 lattice of unit-radius bumps centered on {-2..2}^2 in [-3,3]^2.
  static BumpFamily standard();

  /// Radius of the origin-centered ball containing every support.
  double support_radius() const;
  std::string describe() const;
};

/// Curve integrals int phi dH^1 for each bump, by arc-length quadrature
/// with node spacing h.  Deterministic chunked reduction.
std::vector<double> bump_integrals(const Trajectory& t, const BumpFamily& bumps,
                                   double h);

/// max over the family of |int_{a} phi dH^1 - int_{b} phi dH^1|:
/// the weak-convergence error against the finite bump family.
/// Errors: h outside (0, 0.01]; a bump support leaking outside the box.
double weak_discrepancy(const Trajectory& a, const Trajectory& b,
                        const BumpFamily& bumps, double h = 0.005);

/// Translate rule z_k.  The escape form follows the radial parametrization
/// of a curve going to infinity at a limiting angle:
///   z_k = -(eta k + rho) l(theta_k),  theta_k = theta_star + drift / k,
/// so theta_k -> theta_star and |z_k| grows linearly.
struct TranslateSequence {
  enum class Kind { escape, constant, listed };
  Kind kind = Kind::constant;
  double eta = 0.0;          // escape: radial spacing (> 0)
  double rho = 0.0;          // escape: radial offset (> -eta)
  double theta_star = 0.0;   // escape: limiting angle, revolutions
  double theta_drift = 0.0;  // escape: angle perturbation coefficient
  Vec2 constant_shift;
  std::vector<Vec2> points;  // listed: explicit translates, index-clamped

  static TranslateSequence escape(double eta, double rho, double theta_star,
                                  double theta_drift = 0.0);
  static TranslateSequence shift(Vec2 z);
  static TranslateSequence listed(std::vector<Vec2> pts);

  Vec2 at(int k) const;  // k >= 1
  bool bounded() const;
};

/// Classification of the weak limit of z_k + Gamma: a shifted copy, a set
/// of parallel lines, or a set of parallel edges hanging off a lattice of
/// vertices along a singular direction.
struct PredictedLimit {
  enum class Kind { shift, lines, edges };
  Kind kind = Kind::shift;

  Vec2 shift_vector;     // shift: the limiting translate

  Vec2 direction;        // lines: unit direction of every line
  double lambda = 0.0;   // lines: perpendicular spacing (> 0)
  double tau = 0.0;      // lines: transversal offset, reduced to (-lambda/2, lambda/2]
  Vec2 anchor;           // lines: tau times the unit perpendicular, as a vector

  double edge_gamma = 0.0;  // edges: singular direction (revolutions)
  double edge_eta = 0.0;    // edges: vertex spacing along the direction
  Vec2 edge_dminus;         // edges: vertex ray backwards along -dminus
  Vec2 edge_dplus;          // edges: vertex ray forwards along +dplus
  Vec2 edge_shift;          // edges: residual translation of the vertex lattice
};

/// Classify the limit of the translated trajectory along the sequence:
/// bounded rules give the shifted copy; escape rules give edges when the
/// limiting angle is one of the trajectory's singular directions, and
/// parallel lines otherwise, with spacing
///   lambda = eta_fit * sqrt(1 - (l(theta*) . d)^2)
/// from the fitted radial spacing and asymptotic crossing direction d.
/// The escape spacing must match the fitted one: otherwise the full
/// sequence has no weak limit and the call refuses to guess.
PredictedLimit predict_limit(const Trajectory& t, const TranslateSequence& seq);

/// Build the predicted object as a concrete trajectory covering the square
/// [-box_half_width, box_half_width]^2.  `base` is used by the shift case.
Trajectory realize_limit(const PredictedLimit& p, const Trajectory& base,
                         double box_half_width);

struct WeakLimitReport {
  PredictedLimit predicted;
  std::vector<int> k_list;
  std::vector<double> discrepancy;  // D_k per list entry
  std::string bump_family;
  double threshold = 1e-2;
  bool non_increasing = false;
  double final_value = 0.0;
  bool verdict = false;  // non-increasing and final value at or below threshold
};

/// Translate the trajectory along the sequence, clip both the translate
/// and the realized limit to the bump support ball, and measure the weak
/// discrepancy at each k.  Errors: k list not increasing/positive;
/// truncation margin insufficient (|z_k| plus the support radius must stay
/// inside the trajectory's truncation radius).
WeakLimitReport verify_limit(const Trajectory& t, const TranslateSequence& seq,
                             const std::vector<int>& k_list = {4, 8, 16, 32, 64},
                             const BumpFamily& bumps = BumpFamily::standard(),
                             double h = 0.005, double threshold = 1e-2);

}  // namespace gst
