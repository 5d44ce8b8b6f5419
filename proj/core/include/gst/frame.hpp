#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gst/common.hpp"
#include "gst/hermite.hpp"
#include "gst/linalg.hpp"
#include "gst/trajectory.hpp"

namespace gst {

/// Offsets of a parallel-line family along its transversal direction:
/// either the full arithmetic progression eta*Z (periodic) or an explicit
/// finite list.
struct OffsetSet {
  bool periodic = false;
  double eta = 0.0;             // progression spacing when periodic
  std::vector<double> values;   // members when finite

  static OffsetSet arithmetic(double eta);
  static OffsetSet finite(std::vector<double> values);
};

struct LineFrameBounds {
  double A = 0.0;  // inf over the t grid of the translate sum
  double B = 0.0;  // sup over the t grid
};

/// inf/sup over the t grid of sum_{lambda in Lambda} |mu(theta) g(t - lambda)|^2,
/// where mu(theta) rotates the window in the time-frequency plane (theta in
/// revolutions).  A > 0 together with B < infinity certifies the line family
/// {lambda * l(theta) + span l(theta + 1/4)} as a sampling trajectory.
///
/// Periodic offset sets are handled by wrapping each grid point into one
/// period and summing translates outward until the terms fall below 1e-16
/// (the finite Hermite window guarantees Gaussian-type tail decay).
/// Errors: empty offset list, empty grid, nonpositive spacing.
LineFrameBounds line_frame_bounds(const HermiteExpansion& g, double theta_rev,
                                  const OffsetSet& offsets,
                                  const std::vector<double>& t_grid);

/// Perturbation criterion for sampling on an (m, R)-dense trajectory:
///   Delta(R) = (2R/pi) (||g'|| + ||t g|| + (2R/pi) ||t g'||),
/// sampling bounds m(||g|| - Delta)^2, M(||g|| + Delta)^2 once Delta < ||g||.
struct DeltaCriterion {
  double R = 0.0;
  double delta = 0.0;
  SobolevNorms norms;            // exact window norms used in the formula
  bool satisfied = false;        // delta < norms.l2
  bool has_sampling_bounds = false;
  double lower_bound = 0.0;      // m (||g|| - delta)^2 when densities supplied
  double upper_bound = 0.0;      // M (||g|| + delta)^2
};

/// Evaluate the criterion at scale R >= 0.  When the density pair (m, M)
/// of the trajectory is supplied and the criterion is satisfied, the
/// explicit sampling bounds are filled in.  Errors: negative R, zero
/// window, inverted density pair.
DeltaCriterion delta_criterion(
    const HermiteExpansion& g, double R,
    std::optional<std::pair<double, double>> density_pair = std::nullopt);

/// The critical scale R* with Delta(R*) = ||g||: below it the criterion is
/// satisfied, above it the perturbation bound is vacuous.  Bisection on the
/// strictly increasing Delta.  Errors: zero window.
double delta_critical_radius(const HermiteExpansion& g);

/// Empirical frame bounds of a trajectory restricted to the Hermite section
/// span{h_0, ..., h_N}: extreme eigenvalues of the Gram matrix
///   S_{nm} = sum_i w_i V_g h_m(z_i) conj(V_g h_n(z_i))
/// over the trajectory quadrature.  The bounds are certified only for the
/// finite section, so the report always carries N and the quadrature
/// spacing h.
struct FrameReport {
  int N = 0;
  double h = 0.0;                     // quadrature spacing of the node set
  double A_N = 0.0;                   // smallest eigenvalue of S
  double B_N = 0.0;                   // largest eigenvalue of S
  std::vector<double> eigenvalues;    // all N+1 eigenvalues, ascending
  CMat gram;                          // (N+1) x (N+1), row-major
  std::string trajectory_tag;
  std::uint64_t window_digest = 0;
  std::string warning;                // nonempty when h exceeds the advised 0.05
};

/// Assemble the section Gram matrix and its spectrum.  N <= 32; a spacing
/// above 0.05 only warns (recorded in the report), it does not reject.
/// Node contributions are reduced in fixed chunks so the report is
/// bit-stable across thread counts.
FrameReport gram_frame_bounds(const HermiteExpansion& g, const QuadratureSet& quad,
                              int N, const std::string& trajectory_tag = "");

/// Extreme eigenvalues (A, B) of the leading (N_sub+1) x (N_sub+1) principal
/// block of the report's Gram matrix: the frame bounds of the same node set
/// on the smaller section.  N_sub <= report.N.
std::pair<double, double> section_bounds(const FrameReport& report, int n_sub);

/// Deterministic fingerprint of the coefficient list (FNV-1a over the exact
/// decimal printout); used to reference windows from serialized reports.
std::uint64_t expansion_digest(const HermiteExpansion& g);

}  // namespace gst
