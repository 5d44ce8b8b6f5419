#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gst/common.hpp"
#include "gst/frame.hpp"
#include "gst/hermite.hpp"
#include "gst/stft.hpp"
#include "gst/trajectory.hpp"

namespace gst {

/// Forward model: tabulate V_g f on the quadrature nodes, keeping the
/// weights so downstream consumers can integrate against the samples.
SampledField sample_field(const HermiteExpansion& f, const HermiteExpansion& g,
                          const QuadratureSet& quad);

struct ReconstructionResult {
  HermiteExpansion estimate;
  int iterations = 0;
  double residual = 0.0;                 // final ||S c - b|| / ||b||
  std::vector<double> residual_history;  // relative, non-increasing
  double frame_lower_bound = 0.0;        // A_N of the section used
  std::optional<double> relative_error;  // vs ground truth when supplied
};

/// Least-squares recovery of the Hermite coefficients c_0..c_N from
/// trajectory samples: solves S c = b with the section Gram S of the node
/// set and b_n = sum_i w_i value_i conj(V_g h_n(z_i)), by the
/// conjugate-residual recurrence (residual non-increasing).
/// Errors: ill-posed section (A_N < 1e-8); no convergence within 10(N+1)
/// iterations.
ReconstructionResult cg_reconstruct(
    const SampledField& samples, const HermiteExpansion& g, int N, double tol,
    const std::optional<HermiteExpansion>& ground_truth = std::nullopt);

/// Uniform angular samples of a reduced polyanalytic function
///   G(t) = sum_{k=0}^{order} F_k(t) |t|^{2k},   F_k holomorphic,
/// on concentric circles.  order+1 circles determine G inside the smallest
/// one; extra circles are admitted for the least-squares variant.
struct PolyanalyticSamples {
  int order = 0;
  std::vector<double> radii;                 // strictly increasing, positive
  int M = 0;                                 // angular samples per circle, >= 64
  std::vector<std::vector<cdouble>> values;  // values[k][j] = G(R_k e^{2 pi i j/M})
};

/// Tabulate an evaluator on the circles.  order < 0 means radii.size() - 1.
PolyanalyticSamples sample_polyanalytic(const std::function<cdouble(cdouble)>& G,
                                        std::vector<double> radii, int M,
                                        int order = -1);

/// Cauchy-type evaluation of G strictly inside the smallest circle:
///   G(z) = sum_k P_k(|z|^2) * (1/2 pi i) int_{circle k} G(t)/(t - z) dt,
///   P_k(s) = prod_{j != k} (R_j^2 - s) / (R_j^2 - R_k^2),
/// contour integrals by the trapezoid rule (spectrally accurate here).
/// With least_squares the holomorphic components are instead fitted from
/// all circles through the Vandermonde system in the squared radii --
/// an over-determined experiment, not required by the identity.
/// Errors: |z| >= R_0; malformed sample set (shape, M < 64, radii order);
/// wrong circle count for the chosen mode.
cdouble cauchy_reconstruct(const PolyanalyticSamples& samples, PhasePoint z,
                           bool least_squares = false);

/// Reconstruct V_g f at the query point from transform samples on
/// concentric circles alone: lift the transform to its polyanalytic form,
/// reduce by the monomial factor of order n = deg g, run the Cauchy
/// evaluation, and invert the lift factors.  M is the starting angular
/// resolution; it doubles (up to 4096) until an M-vs-2M agreement of 1e-8
/// is reached.  Errors: |z| >= R_0; query in the excluded disk |z| < 1e-3
/// (the monomial division is singular at the origin); zero window.
cdouble stft_circle_reconstruct(const HermiteExpansion& f, const HermiteExpansion& g,
                                const std::vector<double>& radii, PhasePoint z,
                                int M = 256);

struct UniquenessReport {
  bool unique = false;
  std::optional<double> witness;  // a time missed by every translate
  std::vector<double> zero_set;   // real zeros of the rotated window
};

/// Zero-set criterion for parallel-line families: the rotated window's
/// finite real zero set Z (roots of its Hermite-polynomial part) must
/// satisfy the empty intersection of the translates lambda + Z over the
/// offset set; any member of the intersection is a witness time where
/// every line of the family loses the signal.  Errors: zero window.
UniquenessReport line_uniqueness_check(const HermiteExpansion& g, double theta_rev,
                                       const OffsetSet& offsets);

}  // namespace gst
