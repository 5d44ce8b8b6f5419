#pragma once

#include <vector>

#include "gst/common.hpp"
#include "gst/hermite.hpp"

namespace gst {

/// Transform convention used throughout:
///   V_g f(x, xi) = int f(t) conj(g(t - x)) exp(-2 pi i xi t) dt.
/// For Hermite basis members the transform has the closed form
///   <h_n, pi(z) h_m> = exp(-pi i x xi) exp(-pi |z|^2 / 2) *
///     sqrt(m!/n!) (sqrt(pi) zc*)^{n-m} L_m^{(n-m)}(pi |z|^2),   n >= m,
/// with zc = x + i xi and L the associated Laguerre polynomials (for m > n,
/// exchange the roles and replace sqrt(pi) zc* by -sqrt(pi) zc).  Evaluation
/// runs the Laguerre three-term recurrence; no quadrature is involved.
cdouble stft_kernel(int signal_idx, int window_idx, PhasePoint z);

/// Kernel pair table: evaluator for (n, m) -> V_{h_m} h_n at a point.
/// Indices validated once against the supported maximum.
class STFTKernelTable {
 public:
  STFTKernelTable(int max_signal, int max_window);
  cdouble operator()(int signal_idx, int window_idx, PhasePoint z) const;
  int max_signal() const { return max_signal_; }
  int max_window() const { return max_window_; }

 private:
  int max_signal_;
  int max_window_;
};

/// V_g f(z) by bilinear expansion over the kernel table.
cdouble stft_point(const HermiteExpansion& f, const HermiteExpansion& g,
                   PhasePoint z);

/// out[n] = V_g h_n(z) for n = 0..N: one transform row of the whole basis
/// section against a fixed window, sharing the per-point kernel work.
void stft_basis_row(const HermiteExpansion& g, PhasePoint z, int N,
                    std::vector<cdouble>& out);

/// Square grid [-extent, extent]^2 with the given spacing.
struct PlaneGrid {
  double extent = 8.0;
  double spacing = 0.1;
};

/// | <V_g1 f1, V_g2 f2>_grid - <f1, f2> conj(<g1, g2>) | with the plane
/// inner product discretized by the Riemann sum on the grid.  Grids coarser
/// than spacing 0.25 are rejected.
double orthogonality_residual(const HermiteExpansion& f1, const HermiteExpansion& f2,
                              const HermiteExpansion& g1, const HermiteExpansion& g2,
                              const PlaneGrid& grid);

/// Symplectic covariance defect
///   | V_g f(R(theta) z) - phase * V_{mu(theta) g}(mu(theta) f)(z) |,
/// phase = exp(pi i (x xi - x' xi')), (x', xi') = R(theta) z.
/// Zero in exact arithmetic for every f, g, theta, z.
double covariance_residual(const HermiteExpansion& f, const HermiteExpansion& g,
                           double theta, PhasePoint z);

/// Polyanalytic Bargmann-type lift
///   F(w) = V_g f(conj(w)) * exp(-pi i x xi) * exp(pi |w|^2 / 2),
/// where (x, xi) are the coordinates of w.  For a window of pure degree n
/// the result is polyanalytic of order n+1 in w; for g = h_0, f = h_0 it is
/// identically 1.
cdouble polyanalytic_lift(const HermiteExpansion& f, const HermiteExpansion& g,
                          PhasePoint w);

/// Transform samples along a node set, with quadrature weights retained so
/// downstream consumers can integrate against the samples.
struct SampledField {
  std::vector<PhasePoint> nodes;
  std::vector<double> weights;
  std::vector<cdouble> values;
  HermiteExpansion window;
};

}  // namespace gst
