#include "gst/stft.hpp"

#include <cmath>

#include "gst/numerics.hpp"

namespace gst {

namespace {

void check_pair(int n, int m, const char* what) {
  if (n < 0 || m < 0 || n > kMaxHermiteIndex || m > kMaxHermiteIndex)
    throw precondition_error(std::string(what) + ": kernel index out of range");
}

/// L_m^{(alpha)}(x) by the stable forward recurrence in the degree.
double laguerre(int m, int alpha, double x) {
  double l0 = 1.0;
  if (m == 0) return l0;
  double l1 = 1.0 + alpha - x;
  for (int k = 1; k < m; ++k) {
    double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

cdouble ipow(cdouble base, int p) {
  cdouble acc(1.0, 0.0);
  for (int i = 0; i < p; ++i) acc *= base;
  return acc;
}

}  // namespace

cdouble stft_kernel(int signal_idx, int window_idx, PhasePoint z) {
  check_pair(signal_idx, window_idx, "stft_kernel");
  double r2 = z.norm2();
  cdouble zc(z.x, z.y);
  double phase = -kPi * z.x * z.y;
  cdouble pref = std::exp(-0.5 * kPi * r2) * cdouble(std::cos(phase), std::sin(phase));
  int n = signal_idx, m = window_idx;
  if (n >= m) {
    double amp = std::sqrt(factorial(m) / factorial(n));
    return pref * amp * ipow(std::sqrt(kPi) * std::conj(zc), n - m) *
           laguerre(m, n - m, kPi * r2);
  }
  double amp = std::sqrt(factorial(n) / factorial(m));
  return pref * amp * ipow(-std::sqrt(kPi) * zc, m - n) *
         laguerre(n, m - n, kPi * r2);
}

STFTKernelTable::STFTKernelTable(int max_signal, int max_window)
    : max_signal_(max_signal), max_window_(max_window) {
  check_pair(max_signal, max_window, "STFTKernelTable");
}

cdouble STFTKernelTable::operator()(int signal_idx, int window_idx,
                                    PhasePoint z) const {
  if (signal_idx < 0 || signal_idx > max_signal_ || window_idx < 0 ||
      window_idx > max_window_)
    throw precondition_error("STFTKernelTable: index outside declared range");
  return stft_kernel(signal_idx, window_idx, z);
}

cdouble stft_point(const HermiteExpansion& f, const HermiteExpansion& g,
                   PhasePoint z) {
  check_pair(std::max(f.degree(), 0), std::max(g.degree(), 0), "stft_point");
  cdouble acc{};
  for (int n = 0; n <= f.degree(); ++n) {
    cdouble fn = f.coeff(n);
    if (fn == cdouble{}) continue;
    for (int m = 0; m <= g.degree(); ++m) {
      cdouble gm = g.coeff(m);
      if (gm == cdouble{}) continue;
      acc += fn * std::conj(gm) * stft_kernel(n, m, z);
    }
  }
  return acc;
}

void stft_basis_row(const HermiteExpansion& g, PhasePoint z, int N,
                    std::vector<cdouble>& out) {
  check_pair(N, std::max(g.degree(), 0), "stft_basis_row");
  out.assign(static_cast<std::size_t>(N) + 1, cdouble{});
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= g.degree(); ++m) {
      cdouble gm = g.coeff(m);
      if (gm == cdouble{}) continue;
      out[n] += std::conj(gm) * stft_kernel(n, m, z);
    }
}

double orthogonality_residual(const HermiteExpansion& f1, const HermiteExpansion& f2,
                              const HermiteExpansion& g1, const HermiteExpansion& g2,
                              const PlaneGrid& grid) {
  if (grid.spacing > 0.25)
    throw precondition_error("orthogonality_residual: grid spacing above 0.25");
  if (grid.spacing <= 0.0 || grid.extent <= 0.0)
    throw precondition_error("orthogonality_residual: degenerate grid");
  int half = static_cast<int>(std::floor(grid.extent / grid.spacing));
  double cell = grid.spacing * grid.spacing;
  std::size_t side = 2 * half + 1;
  // Chunked over grid rows; reduction in fixed row order.
  auto rows = chunked_map<cdouble>(side, 1, [&](std::size_t i, std::size_t) {
    double x = (static_cast<int>(i) - half) * grid.spacing;
    cdouble acc{};
    for (int j = -half; j <= half; ++j) {
      PhasePoint z{x, j * grid.spacing};
      acc += stft_point(f1, g1, z) * std::conj(stft_point(f2, g2, z));
    }
    return acc;
  });
  cdouble plane{};
  for (const auto& r : rows) plane += r;
  plane *= cell;
  cdouble target = inner(f1, f2) * std::conj(inner(g1, g2));
  return std::abs(plane - target);
}

double covariance_residual(const HermiteExpansion& f, const HermiteExpansion& g,
                           double theta, PhasePoint z) {
  PhasePoint zr = rotate(z, theta);
  cdouble lhs = stft_point(f, g, zr);
  double arg = kPi * (z.x * z.y - zr.x * zr.y);
  cdouble phase(std::cos(arg), std::sin(arg));
  cdouble rhs = phase * stft_point(metaplectic_rotate(f, theta),
                                   metaplectic_rotate(g, theta), z);
  return std::abs(lhs - rhs);
}

cdouble polyanalytic_lift(const HermiteExpansion& f, const HermiteExpansion& g,
                          PhasePoint w) {
  cdouble v = stft_point(f, g, {w.x, -w.y});
  double arg = -kPi * w.x * w.y;
  cdouble phase(std::cos(arg), std::sin(arg));
  return v * phase * std::exp(0.5 * kPi * w.norm2());
}

}  // namespace gst
