#include "gst/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "gst/linalg.hpp"
#include "gst/numerics.hpp"
#include "gst/stft.hpp"

namespace gst {

namespace {

// Beyond this radius every expansion of the given degree has left its
// oscillation region and |g|^2 decays monotonically below any tail cutoff.
double safe_tail_radius(int degree) {
  int d = std::max(0, degree);
  return std::sqrt((2.0 * d + 1.0) / kPi) + 4.0;
}

double translate_sum(const HermiteExpansion& g, const OffsetSet& offsets,
                     double t) {
  constexpr double kTailCutoff = 1e-16;
  if (!offsets.periodic) {
    double sum = 0.0;
    for (double lambda : offsets.values)
      sum += std::norm(eval_expansion(g, t - lambda));
    return sum;
  }
  double eta = offsets.eta;
  double t0 = t - eta * std::floor(t / eta);  // wrap into [0, eta)
  double safe = safe_tail_radius(g.degree());
  double sum = 0.0;
  for (int dir : {+1, -1}) {
    // dir = +1 walks u = t0, t0 - eta, ... leftward; dir = -1 rightward.
    for (int k = (dir > 0 ? 0 : 1); k < 1000000; ++k) {
      double u = t0 - dir * eta * k;
      double term = std::norm(eval_expansion(g, u));
      sum += term;
      if (term < kTailCutoff && std::fabs(u) > safe) break;
    }
  }
  return sum;
}

double delta_of(const SobolevNorms& norms, double r) {
  double c = 2.0 * r / kPi;
  return c * (norms.deriv + norms.t_weighted + c * norms.t_weighted_deriv);
}

}  // namespace

OffsetSet OffsetSet::arithmetic(double eta) {
  if (!(eta > 0.0))
    throw precondition_error("offset progression spacing must be positive");
  OffsetSet s;
  s.periodic = true;
  s.eta = eta;
  return s;
}

OffsetSet OffsetSet::finite(std::vector<double> values) {
  if (values.empty())
    throw precondition_error("offset list is empty");
  OffsetSet s;
  s.values = std::move(values);
  return s;
}

LineFrameBounds line_frame_bounds(const HermiteExpansion& g, double theta_rev,
                                  const OffsetSet& offsets,
                                  const std::vector<double>& t_grid) {
  if (!offsets.periodic && offsets.values.empty())
    throw precondition_error("offset list is empty");
  if (offsets.periodic && !(offsets.eta > 0.0))
    throw precondition_error("offset progression spacing must be positive");
  if (t_grid.empty())
    throw precondition_error("line_frame_bounds: empty t grid");
  HermiteExpansion rotated = metaplectic_rotate(g, theta_rev);
  LineFrameBounds out;
  out.A = std::numeric_limits<double>::infinity();
  out.B = 0.0;
  for (double t : t_grid) {
    double s = translate_sum(rotated, offsets, t);
    out.A = std::min(out.A, s);
    out.B = std::max(out.B, s);
  }
  return out;
}

DeltaCriterion delta_criterion(
    const HermiteExpansion& g, double R,
    std::optional<std::pair<double, double>> density_pair) {
  if (R < 0.0)
    throw precondition_error("delta_criterion: negative scale R");
  DeltaCriterion crit;
  crit.R = R;
  crit.norms = sobolev_norms(g);
  if (!(crit.norms.l2 > 0.0))
    throw precondition_error("delta_criterion: zero window");
  crit.delta = delta_of(crit.norms, R);
  crit.satisfied = crit.delta < crit.norms.l2;
  if (density_pair) {
    auto [m, M] = *density_pair;
    if (!(m >= 0.0) || !(M >= m))
      throw precondition_error("delta_criterion: density pair must satisfy 0 <= m <= M");
    if (crit.satisfied) {
      double l2 = crit.norms.l2;
      crit.has_sampling_bounds = true;
      crit.lower_bound = m * (l2 - crit.delta) * (l2 - crit.delta);
      crit.upper_bound = M * (l2 + crit.delta) * (l2 + crit.delta);
    }
  }
  return crit;
}

double delta_critical_radius(const HermiteExpansion& g) {
  SobolevNorms norms = sobolev_norms(g);
  if (!(norms.l2 > 0.0))
    throw precondition_error("delta_critical_radius: zero window");
  double lo = 0.0;
  double hi = 1.0;
  while (delta_of(norms, hi) < norms.l2) {
    hi *= 2.0;
    if (hi > 1e12)
      throw numerical_error("delta_critical_radius: criterion never saturates");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (delta_of(norms, mid) < norms.l2 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FrameReport gram_frame_bounds(const HermiteExpansion& g, const QuadratureSet& quad,
                              int N, const std::string& trajectory_tag) {
  if (N < 0) throw precondition_error("gram_frame_bounds: negative section order");
  if (N > 32)
    throw precondition_error("gram_frame_bounds: section order above the supported 32");
  if (quad.nodes.size() != quad.weights.size())
    throw precondition_error("gram_frame_bounds: node/weight size mismatch");

  FrameReport report;
  report.N = N;
  report.h = quad.spacing;
  report.trajectory_tag = trajectory_tag;
  report.window_digest = expansion_digest(g);
  if (quad.spacing > 0.05) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "quadrature spacing %.3g exceeds the advised 0.05; "
                  "bounds may be under-resolved", quad.spacing);
    report.warning = buf;
  }

  int dim = N + 1;
  auto partials = chunked_map<CMat>(
      quad.nodes.size(), 256, [&](std::size_t lo, std::size_t hi) {
        CMat part(static_cast<std::size_t>(dim) * dim, cdouble{});
        std::vector<cdouble> v;
        for (std::size_t i = lo; i < hi; ++i) {
          stft_basis_row(g, quad.nodes[i], N, v);
          double weight = quad.weights[i];
          for (int n = 0; n < dim; ++n)
            for (int m = n; m < dim; ++m)
              part[static_cast<std::size_t>(n) * dim + m] +=
                  weight * v[m] * std::conj(v[n]);
        }
        return part;
      });

  CMat s(static_cast<std::size_t>(dim) * dim, cdouble{});
  for (const CMat& part : partials)
    for (std::size_t e = 0; e < s.size(); ++e) s[e] += part[e];
  for (int n = 0; n < dim; ++n) {
    s[static_cast<std::size_t>(n) * dim + n].imag(0.0);
    for (int m = n + 1; m < dim; ++m)
      s[static_cast<std::size_t>(m) * dim + n] =
          std::conj(s[static_cast<std::size_t>(n) * dim + m]);
  }

  report.eigenvalues = hermitian_eigenvalues(s, dim);
  report.A_N = report.eigenvalues.front();
  report.B_N = report.eigenvalues.back();
  report.gram = std::move(s);
  if (report.A_N < -1e-10)
    throw numerical_error("gram_frame_bounds: Gram matrix lost positive semidefiniteness");
  return report;
}

std::pair<double, double> section_bounds(const FrameReport& report, int n_sub) {
  if (n_sub < 0 || n_sub > report.N)
    throw precondition_error("section_bounds: sub-order outside [0, N]");
  int dim = report.N + 1;
  int sub = n_sub + 1;
  CMat block(static_cast<std::size_t>(sub) * sub);
  for (int n = 0; n < sub; ++n)
    for (int m = 0; m < sub; ++m)
      block[static_cast<std::size_t>(n) * sub + m] =
          report.gram[static_cast<std::size_t>(n) * dim + m];
  auto eig = hermitian_eigenvalues(std::move(block), sub);
  return {eig.front(), eig.back()};
}

std::uint64_t expansion_digest(const HermiteExpansion& g) {
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a offset basis
  auto mix = [&hash](const char* s) {
    for (; *s; ++s) {
      hash ^= static_cast<unsigned char>(*s);
      hash *= 1099511628211ull;
    }
  };
  for (const cdouble& c : g.coeffs()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", c.real(), c.imag());
    mix(buf);
  }
  return hash;
}

}  // namespace gst
