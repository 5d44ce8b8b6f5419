#include "gst/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "gst/linalg.hpp"
#include "gst/numerics.hpp"

namespace gst {

namespace {

constexpr double kIllPosedFloor = 1e-8;
constexpr double kExcludedDiskRadius = 1e-3;
constexpr int kMaxAngularSamples = 4096;

void validate_samples(const PolyanalyticSamples& s) {
  if (s.order < 0)
    throw precondition_error("polyanalytic samples: negative order");
  if (s.M < 64)
    throw precondition_error("polyanalytic samples: fewer than 64 angular samples");
  if (s.radii.size() < static_cast<std::size_t>(s.order) + 1)
    throw precondition_error("polyanalytic samples: need order+1 circles");
  double prev = 0.0;
  for (double r : s.radii) {
    if (!(r > prev))
      throw precondition_error(
          "polyanalytic samples: radii must be positive and strictly increasing");
    prev = r;
  }
  if (s.values.size() != s.radii.size())
    throw precondition_error("polyanalytic samples: one value row per circle");
  for (const auto& row : s.values) {
    if (row.size() != static_cast<std::size_t>(s.M))
      throw precondition_error("polyanalytic samples: row length must equal M");
    for (const cdouble& v : row)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw precondition_error("polyanalytic samples: non-finite value");
  }
}

// (1/2 pi i) int_{|t|=R} G(t)/(t - z) dt by the trapezoid rule on the
// uniform angular grid: with t = R e^{i psi} the integrand becomes
// G t / (t - z) against d psi / 2 pi.
cdouble contour_integral(const std::vector<cdouble>& row, double radius, cdouble z) {
  std::size_t m = row.size();
  cdouble acc{};
  for (std::size_t j = 0; j < m; ++j) {
    double psi = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    cdouble t = radius * cdouble(std::cos(psi), std::sin(psi));
    acc += row[j] * t / (t - z);
  }
  return acc / static_cast<double>(m);
}

}  // namespace

SampledField sample_field(const HermiteExpansion& f, const HermiteExpansion& g,
                          const QuadratureSet& quad) {
  if (quad.nodes.size() != quad.weights.size())
    throw precondition_error("sample_field: node/weight size mismatch");
  SampledField field;
  field.nodes = quad.nodes;
  field.weights = quad.weights;
  field.window = g;
  auto chunks = chunked_map<std::vector<cdouble>>(
      quad.nodes.size(), 256, [&](std::size_t lo, std::size_t hi) {
        std::vector<cdouble> part;
        part.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i)
          part.push_back(stft_point(f, g, quad.nodes[i]));
        return part;
      });
  field.values.reserve(quad.nodes.size());
  for (auto& part : chunks)
    field.values.insert(field.values.end(), part.begin(), part.end());
  return field;
}

ReconstructionResult cg_reconstruct(
    const SampledField& samples, const HermiteExpansion& g, int N, double tol,
    const std::optional<HermiteExpansion>& ground_truth) {
  if (samples.nodes.size() != samples.weights.size() ||
      samples.nodes.size() != samples.values.size())
    throw precondition_error("cg_reconstruct: inconsistent sample arrays");
  if (!(tol > 0.0))
    throw precondition_error("cg_reconstruct: tolerance must be positive");

  QuadratureSet quad;
  quad.nodes = samples.nodes;
  quad.weights = samples.weights;
  quad.spacing = 0.0;  // unknown here; the caller's report carries it
  FrameReport frame = gram_frame_bounds(g, quad, N);
  if (frame.A_N < kIllPosedFloor) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "cg_reconstruct: ill-posed section, lower frame bound "
                  "A_N = %.3e below the %.0e floor", frame.A_N, kIllPosedFloor);
    throw numerical_error(buf);
  }

  int dim = N + 1;
  auto partials = chunked_map<std::vector<cdouble>>(
      samples.nodes.size(), 256, [&](std::size_t lo, std::size_t hi) {
        std::vector<cdouble> part(dim, cdouble{});
        std::vector<cdouble> row;
        for (std::size_t i = lo; i < hi; ++i) {
          stft_basis_row(g, samples.nodes[i], N, row);
          cdouble factor = samples.weights[i] * samples.values[i];
          for (int n = 0; n < dim; ++n) part[n] += factor * std::conj(row[n]);
        }
        return part;
      });
  std::vector<cdouble> b(dim, cdouble{});
  for (const auto& part : partials)
    for (int n = 0; n < dim; ++n) b[n] += part[n];

  SolveResult solve = solve_hermitian(frame.gram, dim, b, tol, 10 * dim);
  if (!solve.converged) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "cg_reconstruct: no convergence in %d iterations "
                  "(residual %.3e)", solve.iterations, solve.residual);
    throw numerical_error(buf);
  }

  ReconstructionResult result;
  result.estimate = HermiteExpansion(std::move(solve.x));
  result.iterations = solve.iterations;
  result.residual = solve.residual;
  result.residual_history = std::move(solve.history);
  result.frame_lower_bound = frame.A_N;
  if (ground_truth) {
    double num = 0.0;
    int top = std::max(result.estimate.degree(), ground_truth->degree());
    for (int n = 0; n <= top; ++n)
      num += std::norm(result.estimate.coeff(n) - ground_truth->coeff(n));
    double denom = ground_truth->norm();
    result.relative_error =
        denom > 0.0 ? std::sqrt(num) / denom : std::sqrt(num);
  }
  return result;
}

PolyanalyticSamples sample_polyanalytic(const std::function<cdouble(cdouble)>& G,
                                        std::vector<double> radii, int M,
                                        int order) {
  PolyanalyticSamples s;
  s.order = order < 0 ? static_cast<int>(radii.size()) - 1 : order;
  s.radii = std::move(radii);
  s.M = M;
  s.values.reserve(s.radii.size());
  for (double r : s.radii) {
    std::vector<cdouble> row(M > 0 ? M : 0);
    for (int j = 0; j < M; ++j) {
      double psi = kTwoPi * static_cast<double>(j) / static_cast<double>(M);
      row[j] = G(r * cdouble(std::cos(psi), std::sin(psi)));
    }
    s.values.push_back(std::move(row));
  }
  validate_samples(s);
  return s;
}

cdouble cauchy_reconstruct(const PolyanalyticSamples& samples, PhasePoint z,
                           bool least_squares) {
  validate_samples(samples);
  std::size_t circles = samples.radii.size();
  std::size_t needed = static_cast<std::size_t>(samples.order) + 1;
  if (!least_squares && circles != needed)
    throw precondition_error(
        "cauchy_reconstruct: the exact formula needs exactly order+1 circles; "
        "pass least_squares=true for the over-determined fit");
  cdouble zc = to_complex(z);
  if (std::abs(zc) >= samples.radii.front())
    throw precondition_error(
        "cauchy_reconstruct: query point must lie strictly inside the "
        "smallest circle");

  std::vector<cdouble> integrals(circles);
  for (std::size_t k = 0; k < circles; ++k)
    integrals[k] = contour_integral(samples.values[k], samples.radii[k], zc);
  double s = std::norm(zc);

  if (!least_squares) {
    // Lagrange weights in the squared radii reproduce each power s^j
    // exactly, which is what the reduced representation requires.
    cdouble acc{};
    for (std::size_t k = 0; k < circles; ++k) {
      double pk = 1.0;
      double rk2 = samples.radii[k] * samples.radii[k];
      for (std::size_t j = 0; j < circles; ++j) {
        if (j == k) continue;
        double rj2 = samples.radii[j] * samples.radii[j];
        pk *= (rj2 - s) / (rj2 - rk2);
      }
      acc += pk * integrals[k];
    }
    return acc;
  }

  // Over-determined variant: fit the holomorphic components F_j(z) from
  // all circles through the Vandermonde system I_k = sum_j F_j R_k^{2j},
  // solved via the normal equations.
  std::size_t cols = needed;
  std::vector<double> vand(circles * cols);
  for (std::size_t k = 0; k < circles; ++k) {
    double rk2 = samples.radii[k] * samples.radii[k];
    double p = 1.0;
    for (std::size_t j = 0; j < cols; ++j, p *= rk2) vand[k * cols + j] = p;
  }
  CMat normal(cols * cols, cdouble{});
  std::vector<cdouble> rhs(cols, cdouble{});
  for (std::size_t a = 0; a < cols; ++a) {
    for (std::size_t bcol = 0; bcol < cols; ++bcol) {
      double acc = 0.0;
      for (std::size_t k = 0; k < circles; ++k)
        acc += vand[k * cols + a] * vand[k * cols + bcol];
      normal[a * cols + bcol] = acc;
    }
    for (std::size_t k = 0; k < circles; ++k)
      rhs[a] += vand[k * cols + a] * integrals[k];
  }
  SolveResult fit = solve_hermitian(normal, static_cast<int>(cols), rhs, 1e-13,
                                    200 * static_cast<int>(cols));
  if (!fit.converged)
    throw numerical_error("cauchy_reconstruct: least-squares fit did not converge");
  cdouble acc{};
  double p = 1.0;
  for (std::size_t j = 0; j < cols; ++j, p *= s) acc += fit.x[j] * p;
  return acc;
}

cdouble stft_circle_reconstruct(const HermiteExpansion& f, const HermiteExpansion& g,
                                const std::vector<double>& radii, PhasePoint z,
                                int M) {
  HermiteExpansion window = g.trimmed();
  if (window.empty())
    throw precondition_error("stft_circle_reconstruct: zero window");
  int n = window.degree();
  if (radii.size() != static_cast<std::size_t>(n) + 1)
    throw precondition_error(
        "stft_circle_reconstruct: need exactly deg(g)+1 circle radii");
  double zmag = z.norm();
  if (zmag < kExcludedDiskRadius)
    throw precondition_error(
        "stft_circle_reconstruct: query inside the excluded disk around the "
        "origin (|z| < 1e-3) where the monomial division is singular");
  if (!(zmag < radii.front()))
    throw precondition_error(
        "stft_circle_reconstruct: query must lie strictly inside the "
        "smallest circle");
  if (M < 64)
    throw precondition_error("stft_circle_reconstruct: M below 64");

  // Work in the lift plane: the lift queried over the conjugate point
  // carries V_g f at the requested one.
  PhasePoint w(z.x, -z.y);
  cdouble wc = to_complex(w);
  auto reduced = [&](cdouble t) {
    cdouble tn = std::pow(t, n);
    return tn * polyanalytic_lift(f, window, from_complex(t));
  };
  auto evaluate = [&](int m) {
    auto samples = sample_polyanalytic(reduced, radii, m);
    cdouble gz = cauchy_reconstruct(samples, w);
    cdouble lifted = gz / std::pow(wc, n);
    // Invert the lift's phase and weight factors at w = (x, -xi).
    cdouble phase = std::exp(cdouble(0.0, kPi * w.x * w.y));
    return lifted * phase * std::exp(-0.5 * kPi * w.norm2());
  };

  cdouble coarse = evaluate(M);
  for (;;) {
    int finer = 2 * M;
    cdouble refined = evaluate(finer);
    if (std::abs(refined - coarse) <= 1e-8) return refined;
    if (finer >= kMaxAngularSamples)
      throw numerical_error(
          "stft_circle_reconstruct: angular refinement did not converge by "
          "M = 4096");
    M = finer;
    coarse = refined;
  }
}

UniquenessReport line_uniqueness_check(const HermiteExpansion& g, double theta_rev,
                                       const OffsetSet& offsets) {
  if (!offsets.periodic && offsets.values.empty())
    throw precondition_error("line_uniqueness_check: empty offset set");
  HermiteExpansion rotated = metaplectic_rotate(g, theta_rev).trimmed();
  if (rotated.empty())
    throw precondition_error("line_uniqueness_check: zero window");

  UniquenessReport report;
  int deg = rotated.degree();
  if (deg > 0) {
    // Strip the Gaussian: the zeros are the real roots of the Hermite
    // polynomial combination sum_n c_n 2^{1/4} / sqrt(n! 2^n) H_n(sqrt(2 pi) t).
    auto poly = [&](cdouble t) {
      cdouble u = std::sqrt(kTwoPi) * t;
      cdouble hprev = 1.0, h = 2.0 * u;
      cdouble acc = rotated.coeff(0) * hprev;
      double scale = 1.0;  // sqrt(n! 2^n) accumulated incrementally
      for (int k = 1; k <= deg; ++k) {
        scale *= std::sqrt(2.0 * k);
        acc += rotated.coeff(k) * h / scale;
        cdouble hnext = 2.0 * u * h - 2.0 * static_cast<double>(k) * hprev;
        hprev = h;
        h = hnext;
      }
      return std::pow(2.0, 0.25) * acc;
    };
    cdouble lead = rotated.coeff(deg) * std::pow(2.0, 0.25) *
                   std::pow(std::sqrt(4.0 * kPi), deg);
    double fact = 1.0;
    for (int k = 2; k <= deg; ++k) fact *= k;
    lead /= std::sqrt(fact);
    double hint = std::sqrt((2.0 * deg + 1.0) / kTwoPi) + 1.0;
    std::vector<double> zeros;
    for (cdouble root : polynomial_roots(poly, deg, lead, hint))
      if (std::fabs(root.imag()) <= 1e-8) zeros.push_back(root.real());
    std::sort(zeros.begin(), zeros.end());
    for (double zr : zeros)
      if (report.zero_set.empty() || zr - report.zero_set.back() > 1e-9)
        report.zero_set.push_back(zr);
  }

  if (report.zero_set.empty()) {
    report.unique = true;  // a zero-free window misses no time on any line
    return report;
  }
  if (offsets.periodic) {
    // The intersection over all integer multiples of the spacing is empty
    // for any finite zero set: far translates shift the zeros past every
    // candidate time.
    report.unique = true;
    return report;
  }
  for (double z0 : report.zero_set) {
    double candidate = offsets.values.front() + z0;
    bool in_all = true;
    for (double lambda : offsets.values) {
      bool hit = false;
      for (double zr : report.zero_set)
        if (std::fabs(candidate - lambda - zr) <= 1e-7) { hit = true; break; }
      if (!hit) { in_all = false; break; }
    }
    if (in_all) {
      report.unique = false;
      report.witness = candidate;
      return report;
    }
  }
  report.unique = true;
  return report;
}

}  // namespace gst
