#include "gst/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gst {

namespace {

double off_diagonal_mass(const CMat& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += std::norm(a[i * n + j]);
  return std::sqrt(2.0 * s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(CMat a, int n) {
  if (n < 0 || static_cast<std::size_t>(n) * n != a.size())
    throw precondition_error("hermitian_eigenvalues: bad dimension");
  if (n == 0) return {};
  double scale = 0.0;
  for (const auto& v : a) scale += std::norm(v);
  scale = std::sqrt(scale);
  double tol = 1e-12 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_diagonal_mass(a, n) <= tol) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cdouble apq = a[p * n + q];
        double mag = std::abs(apq);
        if (mag <= tol / (n * n)) continue;
        // Unitary rotation zeroing the (p,q) entry: factor out the phase of
        // a_pq, then a real Jacobi rotation on the symmetrized 2x2 block.
        cdouble phase = apq / mag;
        double app = a[p * n + p].real();
        double aqq = a[q * n + q].real();
        double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
        double c = std::cos(theta);
        double s = std::sin(theta);
        cdouble sp = s * phase;  // U = [c, -sp; conj(sp), c] on the (p,q) plane
        for (int k = 0; k < n; ++k) {
          cdouble akp = a[k * n + p];
          cdouble akq = a[k * n + q];
          a[k * n + p] = c * akp + std::conj(sp) * akq;
          a[k * n + q] = -sp * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          cdouble apk = a[p * n + k];
          cdouble aqk = a[q * n + k];
          a[p * n + k] = c * apk + sp * aqk;
          a[q * n + k] = -std::conj(sp) * apk + c * aqk;
        }
      }
    }
  }
  if (off_diagonal_mass(a, n) > 1e-8 * std::max(scale, 1e-300))
    throw numerical_error("hermitian_eigenvalues: Jacobi sweeps did not converge");
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i * n + i].real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

void matvec(const CMat& a, int n, const std::vector<cdouble>& x,
            std::vector<cdouble>& y) {
  for (int i = 0; i < n; ++i) {
    cdouble acc{};
    const cdouble* row = &a[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

cdouble dot(const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
  cdouble acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double nrm(const std::vector<cdouble>& u) { return std::sqrt(std::abs(dot(u, u))); }

}  // namespace

SolveResult solve_hermitian(const CMat& a, int n, const std::vector<cdouble>& b,
                            double tol, int max_iter) {
  if (n < 0 || static_cast<std::size_t>(n) * n != a.size() ||
      b.size() != static_cast<std::size_t>(n))
    throw precondition_error("solve_hermitian: bad dimensions");
  SolveResult res;
  res.x.assign(n, cdouble{});
  double bnorm = nrm(b);
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  std::vector<cdouble> r = b, p = b, ar(n), ap(n);
  matvec(a, n, r, ar);
  ap = ar;
  cdouble rar = dot(r, ar);
  double rel = 1.0;
  res.history.push_back(rel);
  for (int it = 0; it < max_iter; ++it) {
    double apn2 = 0.0;
    for (const auto& v : ap) apn2 += std::norm(v);
    if (apn2 == 0.0) break;
    cdouble alpha = rar / apn2;
    for (int i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    res.iterations = it + 1;
    rel = nrm(r) / bnorm;
    res.history.push_back(rel);
    if (rel <= tol) {
      res.converged = true;
      break;
    }
    matvec(a, n, r, ar);
    cdouble rar_new = dot(r, ar);
    if (rar == cdouble{}) break;
    cdouble beta = rar_new / rar;
    rar = rar_new;
    for (int i = 0; i < n; ++i) {
      p[i] = r[i] + beta * p[i];
      ap[i] = ar[i] + beta * ap[i];
    }
  }
  res.residual = rel;
  return res;
}

std::vector<cdouble> polynomial_roots(
    const std::function<cdouble(cdouble)>& poly, int degree, cdouble lead,
    double radius_hint) {
  if (degree < 1) return {};
  if (lead == cdouble{})
    throw precondition_error("polynomial_roots: zero leading coefficient");
  double r0 = std::max(radius_hint, 1e-3);
  std::vector<cdouble> z(degree);
  // Standard spiral start; never symmetric about a root constellation.
  cdouble seed(0.4, 0.9);
  cdouble acc(1.0, 0.0);
  for (int i = 0; i < degree; ++i) {
    acc *= seed;
    z[i] = r0 * acc / std::abs(acc) * (0.5 + static_cast<double>(i + 1) / degree);
  }
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (int i = 0; i < degree; ++i) {
      cdouble denom = lead;
      for (int j = 0; j < degree; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (denom == cdouble{}) {
        z[i] += cdouble(1e-6, 1e-6);
        continue;
      }
      cdouble dz = poly(z[i]) / denom;
      z[i] -= dz;
      moved = std::max(moved, std::abs(dz));
    }
    if (moved < 1e-13 * std::max(1.0, r0)) return z;
  }
  throw numerical_error("polynomial_roots: iteration did not settle");
}

}  // namespace gst
