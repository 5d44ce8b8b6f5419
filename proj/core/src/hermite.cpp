#include "gst/hermite.hpp"

#include <cmath>

#include "gst/numerics.hpp"

namespace gst {

namespace {

void check_index(int n, const char* what) {
  if (n < 0)
    throw precondition_error(std::string(what) + ": negative index");
  if (n > kMaxHermiteIndex)
    throw precondition_error(std::string(what) + ": index " + std::to_string(n) +
                             " exceeds supported maximum " +
                             std::to_string(kMaxHermiteIndex));
}

constexpr double kQuarterRoot2 = 1.18920711500272106671;  // 2^{1/4}

}  // namespace

double eval_hermite(int n, double t) {
  check_index(n, "eval_hermite");
  double h0 = kQuarterRoot2 * std::exp(-kPi * t * t);
  if (n == 0) return h0;
  double h1 = std::sqrt(4.0 * kPi) * t * h0;
  for (int k = 1; k < n; ++k) {
    double h2 = std::sqrt(4.0 * kPi / (k + 1)) * t * h1 -
                std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

HermiteExpansion::HermiteExpansion(std::vector<cdouble> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) check_index(degree(), "HermiteExpansion");
}

HermiteExpansion HermiteExpansion::basis(int n, cdouble scale) {
  check_index(n, "HermiteExpansion::basis");
  std::vector<cdouble> c(n + 1);
  c[n] = scale;
  return HermiteExpansion(std::move(c));
}

double HermiteExpansion::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

bool HermiteExpansion::empty() const {
  for (const auto& c : coeffs_)
    if (c != cdouble{}) return false;
  return true;
}

HermiteExpansion HermiteExpansion::trimmed(double tol) const {
  std::vector<cdouble> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
  return HermiteExpansion(std::move(c));
}

HermiteExpansion HermiteExpansion::operator+(const HermiteExpansion& o) const {
  std::vector<cdouble> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return HermiteExpansion(std::move(c));
}

HermiteExpansion HermiteExpansion::operator-(const HermiteExpansion& o) const {
  std::vector<cdouble> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  return HermiteExpansion(std::move(c));
}

HermiteExpansion HermiteExpansion::operator*(cdouble s) const {
  std::vector<cdouble> c = coeffs_;
  for (auto& v : c) v *= s;
  return HermiteExpansion(std::move(c));
}

cdouble inner(const HermiteExpansion& f, const HermiteExpansion& g) {
  cdouble s{};
  int n = std::min(f.degree(), g.degree());
  for (int i = 0; i <= n; ++i) s += f.coeff(i) * std::conj(g.coeff(i));
  return s;
}

cdouble eval_expansion(const HermiteExpansion& f, double t) {
  if (f.degree() < 0) return {};
  // One pass of the recurrence covers every index.
  cdouble acc{};
  double h0 = kQuarterRoot2 * std::exp(-kPi * t * t);
  double hprev = 0.0;
  for (int n = 0; n <= f.degree(); ++n) {
    acc += f.coeff(n) * h0;
    double hnext = std::sqrt(4.0 * kPi / (n + 1)) * t * h0 -
                   std::sqrt(static_cast<double>(n) / (n + 1)) * hprev;
    hprev = h0;
    h0 = hnext;
  }
  return acc;
}

HermiteExpansion mult_by_t(const HermiteExpansion& f) {
  if (f.degree() < 0) return f;
  check_index(f.degree() + 1, "mult_by_t result");
  std::vector<cdouble> c(f.degree() + 2);
  for (int n = 0; n <= f.degree(); ++n) {
    cdouble a = f.coeff(n);
    if (a == cdouble{}) continue;
    c[n + 1] += a * std::sqrt((n + 1) / (4.0 * kPi));
    if (n > 0) c[n - 1] += a * std::sqrt(n / (4.0 * kPi));
  }
  return HermiteExpansion(std::move(c));
}

HermiteExpansion derivative(const HermiteExpansion& f) {
  if (f.degree() < 0) return f;
  check_index(f.degree() + 1, "derivative result");
  std::vector<cdouble> c(f.degree() + 2);
  for (int n = 0; n <= f.degree(); ++n) {
    cdouble a = f.coeff(n);
    if (a == cdouble{}) continue;
    if (n > 0) c[n - 1] += a * std::sqrt(kPi * n);
    c[n + 1] -= a * std::sqrt(kPi * (n + 1));
  }
  return HermiteExpansion(std::move(c));
}

HermiteExpansion metaplectic_rotate(const HermiteExpansion& f, double theta) {
  std::vector<cdouble> c = f.coeffs();
  for (std::size_t n = 0; n < c.size(); ++n) {
    double phase = -kTwoPi * static_cast<double>(n) * theta;
    c[n] *= cdouble(std::cos(phase), std::sin(phase));
  }
  return HermiteExpansion(std::move(c));
}

SobolevNorms sobolev_norms(const HermiteExpansion& g) {
  if (g.degree() > kMaxHermiteIndex - 2)
    throw precondition_error("sobolev_norms: degree must be <= 62");
  SobolevNorms out;
  out.l2 = g.norm();
  out.deriv = derivative(g).norm();
  HermiteExpansion tg = mult_by_t(g);
  out.t_weighted = tg.norm();
  out.t_weighted_deriv = mult_by_t(derivative(g)).norm();
  return out;
}

HermiteExpansion random_expansion(int degree, std::uint64_t seed) {
  check_index(degree, "random_expansion");
  Rng rng(seed);
  std::vector<cdouble> c(degree + 1);
  for (auto& v : c) v = rng.cnormal();
  HermiteExpansion f{std::move(c)};
  double n = f.norm();
  if (n == 0.0) throw numerical_error("random_expansion: degenerate draw");
  return f * (1.0 / n);
}

}  // namespace gst
