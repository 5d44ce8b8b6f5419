#pragma once

#include <complex>
#include <vector>

#include "gst/common.hpp"

namespace gst {

/// Largest basis index the library evaluates; beyond this every operation
/// raises precondition_error rather than degrade silently.
inline constexpr int kMaxHermiteIndex = 64;

/// Hermite functions normalized so that ||h_n||_2 = 1 and
///   h_n(t) = 2^{1/4} / sqrt(n! 2^n) * H_n(sqrt(2 pi) t) * exp(-pi t^2),
/// with H_n the physicists' Hermite polynomials.  They satisfy
///   h_{n+1}(t) = sqrt(4 pi / (n+1)) t h_n(t) - sqrt(n / (n+1)) h_{n-1}(t),
///   t h_n      = sqrt((n+1) / 4 pi) h_{n+1} + sqrt(n / 4 pi) h_{n-1},
///   h_n'       = sqrt(pi n) h_{n-1} - sqrt(pi (n+1)) h_{n+1}.
/// All evaluation goes through the first recurrence with the Gaussian
/// folded in, which is overflow-free for n <= 64, |t| <= 12.
double eval_hermite(int n, double t);

/// Finite expansion f = sum_n coeff[n] h_n.  Invariants: degree() <= 64;
/// coefficients may carry trailing zeros (trimmed() removes them).
class HermiteExpansion {
 public:
  HermiteExpansion() = default;
  explicit HermiteExpansion(std::vector<cdouble> coeffs);

  static HermiteExpansion basis(int n, cdouble scale = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cdouble>& coeffs() const { return coeffs_; }
  cdouble coeff(int n) const {
    return n >= 0 && n < static_cast<int>(coeffs_.size()) ? coeffs_[n] : cdouble{};
  }

  double norm() const;
  bool empty() const;  // all coefficients exactly zero
  HermiteExpansion trimmed(double tol = 0.0) const;

  HermiteExpansion operator+(const HermiteExpansion& o) const;
  HermiteExpansion operator-(const HermiteExpansion& o) const;
  HermiteExpansion operator*(cdouble s) const;

 private:
  std::vector<cdouble> coeffs_;
};

/// <f, g> = sum_n f_n conj(g_n).
cdouble inner(const HermiteExpansion& f, const HermiteExpansion& g);

cdouble eval_expansion(const HermiteExpansion& f, double t);

/// Coefficient image of t -> t f(t).  Raises the degree by one.
HermiteExpansion mult_by_t(const HermiteExpansion& f);

/// Coefficient image of f'.  Raises the degree by one.
HermiteExpansion derivative(const HermiteExpansion& f);

/// Fractional time-frequency rotation: coefficientwise phase
/// exp(-2 pi i n theta), theta in revolutions.  Unitary; theta=1/4 is the
/// Fourier transform up to the sign convention of the basis.
HermiteExpansion metaplectic_rotate(const HermiteExpansion& f, double theta);

struct SobolevNorms {
  double l2;               // ||g||
  double deriv;            // ||g'||
  double t_weighted;       // ||t g||
  double t_weighted_deriv; // ||t g'||
};

/// Exact via the ladder relations; requires degree <= 62 so the
/// intermediate expansions stay within the supported index range.
SobolevNorms sobolev_norms(const HermiteExpansion& g);

/// Random expansion with unit-normalized complex Gaussian coefficients,
/// exactly reproducible from the seed.
HermiteExpansion random_expansion(int degree, std::uint64_t seed);

}  // namespace gst
