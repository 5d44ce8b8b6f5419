#pragma once

#include <functional>
#include <vector>

#include "gst/common.hpp"

namespace gst {

/// Dense row-major n x n complex matrix, vector storage.
using CMat = std::vector<cdouble>;

/// Eigenvalues of a Hermitian matrix, ascending.  Cyclic Jacobi with unitary
/// 2x2 rotations; off-diagonal mass driven below 1e-12 * frobenius scale.
/// Intended for the small sections this library builds (n <= ~40).
std::vector<double> hermitian_eigenvalues(CMat a, int n);

struct SolveResult {
  std::vector<cdouble> x;
  int iterations = 0;
  double residual = 0.0;               // final ||Ax-b|| / ||b||
  std::vector<double> history;         // relative residual per iteration
  bool converged = false;
};

/// Iterative solve of A x = b for Hermitian positive (semi)definite A.
/// Conjugate-residual recurrence: same cost per step as conjugate
/// gradients but the residual norm is non-increasing by construction,
/// which downstream reports rely on.
SolveResult solve_hermitian(const CMat& a, int n, const std::vector<cdouble>& b,
                            double tol, int max_iter);

/// All complex roots of a degree-n polynomial given an evaluator, the
/// leading coefficient, and a magnitude scale for the initial guesses.
/// Durand-Kerner iteration, deterministic starting configuration.
std::vector<cdouble> polynomial_roots(
    const std::function<cdouble(cdouble)>& poly, int degree, cdouble lead,
    double radius_hint);

}  // namespace gst
