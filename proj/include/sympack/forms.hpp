#pragma once

#include "sympack/linalg.hpp"

namespace sympack::linalg {

/// Result of a taming test. When the test fails, `witness` is a unit vector
/// with omega(witness, J witness) = min_eigenvalue <= 0.
struct TameReport {
  bool tame = false;
  double min_eigenvalue = 0.0;
  Vector witness;
};

/// Exact (up to eigensolver accuracy) taming test: omega(v, Jv) = v^T S v
/// with S the symmetric part of Omega*J, so taming is positive definiteness
/// of S.
inline TameReport check_tame(const BilinearForm& omega, const LinearMap& j,
                             double tol = kDefaultTol) {
  require_same_dim(omega.dim, j.dim);
  const Matrix oj = omega.mat * j.mat;
  const Matrix s = 0.5 * (oj + oj.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  int idx = 0;
  es.eigenvalues().minCoeff(&idx);
  TameReport r;
  r.min_eigenvalue = es.eigenvalues()(idx);
  r.witness = es.eigenvectors().col(idx);
  r.tame = r.min_eigenvalue > tol * std::max(1.0, max_abs(s));
  return r;
}

/// tame plus J-invariance of omega: ||J^T Omega J - Omega|| <= tol.
inline bool check_compatible(const BilinearForm& omega, const LinearMap& j,
                             double tol = kDefaultTol) {
  if (!check_tame(omega, j, tol).tame) return false;
  const double scale = std::max(1.0, max_abs(omega.mat));
  return max_abs(pullback(omega.mat, j.mat) - omega.mat) <= tol * scale;
}

/// Averages a taming form against an anti-holomorphic involution:
/// returns (omega - phi*omega)/2, which is anti-invariant under phi and
/// still tames j. Preconditions: phi^2 = I, phi j phi = -j, omega tames j.
inline BilinearForm symmetrize_form(const BilinearForm& omega,
                                    const LinearMap& phi, const LinearMap& j,
                                    double tol = kDefaultTol) {
  require_same_dim(omega.dim, phi.dim);
  require_same_dim(omega.dim, j.dim);
  const int dim = omega.dim;
  if (max_abs(phi.mat * phi.mat - Matrix::Identity(dim, dim)) > tol)
    throw std::invalid_argument("phi is not an involution");
  if (max_abs(phi.mat * j.mat + j.mat * phi.mat) > tol)
    throw std::invalid_argument("phi is not anti-holomorphic for j");
  const TameReport t = check_tame(omega, j, tol);
  if (!t.tame) {
    throw std::invalid_argument(
        "omega does not tame j; witness vector has omega(v, Jv) = " +
        std::to_string(t.min_eigenvalue));
  }
  Matrix bar = 0.5 * (omega.mat - pullback(omega.mat, phi.mat));
  bar = 0.5 * (bar - bar.transpose());  // scrub rounding asymmetry
  return make_symplectic_form(bar, tol);
}

}  // namespace sympack::linalg
