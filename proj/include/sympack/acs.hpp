#pragma once

#include "sympack/forms.hpp"

#include <utility>

namespace sympack::linalg {

namespace detail {

/// Symmetric positive square root via eigendecomposition.
inline Matrix spd_sqrt(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("matrix for square root is not positive definite");
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace detail

/// Left polar decomposition a = Q U relative to the metric g:
/// Q is g-self-adjoint positive definite (Q = sqrt(a a*) with a* the
/// g-adjoint) and U is g-unitary. For g-anti-self-adjoint a this Q equals
/// sqrt(a* a), the factor used in the compatible-structure construction.
///
/// Computed in a g-orthonormal frame: with g = L L^T (Cholesky), the frame
/// operator is a~ = L^T a L^{-T} and g-adjoints become plain transposes.
inline std::pair<LinearMap, LinearMap> polar_decomposition(
    const LinearMap& a, const BilinearForm& g, double tol = kDefaultTol) {
  require_same_dim(a.dim, g.dim);
  if (g.role != FormRole::Metric)
    throw std::invalid_argument("polar decomposition needs a metric");
  const int dim = a.dim;

  Eigen::LLT<Matrix> llt(0.5 * (g.mat + g.mat.transpose()));
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("metric is not positive definite");
  const Matrix l = llt.matrixL();
  const Matrix lt = l.transpose();

  // a~ = L^T a L^{-T}; the right factor solves L X^T = a^T
  const Matrix at =
      lt * l.triangularView<Eigen::Lower>().solve(a.mat.transpose()).transpose();

  Eigen::JacobiSVD<Matrix> svd(at);
  if (svd.singularValues().minCoeff() <= tol * std::max(1.0, svd.singularValues().maxCoeff()))
    throw std::invalid_argument("polar decomposition of a singular map");

  const Matrix q_frame = detail::spd_sqrt(at * at.transpose());
  const Matrix u_frame = q_frame.ldlt().solve(at);

  // map back: M = L^{-T} M~ L^T
  const auto from_frame = [&](const Matrix& m) -> Matrix {
    return lt.triangularView<Eigen::Upper>().solve(m * lt);
  };
  LinearMap q{dim, from_frame(q_frame), MapRole::General};
  LinearMap u{dim, from_frame(u_frame), MapRole::General};
  return {std::move(q), std::move(u)};
}

inline std::pair<LinearMap, LinearMap> polar_decomposition(
    const LinearMap& a, double tol = kDefaultTol) {
  const BilinearForm id{a.dim, Matrix::Identity(a.dim, a.dim), FormRole::Metric};
  return polar_decomposition(a, id, tol);
}

/// The compatible almost complex structure induced by a metric.
///
/// A is defined by omega(v, w) = g(A v, w); it is g-anti-self-adjoint, and
/// J = Q^{-1} A with Q the g-positive square root of A*A. J satisfies
/// J^2 = -I, tames omega, and preserves it. If g and omega are both
/// (anti-)invariant under an involution, J anti-commutes with it.
inline LinearMap compatible_acs_from_metric(const BilinearForm& g,
                                            const BilinearForm& omega,
                                            double tol = kDefaultTol) {
  require_same_dim(g.dim, omega.dim);
  if (g.role != FormRole::Metric)
    throw std::invalid_argument("first argument must be a metric");
  if (omega.role != FormRole::Symplectic)
    throw std::invalid_argument("second argument must be a symplectic form");

  Eigen::LLT<Matrix> llt(0.5 * (g.mat + g.mat.transpose()));
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("metric is not positive definite");
  const Matrix l = llt.matrixL();
  const Matrix lt = l.transpose();

  // omega = A^T g  =>  A = -g^{-1} omega; in the g-orthonormal frame
  // A~ = -L^{-1} omega L^{-T}, antisymmetric up to rounding.
  const Matrix omega_lt =
      l.triangularView<Eigen::Lower>().solve(omega.mat.transpose()).transpose();
  Matrix a_frame = -l.triangularView<Eigen::Lower>().solve(omega_lt);
  a_frame = 0.5 * (a_frame - a_frame.transpose().eval());

  Eigen::JacobiSVD<Matrix> svd(a_frame);
  if (svd.singularValues().minCoeff() <=
      tol * std::max(1.0, svd.singularValues().maxCoeff()))
    throw std::invalid_argument("symplectic form is degenerate");

  const Matrix q_frame = detail::spd_sqrt(a_frame.transpose() * a_frame);
  const Matrix j_frame = q_frame.ldlt().solve(a_frame);
  const Matrix j = lt.triangularView<Eigen::Upper>().solve(j_frame * lt);

  LinearMap result = make_acs(j, std::max(tol, 1e-7));
  if (!check_compatible(omega, result, std::max(tol, 1e-7)))
    throw std::logic_error("constructed structure failed compatibility check");
  return result;
}

/// Equivariant variant: the metric is first replaced by its phi-average
/// (g + phi*g)/2, after which the canonical construction yields a J with
/// phi J = -J phi.
inline LinearMap equivariant_acs(const BilinearForm& g,
                                 const BilinearForm& omega,
                                 const LinearMap& phi,
                                 double tol = kDefaultTol) {
  require_same_dim(g.dim, phi.dim);
  require_same_dim(omega.dim, phi.dim);
  const int dim = phi.dim;
  if (max_abs(phi.mat * phi.mat - Matrix::Identity(dim, dim)) > tol)
    throw std::invalid_argument("phi is not an involution");
  if (!is_anti_symplectic(omega, phi, tol))
    throw std::invalid_argument("phi is not anti-symplectic for omega");

  Matrix avg = 0.5 * (g.mat + pullback(g.mat, phi.mat));
  avg = 0.5 * (avg + avg.transpose());
  const BilinearForm g_avg = make_metric(avg, tol);
  return compatible_acs_from_metric(g_avg, omega, tol);
}

/// The metric induced by a compatible pair: g_J(v, w) = omega(v, Jw).
inline BilinearForm metric_from_acs(const BilinearForm& omega,
                                    const LinearMap& j,
                                    double tol = kDefaultTol) {
  require_same_dim(omega.dim, j.dim);
  Matrix g = omega.mat * j.mat;
  g = 0.5 * (g + g.transpose());
  return make_metric(g, tol);
}

}  // namespace sympack::linalg
