#pragma once

#include "sympack/forms.hpp"
#include "sympack/ratmat.hpp"

namespace sympack::linalg {

// Normalization of a linear anti-symplectic involution Phi fixing R^n:
// produces the linear symplectomorphism Psi with Psi Phi = c Psi, where c
// is the standard conjugation. Psi fixes each e_i, i < n, and sends a basis
// v_1..v_n of the (-1)-eigenspace of Phi to
//   v_j |-> (0, ..., 0, omega0(e_1, v_j), ..., omega0(e_n, v_j)).
//
// The construction is rational linear algebra, so an exact path over
// cpp_rational is provided next to the floating one.

/// Exact path. Input Phi as a 2n x 2n rational matrix; all preconditions
/// are verified exactly and the returned Psi satisfies Psi^T O Psi = O and
/// Psi Phi = c Psi exactly.
inline RatMat normalize_involution_exact(const RatMat& phi) {
  const int dim = phi.rows();
  if (phi.cols() != dim || dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("phi must be square of even dimension");
  const int n = dim / 2;

  if (!(phi * phi == RatMat::identity(dim)))
    throw std::invalid_argument("phi is not an involution");

  const RatMat omega = rat_omega0(dim);
  if (!(phi.transpose() * omega * phi == -omega))
    throw std::invalid_argument("phi is not anti-symplectic for omega0");

  // Fix(phi) = R^n: phi e_i = e_i for i < n, and the fixed space is not
  // larger (equivalently the (-1)-eigenspace has dimension n).
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < dim; ++r)
      if (phi(r, i) != (r == i ? 1 : 0))
        throw std::invalid_argument("phi does not fix R^n pointwise");

  RatMat phi_plus_id = phi + RatMat::identity(dim);
  const auto kernel = phi_plus_id.kernel_basis();
  if (static_cast<int>(kernel.size()) != n)
    throw std::invalid_argument(
        "fixed space of phi is larger than R^n ((-1)-eigenspace has wrong dimension)");

  // Columns of B: e_1..e_n then the v_j; columns of W: e_1..e_n then the
  // images (0, omega0(e_1, v_j), .., omega0(e_n, v_j)). With omega0 as
  // above, omega0(e_i, v) is just the y-part of v.
  RatMat b(dim, dim), w(dim, dim);
  for (int i = 0; i < n; ++i) {
    b(i, i) = 1;
    w(i, i) = 1;
  }
  for (int j = 0; j < n; ++j) {
    const auto& v = kernel[j];
    for (int r = 0; r < dim; ++r) b(r, n + j) = v[r];
    for (int i = 0; i < n; ++i) w(n + i, n + j) = v[n + i];
  }
  RatMat psi = w * b.inverse();

  if (!(psi.transpose() * omega * psi == omega))
    throw std::logic_error("normalization is not symplectic");
  if (!(psi * phi == rat_conjugation(dim) * psi))
    throw std::logic_error("normalization does not intertwine phi with conjugation");
  return psi;
}

/// Floating path; same construction with numeric tolerances.
inline LinearMap normalize_involution(const LinearMap& phi,
                                      const BilinearForm& omega0,
                                      double tol = kDefaultTol) {
  const int dim = phi.dim;
  require_same_dim(dim, omega0.dim);
  const int n = dim / 2;
  const Matrix identity = Matrix::Identity(dim, dim);

  if (max_abs(phi.mat * phi.mat - identity) > tol)
    throw std::invalid_argument("phi is not an involution");
  if (max_abs(pullback(omega0.mat, phi.mat) + omega0.mat) > tol)
    throw std::invalid_argument("phi is not anti-symplectic for omega0");
  if (max_abs(phi.mat.leftCols(n) - identity.leftCols(n)) > tol)
    throw std::invalid_argument("phi does not fix R^n pointwise");

  Eigen::FullPivLU<Matrix> lu(phi.mat + identity);
  lu.setThreshold(1e-8);
  const Matrix kernel = lu.kernel();
  if (kernel.cols() != n)
    throw std::invalid_argument(
        "fixed space of phi is larger than R^n ((-1)-eigenspace has wrong dimension)");

  Matrix b(dim, dim), w(dim, dim);
  b.setZero();
  w.setZero();
  b.topLeftCorner(n, n).setIdentity();
  w.topLeftCorner(n, n).setIdentity();
  b.rightCols(n) = kernel;
  w.bottomRightCorner(n, n) = kernel.bottomRows(n);
  Matrix psi = w * b.partialPivLu().solve(identity);

  LinearMap result{dim, psi, MapRole::Symplectomorphism};
  if (!preserves_form(omega0, result, std::max(tol, 1e-10)))
    throw std::logic_error("normalization is not symplectic");
  return result;
}

}  // namespace sympack::linalg
