#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sympack::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Convention used throughout: R^{2n} carries coordinates
// (x_1..x_n, y_1..y_n), identified with C^n via z_j = x_j + i y_j.
//
//   omega0 = [[0, I], [-I, 0]]   i.e. omega0(e_j, e_{n+j}) = +1
//   J0     = [[0,-I], [ I, 0]]   multiplication by i
//   conj   = diag(I, -I)         complex conjugation, Fix = R^n
//
// With these, omega0(v, J0 v) = |v|^2 and conj is anti-symplectic.

inline void require_even(int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("dimension must be a positive even integer");
}

inline Matrix omega0_matrix(int dim) {
  require_even(dim);
  const int n = dim / 2;
  Matrix m = Matrix::Zero(dim, dim);
  m.block(0, n, n, n) = Matrix::Identity(n, n);
  m.block(n, 0, n, n) = -Matrix::Identity(n, n);
  return m;
}

inline Matrix standard_acs_matrix(int dim) {
  require_even(dim);
  const int n = dim / 2;
  Matrix m = Matrix::Zero(dim, dim);
  m.block(0, n, n, n) = -Matrix::Identity(n, n);
  m.block(n, 0, n, n) = Matrix::Identity(n, n);
  return m;
}

inline Matrix conjugation_matrix(int dim) {
  require_even(dim);
  const int n = dim / 2;
  Matrix m = Matrix::Identity(dim, dim);
  m.block(n, n, n, n) = -Matrix::Identity(n, n);
  return m;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

enum class FormRole { Symplectic, Metric };
enum class MapRole { Acs, Involution, Symplectomorphism, General };

constexpr double kDefaultTol = 1e-9;

/// A bilinear form on R^dim represented by its Gram matrix:
/// value(v, w) = v^T mat w.
struct BilinearForm {
  int dim = 0;
  Matrix mat;
  FormRole role = FormRole::Symplectic;

  double operator()(const Vector& v, const Vector& w) const {
    return v.dot(mat * w);
  }
};

struct LinearMap {
  int dim = 0;
  Matrix mat;
  MapRole role = MapRole::General;

  Vector operator()(const Vector& v) const { return mat * v; }
};

/// Validates antisymmetry and nondegeneracy, then wraps the matrix.
inline BilinearForm make_symplectic_form(const Matrix& m,
                                         double tol = kDefaultTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  require_even(static_cast<int>(m.rows()));
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m + m.transpose()) > tol * scale)
    throw std::invalid_argument("symplectic form matrix must be antisymmetric");
  Eigen::JacobiSVD<Matrix> svd(m);
  if (svd.singularValues().minCoeff() <= tol * scale)
    throw std::invalid_argument("symplectic form matrix is degenerate");
  return BilinearForm{static_cast<int>(m.rows()), m, FormRole::Symplectic};
}

/// Validates symmetry and positive definiteness.
inline BilinearForm make_metric(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.transpose()) > tol * scale)
    throw std::invalid_argument("metric matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (es.eigenvalues().minCoeff() <= tol * scale)
    throw std::invalid_argument("metric matrix is not positive definite");
  return BilinearForm{static_cast<int>(m.rows()), m, FormRole::Metric};
}

inline LinearMap make_involution(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  const int dim = static_cast<int>(m.rows());
  if (max_abs(m * m - Matrix::Identity(dim, dim)) > tol)
    throw std::invalid_argument("map is not an involution (M^2 != I)");
  return LinearMap{dim, m, MapRole::Involution};
}

inline LinearMap make_acs(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  const int dim = static_cast<int>(m.rows());
  if (max_abs(m * m + Matrix::Identity(dim, dim)) > tol)
    throw std::invalid_argument("map is not an almost complex structure (M^2 != -I)");
  return LinearMap{dim, m, MapRole::Acs};
}

inline void require_same_dim(int a, int b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

/// phi*omega, the pullback (phi^T Omega phi) as a raw matrix.
inline Matrix pullback(const Matrix& omega, const Matrix& phi) {
  return phi.transpose() * omega * phi;
}

inline bool is_anti_symplectic(const BilinearForm& omega, const LinearMap& phi,
                               double tol = kDefaultTol) {
  const double scale = std::max(1.0, max_abs(omega.mat));
  return max_abs(pullback(omega.mat, phi.mat) + omega.mat) <= tol * scale;
}

inline bool preserves_form(const BilinearForm& omega, const LinearMap& psi,
                           double tol = kDefaultTol) {
  const double scale = std::max(1.0, max_abs(omega.mat));
  return max_abs(pullback(omega.mat, psi.mat) - omega.mat) <= tol * scale;
}

}  // namespace sympack::linalg
