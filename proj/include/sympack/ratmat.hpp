#pragma once

#include "sympack/rational.hpp"

#include <vector>

namespace sympack {

/// Dense matrix over exact rationals. Sized for the small systems that
/// appear here (dim <= 20); plain Gauss-Jordan is plenty.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("ratmat: size mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  RatMat operator+(const RatMat& o) const {
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  RatMat operator-() const {
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
  }

  RatMat transpose() const {
    RatMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  RatMat inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("ratmat: not square");
    const int n = rows_;
    RatMat aug(*this);
    RatMat inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (aug(r, col) != 0) { pivot = r; break; }
      if (pivot < 0) throw std::invalid_argument("ratmat: singular matrix");
      aug.swap_rows(col, pivot);
      inv.swap_rows(col, pivot);
      const Rat d = aug(col, col);
      aug.scale_row(col, Rat(1) / d);
      inv.scale_row(col, Rat(1) / d);
      for (int r = 0; r < n; ++r) {
        if (r == col || aug(r, col) == 0) continue;
        const Rat f = aug(r, col);
        aug.add_row(r, col, -f);
        inv.add_row(r, col, -f);
      }
    }
    return inv;
  }

  /// Basis of the null space, one column vector per free variable, chosen
  /// deterministically from the reduced row echelon form.
  std::vector<std::vector<Rat>> kernel_basis() const {
    RatMat m(*this);
    const int nr = rows_, nc = cols_;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
      int pivot = -1;
      for (int r = row; r < nr; ++r)
        if (m(r, col) != 0) { pivot = r; break; }
      if (pivot < 0) continue;
      m.swap_rows(row, pivot);
      m.scale_row(row, Rat(1) / m(row, col));
      for (int r = 0; r < nr; ++r) {
        if (r == row || m(r, col) == 0) continue;
        m.add_row(r, row, -m(r, col));
      }
      pivot_col.push_back(col);
      ++row;
    }
    std::vector<bool> is_pivot(nc, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < nc; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rat> v(nc);
      v[free] = 1;
      for (size_t pr = 0; pr < pivot_col.size(); ++pr)
        v[pivot_col[pr]] = -m(static_cast<int>(pr), free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  int rank() const {
    RatMat m(*this);
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pivot = -1;
      for (int r = row; r < rows_; ++r)
        if (m(r, col) != 0) { pivot = r; break; }
      if (pivot < 0) continue;
      m.swap_rows(row, pivot);
      for (int r = row + 1; r < rows_; ++r) {
        if (m(r, col) == 0) continue;
        const Rat f = m(r, col) / m(row, col);
        for (int j = col; j < cols_; ++j) m(r, j) -= f * m(row, j);
      }
      ++row;
    }
    return row;
  }

  Rat det() const {
    if (rows_ != cols_) throw std::invalid_argument("ratmat: not square");
    RatMat m(*this);
    Rat d = 1;
    for (int col = 0; col < cols_; ++col) {
      int pivot = -1;
      for (int r = col; r < rows_; ++r)
        if (m(r, col) != 0) { pivot = r; break; }
      if (pivot < 0) return Rat(0);
      if (pivot != col) { m.swap_rows(col, pivot); d = -d; }
      d *= m(col, col);
      for (int r = col + 1; r < rows_; ++r) {
        if (m(r, col) == 0) continue;
        const Rat f = m(r, col) / m(col, col);
        for (int j = col; j < cols_; ++j) m(r, j) -= f * m(col, j);
      }
    }
    return d;
  }

 private:
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void scale_row(int i, const Rat& f) {
    for (int c = 0; c < cols_; ++c) (*this)(i, c) *= f;
  }
  /// row i += f * row j
  void add_row(int i, int j, const Rat& f) {
    for (int c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

/// Standard symplectic Gram matrix over rationals, blocks [[0, I], [-I, 0]].
inline RatMat rat_omega0(int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("dimension must be a positive even integer");
  const int n = dim / 2;
  RatMat m(dim, dim);
  for (int i = 0; i < n; ++i) {
    m(i, n + i) = 1;
    m(n + i, i) = -1;
  }
  return m;
}

/// Conjugation diag(I, -I) over rationals.
inline RatMat rat_conjugation(int dim) {
  const int n = dim / 2;
  RatMat m = RatMat::identity(dim);
  for (int i = n; i < dim; ++i) m(i, i) = -1;
  return m;
}

}  // namespace sympack
