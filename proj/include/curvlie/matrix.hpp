#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "curvlie/error.hpp"

namespace curvlie {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  Matrix operator-() const {
    Matrix c = *this;
    for (auto& x : c.data_) x = -x;
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = s * x;
    return c;
  }
  friend Matrix operator*(const Matrix& a, const T& s) { return s * a; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

// Determinant of the submatrix on the given rows and the columns in col_mask,
// by Laplace expansion along the first listed row with memoisation on column
// subsets. Division-free, so it works over any commutative ring.
template <class T>
T minor_det(const Matrix<T>& m, const std::vector<std::size_t>& rows, std::size_t col_mask,
            std::size_t depth, std::vector<std::vector<std::pair<bool, T>>>& memo) {
  if (depth == rows.size()) return T(1);
  auto& slot = memo[depth][col_mask];
  if (slot.first) return slot.second;
  T acc(0);
  int parity = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!(col_mask >> c & 1u)) continue;
    const T& entry = m(rows[depth], c);
    if (!is_zero(entry)) {
      T sub = minor_det(m, rows, col_mask & ~(std::size_t{1} << c), depth + 1, memo);
      if (!is_zero(sub)) {
        T term = entry * sub;
        if (parity) acc -= term; else acc += term;
      }
    }
    parity ^= 1;
  }
  slot = {true, acc};
  return acc;
}

}  // namespace detail

/// Division-free determinant; suitable for polynomial entries (n <= 16).
template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  std::size_t n = m.rows();
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  std::vector<std::vector<std::pair<bool, T>>> memo(n + 1, std::vector<std::pair<bool, T>>(std::size_t{1} << n));
  return detail::minor_det(m, rows, (std::size_t{1} << n) - 1, 0, memo);
}

/// Classical adjugate, adj(m) * m = det(m) * I; division-free.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  std::size_t n = m.rows();
  Matrix<T> adj(n, n, T(0));
  std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != i) rows.push_back(r);
    std::vector<std::vector<std::pair<bool, T>>> memo(n, std::vector<std::pair<bool, T>>(std::size_t{1} << n));
    for (std::size_t j = 0; j < n; ++j) {
      T cof = detail::minor_det(m, rows, full & ~(std::size_t{1} << j), 0, memo);
      if ((i + j) % 2) cof = -cof;
      adj(j, i) = cof;
    }
  }
  return adj;
}

/// Gauss-Jordan inverse over a field. Throws Error(Singular).
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> a = m, inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a(piv, col))) ++piv;
    if (piv == n) throw Error(ErrorCode::Singular, "matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Field determinant by elimination.
template <class T>
T field_determinant(const Matrix<T>& m) {
  std::size_t n = m.rows();
  Matrix<T> a = m;
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a(piv, col))) ++piv;
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      T f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

struct Inertia {
  std::size_t negatives = 0;
  std::size_t positives = 0;
  std::size_t zeros = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia of a symmetric matrix over an ordered field, by
/// symmetric congruence elimination with exact sign decisions.
template <class T>
Inertia signature_index(const Matrix<T>& m) {
  if (!m.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "signature of non-symmetric matrix");
  std::size_t n = m.rows();
  Matrix<T> a = m;
  Inertia out;
  std::size_t k = 0;
  while (k < n) {
    std::size_t piv = k;
    while (piv < n && is_zero(a(piv, piv))) ++piv;
    if (piv == n) {
      // No diagonal pivot: use an off-diagonal entry, a_ii = a_jj = 0 and
      // a_ij != 0, and replace e_i by e_i + e_j so the new a_ii = 2 a_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!is_zero(a(i, j))) { pi = i; pj = j; break; }
      if (pi == n) {
        out.zeros += n - k;
        break;
      }
      for (std::size_t j = 0; j < n; ++j) a(pi, j) += a(pj, j);
      for (std::size_t i = 0; i < n; ++i) a(i, pi) += a(i, pj);
      piv = pi;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, piv), a(i, k));
    }
    T p = a(k, k);
    if (sign(p) < 0) ++out.negatives; else ++out.positives;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_zero(a(r, k))) continue;
      T f = a(r, k) / p;
      for (std::size_t j = k; j < n; ++j) a(r, j) -= f * a(k, j);
      for (std::size_t i = k; i < n; ++i) a(i, r) -= f * a(i, k);
    }
    ++k;
  }
  return out;
}

/// M^T T M.
template <class T>
Matrix<T> pullback_symmetric(const Matrix<T>& form, const Matrix<T>& m) {
  if (!form.square() || form.rows() != m.rows())
    throw Error(ErrorCode::InvalidArgument, "pullback dimension mismatch");
  return m.transpose() * form * m;
}

}  // namespace curvlie
