#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlie/matrix.hpp"
#include "curvlie/rational.hpp"

namespace curvlie {

using Vector = std::vector<Rational>;

/// Finite-dimensional Lie algebra over Q given by structure constants
/// [F_i, F_j] = c^k_ij F_k. Indices are 0-based.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::size_t dim, std::vector<std::string> basis);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis() const { return basis_; }

  /// c^k_ij.
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[index(i, j, k)]; }
  /// Sets c^k_ij and c^k_ji = -value.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value);
  /// Sets one entry without touching c^k_ji.
  void set_raw(std::size_t i, std::size_t j, std::size_t k, const Rational& value) { c_[index(i, j, k)] = value; }

  Vector bracket(const Vector& x, const Vector& y) const;
  Vector basis_vector(std::size_t i) const;

  /// Normalized Killing form when one was fixed at construction (sl2 and
  /// sums of such); otherwise std::nullopt and killing_form() falls back to
  /// the trace form.
  const std::optional<Matrix<Rational>>& killing_override() const { return killing_; }
  void set_killing_override(Matrix<Rational> b) { killing_ = std::move(b); }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (k * dim_ + i) * dim_ + j; }

  std::size_t dim_ = 0;
  std::vector<std::string> basis_;
  std::vector<Rational> c_;
  std::optional<Matrix<Rational>> killing_;
};

/// sl(2,R) in the basis E1 = [[0,-1],[1,0]], E2 = [[0,1],[1,0]], E3 = [[1,0],[0,-1]].
LieAlgebra sl2();
/// The 2x2 matrices of E1, E2, E3.
std::vector<Matrix<Rational>> sl2_matrices();
LieAlgebra abelian(std::size_t n);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// N = (E2 - E1)/2 in sl2 coordinates.
Vector sl2_nilpotent();

/// Column j is [X, F_j].
Matrix<Rational> ad_matrix(const LieAlgebra& l, const Vector& x);
/// tr(ad_X ad_Y).
Matrix<Rational> trace_form(const LieAlgebra& l);
/// 4 tr(XY) on sl2, block diagonal on direct sums, trace form otherwise.
Matrix<Rational> killing_form(const LieAlgebra& l);

bool is_antisymmetric(const LieAlgebra& l);
bool satisfies_jacobi(const LieAlgebra& l);

struct Sl2Class {
  enum class Kind { Zero, Elliptic, Hyperbolic, Nilpotent };
  Kind kind = Kind::Zero;
  /// Square of the canonical parameter r (zero for Zero and Nilpotent).
  Rational r_squared;
  /// r itself when r_squared is a rational square.
  std::optional<Rational> r;
};

const char* to_string(Sl2Class::Kind kind);

/// X = a E1 + b E2 + c E3 is conjugate to r E1 (det > 0), r E3 (det < 0) or
/// N (det = 0, X != 0), where det = a^2 - b^2 - c^2 = r^2 up to sign.
Sl2Class sl2_canonical_form(const Vector& x);

/// Six-dimensional constants assembled blockwise from a three-dimensional
/// algebra: rows i, columns j in blocks [[1/3, -1/3], [1/3, -2/3]] c^k for
/// k < 3 and [[-2/3, -1/3], [1/3, 1/3]] c^(k-3) for k >= 3. The blocks are
/// taken literally; the result is not antisymmetric in general.
LieAlgebra induced_diagonal_structure_constants(const LieAlgebra& l);

/// [[2B, B], [B, 2B]].
Matrix<Rational> diagonal_pullback_metric(const Matrix<Rational>& b);

/// {"dim": n, "basis": [...], "c": [[i, j, k, "p/q"], ...]} with 1-based
/// indices, nonzero entries with i < j only.
std::string lie_algebra_to_json(const LieAlgebra& l);
LieAlgebra lie_algebra_from_json(std::string_view text);

/// Lie algebra automorphism of sl2 + sl2 given factorwise, optionally
/// followed by exchanging the factors.
template <class T>
struct Automorphism {
  Matrix<T> first = Matrix<T>::identity(3);
  Matrix<T> second = Matrix<T>::identity(3);
  bool swap = false;

  Matrix<T> matrix() const {
    Matrix<T> m(6, 6, T(0));
    m.set_block(0, 0, first);
    m.set_block(3, 3, second);
    if (!swap) return m;
    Matrix<T> p(6, 6, T(0));
    for (std::size_t i = 0; i < 3; ++i) {
      p(i, i + 3) = T(1);
      p(i + 3, i) = T(1);
    }
    return p * m;
  }
};

/// M^T eta M == eta and det M == 1 for eta = diag(-1, 1, 1).
template <class T>
bool check_so21(const Matrix<T>& m) {
  if (m.rows() != 3 || m.cols() != 3) return false;
  Matrix<T> eta(3, 3, T(0));
  eta(0, 0) = T(-1);
  eta(1, 1) = T(1);
  eta(2, 2) = T(1);
  return m.transpose() * eta * m == eta && field_determinant(m) == T(1);
}

}  // namespace curvlie
