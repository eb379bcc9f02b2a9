#pragma once

#include <functional>

#include <vector>

#include "curvlie/liealg.hpp"
#include "curvlie/matrix.hpp"
#include "curvlie/polynomial.hpp"

namespace curvlie {

/// Dense array with n^rank entries, first index slowest.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t n, std::size_t rank) : n_(n), rank_(rank), data_(ipow(n, rank), T(0)) {}

  std::size_t dim() const { return n_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool is_zero_tensor() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }
  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const auto& x : data_) c += !is_zero(x);
    return c;
  }
  /// Multi-index of a flat position.
  std::vector<std::size_t> unflatten(std::size_t pos) const {
    std::vector<std::size_t> idx(rank_);
    for (std::size_t r = rank_; r-- > 0;) {
      idx[r] = pos % n_;
      pos /= n_;
    }
    return idx;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  static std::size_t ipow(std::size_t n, std::size_t r) {
    std::size_t v = 1;
    while (r--) v *= n;
    return v;
  }
  std::size_t flat(std::initializer_list<std::size_t> idx) const {
    std::size_t p = 0;
    for (auto i : idx) p = p * n_ + i;
    return p;
  }

  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Exact evaluation over a field (Rational, QSqrt3, QuadExt).

/// omega(k, i, j) = 1/2 (-g_il g^mk c^l_jm - g_jl g^mk c^l_im + c^k_ij).
template <class T>
Tensor<T> connection_coefficients(const LieAlgebra& l, const Matrix<T>& g, const Matrix<T>& ginv) {
  std::size_t n = l.dim();
  if (g.rows() != n || !g.square()) throw Error(ErrorCode::InvalidArgument, "metric size does not match algebra");
  // h(i, j, m) = g_il c^l_jm
  Tensor<T> h(n, 3);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t q = 0; q < n; ++q) {
        const Rational& c = l.c(j, m, q);
        if (c.is_zero()) continue;
        T cq(c);
        for (std::size_t i = 0; i < n; ++i)
          if (!is_zero(g(i, q))) h(i, j, m) += g(i, q) * cq;
      }
  Tensor<T> w(n, 3);
  T half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(l.c(i, j, k));
        for (std::size_t m = 0; m < n; ++m) {
          if (is_zero(ginv(m, k))) continue;
          T s = h(i, j, m) + h(j, i, m);
          if (!is_zero(s)) acc -= ginv(m, k) * s;
        }
        w(k, i, j) = acc * half;
      }
  return w;
}

/// R(l, i, j, k) = omega^m_jk omega^l_im - omega^m_ik omega^l_jm - c^m_ij omega^l_mk.
template <class T>
Tensor<T> riemann_tensor(const LieAlgebra& la, const Tensor<T>& w) {
  std::size_t n = la.dim();
  Tensor<T> r(n, 4);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          T acc(0);
          for (std::size_t m = 0; m < n; ++m) {
            if (!is_zero(w(m, j, k)) && !is_zero(w(l, i, m))) acc += w(m, j, k) * w(l, i, m);
            if (!is_zero(w(m, i, k)) && !is_zero(w(l, j, m))) acc -= w(m, i, k) * w(l, j, m);
            const Rational& c = la.c(i, j, m);
            if (!c.is_zero() && !is_zero(w(l, m, k))) acc -= T(c) * w(l, m, k);
          }
          r(l, i, j, k) = acc;
        }
  return r;
}

/// Ric_ij = R^l_lij.
template <class T>
Matrix<T> ricci_tensor(const Tensor<T>& r) {
  std::size_t n = r.dim();
  Matrix<T> ric(n, n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) ric(i, j) += r(l, l, i, j);
  return ric;
}

/// (nabla R)(m, l, i, j, k) = omega^l_mn R^n_ijk - omega^n_mi R^l_njk
///                           - omega^n_mj R^l_ink - omega^n_mk R^l_ijn.
template <class T>
Tensor<T> cov_deriv_riemann(const Tensor<T>& w, const Tensor<T>& r) {
  std::size_t n = r.dim();
  Tensor<T> d(n, 5);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            T acc(0);
            for (std::size_t q = 0; q < n; ++q) {
              if (!is_zero(w(l, m, q)) && !is_zero(r(q, i, j, k))) acc += w(l, m, q) * r(q, i, j, k);
              if (!is_zero(w(q, m, i)) && !is_zero(r(l, q, j, k))) acc -= w(q, m, i) * r(l, q, j, k);
              if (!is_zero(w(q, m, j)) && !is_zero(r(l, i, q, k))) acc -= w(q, m, j) * r(l, i, q, k);
              if (!is_zero(w(q, m, k)) && !is_zero(r(l, i, j, q))) acc -= w(q, m, k) * r(l, i, j, q);
            }
            d(m, l, i, j, k) = acc;
          }
  return d;
}

/// R'(l, i, j, k) = (M^-1)^l_a R(a, b, c, d) M^b_i M^c_j M^d_k.
template <class T>
Tensor<T> pullback_curvature(const Tensor<T>& r, const Matrix<T>& m) {
  std::size_t n = r.dim();
  if (m.rows() != n || !m.square()) throw Error(ErrorCode::InvalidArgument, "pullback dimension mismatch");
  Matrix<T> minv = inverse(m);
  // Contract one slot at a time.
  Tensor<T> a(n, 4), b(n, 4);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t x = 0; x < n; ++x) {
      if (is_zero(minv(l, x))) continue;
      for (std::size_t p = 0; p < n * n * n; ++p) {
        const T& v = r.data()[x * n * n * n + p];
        if (!is_zero(v)) a.data()[l * n * n * n + p] += minv(l, x) * v;
      }
    }
  auto contract = [n, &m](const Tensor<T>& src, Tensor<T>& dst, std::size_t slot) {
    dst = Tensor<T>(n, 4);
    std::size_t stride = 1;
    for (std::size_t s = 3; s > slot; --s) stride *= n;
    for (std::size_t p = 0; p < src.size(); ++p) {
      const T& v = src.data()[p];
      if (is_zero(v)) continue;
      std::size_t x = (p / stride) % n;
      std::size_t base = p - x * stride;
      for (std::size_t i = 0; i < n; ++i)
        if (!is_zero(m(x, i))) dst.data()[base + i * stride] += v * m(x, i);
    }
  };
  contract(a, b, 1);
  contract(b, a, 2);
  contract(a, b, 3);
  return b;
}

/// Everything derived from one exact metric.
template <class T>
struct CurvatureData {
  Matrix<T> g;
  Matrix<T> ginv;
  Tensor<T> omega;
  Tensor<T> riemann;
  Matrix<T> ricci;
};

template <class T>
CurvatureData<T> compute_curvature(const LieAlgebra& l, const Matrix<T>& g) {
  if (!g.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "metric is not symmetric");
  CurvatureData<T> d;
  d.g = g;
  d.ginv = inverse(g);
  d.omega = connection_coefficients(l, g, d.ginv);
  d.riemann = riemann_tensor(l, d.omega);
  d.ricci = ricci_tensor(d.riemann);
  return d;
}

// ---------------------------------------------------------------------------
// Symbolic path over polynomial metric ansatze.

struct MetricAnsatz {
  Matrix<Polynomial> g;
  VarTablePtr vars;
  /// Variables that occur in the entries, ascending.
  std::vector<std::size_t> parameters() const;
};

/// Parses an n x n matrix of polynomial strings; checks symmetry.
MetricAnsatz make_ansatz(const std::vector<std::vector<std::string>>& entries, const VarTablePtr& vars);

/// Numerators over the shared denominator det g:
///   g^-1 = adj / det, omega = P / (2 det), R = N / (4 det^2), Ric = S / (4 det^2).
struct SymbolicCurvature {
  Polynomial det;
  Matrix<Polynomial> adj;
  Tensor<Polynomial> p;  // (k, i, j)
  Matrix<Polynomial> s;  // Ricci numerator
};

/// Throws Error(Singular) when det g vanishes identically. When given,
/// reduce is applied to every intermediate numerator (e.g. a normal form
/// modulo side relations of the parameters).
/// Only det, adj and p; s is left empty.
SymbolicCurvature symbolic_connection(const LieAlgebra& l, const MetricAnsatz& g,
                                      const std::function<Polynomial(const Polynomial&)>& reduce = {});
SymbolicCurvature symbolic_ricci(const LieAlgebra& l, const MetricAnsatz& g,
                                 const std::function<Polynomial(const Polynomial&)>& reduce = {});

Matrix<RationalFunction> inverse_metric(const MetricAnsatz& g);
Tensor<RationalFunction> connection_coefficients(const LieAlgebra& l, const MetricAnsatz& g);
Tensor<RationalFunction> riemann_tensor(const LieAlgebra& l, const MetricAnsatz& g);
Matrix<RationalFunction> ricci_tensor(const LieAlgebra& l, const MetricAnsatz& g);

/// Evaluates the ansatz entries at the given values.
template <class T>
Matrix<T> instantiate(const MetricAnsatz& g, const std::vector<std::optional<T>>& values) {
  return g.g.map([&](const Polynomial& p) { return evaluate<T>(p, values); });
}

}  // namespace curvlie
