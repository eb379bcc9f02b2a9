#include "curvlie/liealg.hpp"

#include <json.hpp>

namespace curvlie {

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> basis)
    : dim_(dim), basis_(std::move(basis)), c_(dim * dim * dim) {
  if (basis_.empty())
    for (std::size_t i = 0; i < dim_; ++i) basis_.push_back("F" + std::to_string(i + 1));
  if (basis_.size() != dim_) throw Error(ErrorCode::InvalidArgument, "basis name count does not match dimension");
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw Error(ErrorCode::InvalidArgument, "structure constant index out of range");
  if (i == j && !value.is_zero()) throw Error(ErrorCode::InvalidArgument, "[F_i, F_i] must vanish");
  c_[index(i, j, k)] = value;
  c_[index(j, i, k)] = -value;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error(ErrorCode::InvalidArgument, "element has wrong length");
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (!c(i, j, k).is_zero()) out[k] += xy * c(i, j, k);
    }
  }
  return out;
}

Vector LieAlgebra::basis_vector(std::size_t i) const {
  Vector v(dim_);
  v.at(i) = Rational(1);
  return v;
}

std::vector<Matrix<Rational>> sl2_matrices() {
  return {Matrix<Rational>{{0, -1}, {1, 0}}, Matrix<Rational>{{0, 1}, {1, 0}},
          Matrix<Rational>{{1, 0}, {0, -1}}};
}

LieAlgebra sl2() {
  LieAlgebra l(3, {"E1", "E2", "E3"});
  l.set_bracket(0, 1, 2, Rational(-2));
  l.set_bracket(0, 2, 1, Rational(2));
  l.set_bracket(1, 2, 0, Rational(2));
  auto e = sl2_matrices();
  Matrix<Rational> b(3, 3, Rational(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Matrix<Rational> p = e[i] * e[j];
      b(i, j) = Rational(4) * (p(0, 0) + p(1, 1));
    }
  l.set_killing_override(std::move(b));
  return l;
}

Vector sl2_nilpotent() { return {Rational(-1, 2), Rational(1, 2), Rational(0)}; }

LieAlgebra abelian(std::size_t n) { return LieAlgebra(n, {}); }

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  std::size_t n = a.dim(), m = b.dim();
  // Summands lose their own names: the sum is spanned by F1, F2, ...
  LieAlgebra s(n + m, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) s.set_raw(i, j, k, a.c(i, j, k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) s.set_raw(n + i, n + j, n + k, b.c(i, j, k));
  if (a.killing_override() || b.killing_override()) {
    Matrix<Rational> kf(n + m, n + m, Rational(0));
    kf.set_block(0, 0, killing_form(a));
    kf.set_block(n, n, killing_form(b));
    s.set_killing_override(std::move(kf));
  }
  return s;
}

Matrix<Rational> ad_matrix(const LieAlgebra& l, const Vector& x) {
  std::size_t n = l.dim();
  if (x.size() != n) throw Error(ErrorCode::InvalidArgument, "element has wrong length");
  Matrix<Rational> m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!l.c(i, j, k).is_zero()) m(k, j) += x[i] * l.c(i, j, k);
  }
  return m;
}

Matrix<Rational> trace_form(const LieAlgebra& l) {
  std::size_t n = l.dim();
  std::vector<Matrix<Rational>> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(ad_matrix(l, l.basis_vector(i)));
  Matrix<Rational> b(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational t;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) t += ads[i](p, q) * ads[j](q, p);
      b(i, j) = t;
      b(j, i) = t;
    }
  return b;
}

Matrix<Rational> killing_form(const LieAlgebra& l) {
  if (l.killing_override()) return *l.killing_override();
  return trace_form(l);
}

bool is_antisymmetric(const LieAlgebra& l) {
  std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(l.c(i, j, k) == -l.c(j, i, k))) return false;
  return true;
}

bool satisfies_jacobi(const LieAlgebra& l) {
  std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
          Rational s;
          for (std::size_t m = 0; m < n; ++m)
            s += l.c(i, j, m) * l.c(m, k, q) + l.c(j, k, m) * l.c(m, i, q) + l.c(k, i, m) * l.c(m, j, q);
          if (!s.is_zero()) return false;
        }
  return true;
}

const char* to_string(Sl2Class::Kind kind) {
  switch (kind) {
    case Sl2Class::Kind::Zero: return "zero";
    case Sl2Class::Kind::Elliptic: return "elliptic";
    case Sl2Class::Kind::Hyperbolic: return "hyperbolic";
    case Sl2Class::Kind::Nilpotent: return "nilpotent";
  }
  return "?";
}

Sl2Class sl2_canonical_form(const Vector& x) {
  if (x.size() != 3) throw Error(ErrorCode::InvalidArgument, "sl2 element needs three coordinates");
  Sl2Class out;
  Rational det = x[0] * x[0] - x[1] * x[1] - x[2] * x[2];
  if (det.sign() > 0) {
    out.kind = Sl2Class::Kind::Elliptic;
    out.r_squared = det;
  } else if (det.sign() < 0) {
    out.kind = Sl2Class::Kind::Hyperbolic;
    out.r_squared = -det;
  } else {
    bool zero = x[0].is_zero() && x[1].is_zero() && x[2].is_zero();
    out.kind = zero ? Sl2Class::Kind::Zero : Sl2Class::Kind::Nilpotent;
    return out;
  }
  Rational r;
  if (rational_sqrt(out.r_squared, r)) out.r = r;
  return out;
}

LieAlgebra induced_diagonal_structure_constants(const LieAlgebra& l) {
  if (l.dim() != 3) throw Error(ErrorCode::InvalidArgument, "induced constants need a three-dimensional algebra");
  static const Rational low[2][2] = {{Rational(1, 3), Rational(-1, 3)}, {Rational(1, 3), Rational(-2, 3)}};
  static const Rational high[2][2] = {{Rational(-2, 3), Rational(-1, 3)}, {Rational(1, 3), Rational(1, 3)}};
  LieAlgebra out(6, {});
  for (std::size_t k = 0; k < 6; ++k) {
    const auto& blocks = k < 3 ? low : high;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        out.set_raw(i, j, k, blocks[i / 3][j / 3] * l.c(i % 3, j % 3, k % 3));
  }
  return out;
}

Matrix<Rational> diagonal_pullback_metric(const Matrix<Rational>& b) {
  if (!b.square()) throw Error(ErrorCode::InvalidArgument, "metric block must be square");
  std::size_t n = b.rows();
  Matrix<Rational> two_b = Rational(2) * b;
  Matrix<Rational> out(2 * n, 2 * n, Rational(0));
  out.set_block(0, 0, two_b);
  out.set_block(0, n, b);
  out.set_block(n, 0, b);
  out.set_block(n, n, two_b);
  return out;
}

std::string lie_algebra_to_json(const LieAlgebra& l) {
  nlohmann::ordered_json j;
  j["dim"] = l.dim();
  j["basis"] = l.basis();
  auto c = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t jj = i + 1; jj < l.dim(); ++jj)
      for (std::size_t k = 0; k < l.dim(); ++k)
        if (!l.c(i, jj, k).is_zero()) c.push_back({i + 1, jj + 1, k + 1, l.c(i, jj, k).str()});
  j["c"] = c;
  return j.dump();
}

LieAlgebra lie_algebra_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("algebra JSON: ") + e.what());
  }
  try {
    auto dim = j.at("dim").get<std::size_t>();
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "algebra dimension must be positive");
    std::vector<std::string> names;
    if (j.contains("basis")) names = j.at("basis").get<std::vector<std::string>>();
    LieAlgebra l(dim, names);
    for (const auto& e : j.at("c")) {
      if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::Parse, "structure constant entry must be [i, j, k, value]");
      auto i = e[0].get<std::size_t>(), jj = e[1].get<std::size_t>(), k = e[2].get<std::size_t>();
      if (i < 1 || jj < 1 || k < 1 || i > dim || jj > dim || k > dim)
        throw Error(ErrorCode::InvalidArgument, "structure constant index out of range");
      Rational v = e[3].is_string() ? Rational::parse(e[3].get<std::string>()) : Rational(e[3].get<long>());
      l.set_bracket(i - 1, jj - 1, k - 1, v);
    }
    // Algebras that are a sum of sl2 copies keep the 4 tr(XY) normalization.
    if (dim % 3 == 0) {
      LieAlgebra s = sl2();
      for (std::size_t blocks = 1; blocks < dim / 3; ++blocks) s = direct_sum(s, sl2());
      if (s == l) l.set_killing_override(killing_form(s));
    }
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("algebra JSON: ") + e.what());
  }
}

}  // namespace curvlie
