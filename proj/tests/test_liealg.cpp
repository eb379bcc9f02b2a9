#include <doctest.h>

#include <random>

#include "curvlie/liealg.hpp"

using namespace curvlie;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Matrix<Rational> mat3(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Rational> m(3, 3);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = Rational(x);
    ++i;
  }
  return m;
}

// E-coordinates (a, b, c) of a traceless 2x2 matrix [[c, b - a], [a + b, -c]].
Vector coords(const Matrix<Rational>& x) {
  return {(x(1, 0) - x(0, 1)) / Rational(2), (x(1, 0) + x(0, 1)) / Rational(2), x(0, 0)};
}

Matrix<Rational> from_coords(const Vector& v) {
  auto e = sl2_matrices();
  Matrix<Rational> m(2, 2, Rational(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(r, c) += v[i] * e[i](r, c);
  return m;
}

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("sl2 brackets") {
    LieAlgebra l = sl2();
    CHECK(l.bracket(l.basis_vector(0), l.basis_vector(1)) == vec({0, 0, -2}));
    CHECK(l.bracket(l.basis_vector(1), l.basis_vector(2)) == vec({2, 0, 0}));
    CHECK(l.bracket(l.basis_vector(0), l.basis_vector(2)) == vec({0, 2, 0}));
    Vector x = vec({3, -1, 2});
    CHECK(l.bracket(x, x) == vec({0, 0, 0}));
  }

  TEST_CASE("brackets agree with matrix commutators") {
    LieAlgebra l = sl2();
    auto e = sl2_matrices();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Matrix<Rational> comm = e[i] * e[j] - e[j] * e[i];
        CHECK(coords(comm) == l.bracket(l.basis_vector(i), l.basis_vector(j)));
      }
  }

  TEST_CASE("ad matrices") {
    LieAlgebra l = sl2();
    CHECK(ad_matrix(l, l.basis_vector(0)) == mat3({{0, 0, 0}, {0, 0, 2}, {0, -2, 0}}));
    CHECK(ad_matrix(l, sl2_nilpotent()) == mat3({{0, 0, 1}, {0, 0, -1}, {1, 1, 0}}));
    CHECK(ad_matrix(l, vec({0, 0, 0})) == Matrix<Rational>(3, 3, Rational(0)));
  }

  TEST_CASE("Killing forms") {
    CHECK(killing_form(sl2()) == mat3({{-8, 0, 0}, {0, 8, 0}, {0, 0, 8}}));
    CHECK(trace_form(sl2()) == killing_form(sl2()));
    CHECK(killing_form(abelian(4)) == Matrix<Rational>(4, 4, Rational(0)));
    LieAlgebra s = direct_sum(sl2(), sl2());
    Matrix<Rational> expect(6, 6, Rational(0));
    expect.set_block(0, 0, killing_form(sl2()));
    expect.set_block(3, 3, killing_form(sl2()));
    CHECK(killing_form(s) == expect);
    CHECK(trace_form(s) == expect);
  }

  TEST_CASE("direct sums") {
    LieAlgebra s = direct_sum(sl2(), sl2());
    CHECK(s.dim() == 6);
    CHECK(s.basis().size() == 6);
    CHECK(s.bracket(s.basis_vector(0), s.basis_vector(3)) == Vector(6, Rational(0)));
    Vector f3(6, Rational(0));
    f3[2] = Rational(-2);
    CHECK(s.bracket(s.basis_vector(0), s.basis_vector(1)) == f3);
    Vector f6(6, Rational(0));
    f6[5] = Rational(-2);
    CHECK(s.bracket(s.basis_vector(3), s.basis_vector(4)) == f6);
  }

  TEST_CASE("antisymmetry and Jacobi") {
    CHECK(is_antisymmetric(sl2()));
    CHECK(satisfies_jacobi(sl2()));
    LieAlgebra s = direct_sum(sl2(), sl2());
    CHECK(is_antisymmetric(s));
    CHECK(satisfies_jacobi(s));
    CHECK(satisfies_jacobi(abelian(3)));
    LieAlgebra bad = sl2();
    bad.set_raw(0, 1, 2, Rational(1));
    CHECK_FALSE(is_antisymmetric(bad));
  }

  TEST_CASE("Killing form is ad-invariant") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> d(-4, 4);
    LieAlgebra l = sl2();
    Matrix<Rational> b = killing_form(l);
    for (int t = 0; t < 30; ++t) {
      Vector x = vec({d(rng), d(rng), d(rng)});
      Matrix<Rational> ad = ad_matrix(l, x);
      CHECK(ad.transpose() * b + b * ad == Matrix<Rational>(3, 3, Rational(0)));
    }
  }

  TEST_CASE("canonical forms") {
    CHECK(sl2_canonical_form(sl2_nilpotent()).kind == Sl2Class::Kind::Nilpotent);
    Sl2Class e = sl2_canonical_form(vec({2, 0, 0}));
    CHECK(e.kind == Sl2Class::Kind::Elliptic);
    CHECK(e.r_squared == Rational(4));
    CHECK(*e.r == Rational(2));
    Sl2Class h = sl2_canonical_form(vec({0, 1, 0}));
    CHECK(h.kind == Sl2Class::Kind::Hyperbolic);
    CHECK(*h.r == Rational(1));
    CHECK(sl2_canonical_form(vec({0, 0, 0})).kind == Sl2Class::Kind::Zero);
    Sl2Class irr = sl2_canonical_form(vec({0, 1, 1}));
    CHECK(irr.kind == Sl2Class::Kind::Hyperbolic);
    CHECK(irr.r_squared == Rational(2));
    CHECK_FALSE(irr.r.has_value());
  }

  TEST_CASE("canonical form is invariant under conjugation") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int t = 0; t < 60; ++t) {
      Vector x = vec({d(rng), d(rng), d(rng)});
      Matrix<Rational> p(2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p(i, j) = Rational(d(rng));
      if (field_determinant(p).is_zero()) continue;
      Vector y = coords(p * from_coords(x) * inverse(p));
      Sl2Class a = sl2_canonical_form(x), b = sl2_canonical_form(y);
      CHECK(a.kind == b.kind);
      CHECK(a.r_squared == b.r_squared);
    }
  }

  TEST_CASE("induced diagonal structure constants") {
    LieAlgebra c = induced_diagonal_structure_constants(sl2());
    CHECK(c.dim() == 6);
    CHECK(c.c(1, 2, 0) == Rational(2, 3));
    // Bottom-right block of the k < 3 part: -2/3 c.
    CHECK(c.c(4, 5, 0) == Rational(-4, 3));
    // k >= 3, top-left block: -2/3 c.
    CHECK(c.c(1, 2, 3) == Rational(-4, 3));
    CHECK(induced_diagonal_structure_constants(abelian(3)) == abelian(6));
    // The blocks are used as displayed; their off-diagonal parts differ, so
    // the result is not antisymmetric.
    CHECK_FALSE(is_antisymmetric(c));
  }

  TEST_CASE("diagonal pullback metric") {
    Matrix<Rational> b = killing_form(sl2());
    Matrix<Rational> m = diagonal_pullback_metric(b);
    CHECK(m.block(0, 0, 3, 3) == mat3({{-16, 0, 0}, {0, 16, 0}, {0, 0, 16}}));
    CHECK(m.block(0, 3, 3, 3) == b);
    CHECK(m.block(3, 0, 3, 3) == b);
    CHECK(m.block(3, 3, 3, 3) == mat3({{-16, 0, 0}, {0, 16, 0}, {0, 0, 16}}));
    CHECK(diagonal_pullback_metric(Matrix<Rational>(3, 3, Rational(0))) == Matrix<Rational>(6, 6, Rational(0)));
    Matrix<Rational> s = mat3({{1, 2, 3}, {2, -1, 5}, {3, 5, 7}});
    CHECK(diagonal_pullback_metric(s).is_symmetric());
  }

  TEST_CASE("structure constant JSON round trip") {
    LieAlgebra s = direct_sum(sl2(), sl2());
    LieAlgebra back = lie_algebra_from_json(lie_algebra_to_json(s));
    CHECK(back == s);
    CHECK_THROWS_AS(lie_algebra_from_json("{\"dim\": 2, \"c\": [[1, 3, 1, \"1\"]]}"), Error);
    CHECK_THROWS_AS(lie_algebra_from_json("not json"), Error);
  }

  TEST_CASE("SO(2,1) membership") {
    CHECK(check_so21(Matrix<Rational>::identity(3)));
    CHECK_FALSE(check_so21(mat3({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})));
    // Boost in the (E1, E2) plane: cosh = 5/4, sinh = 3/4.
    Matrix<Rational> boost(3, 3, Rational(0));
    boost(0, 0) = boost(1, 1) = Rational(5, 4);
    boost(0, 1) = boost(1, 0) = Rational(3, 4);
    boost(2, 2) = Rational(1);
    CHECK(check_so21(boost));
    CHECK_FALSE(check_so21(Matrix<Rational>::identity(2)));
  }
}
