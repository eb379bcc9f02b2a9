#include <doctest.h>

#include <random>

#include "curvlie/curvature.hpp"
#include "curvlie/einstein.hpp"

using namespace curvlie;

namespace {

using MQ = Matrix<QSqrt3>;

LieAlgebra sl2x2() { return direct_sum(sl2(), sl2()); }

MQ random_metric(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-4, 4);
  for (;;) {
    MQ g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        QSqrt3 v(Rational(d(rng), 1 + (d(rng) + 4) % 3), Rational(d(rng) % 2));
        g(i, j) = g(j, i) = v;
      }
    if (!field_determinant(g).is_zero()) return g;
  }
}

MQ to_qs3(const Matrix<Rational>& m) {
  return m.map([](const Rational& x) { return QSqrt3(x); });
}

// p/q == r/s as rational functions.
bool same_function(const RationalFunction& a, const RationalFunction& b) {
  return a.num() * b.den() == b.num() * a.den();
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("inverse metric") {
    auto v = std::make_shared<const VariableTable>(std::vector<std::string>{"d1", "d2", "d3"});
    MetricAnsatz diag = make_ansatz({{"d1", "0", "0"}, {"0", "d2", "0"}, {"0", "0", "d3"}}, v);
    auto inv = inverse_metric(diag);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i != j) {
          CHECK(inv(i, j).is_zero());
          continue;
        }
        CHECK(inv(i, i).num() == Polynomial(v, Rational(1)));
        CHECK(inv(i, i).den() == Polynomial::variable(v, i));
      }
    MetricAnsatz id = make_ansatz({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, v);
    auto one = inverse_metric(id);
    CHECK(one(0, 0).num() == Polynomial(v, Rational(1)));
    CHECK(one(0, 1).is_zero());
    CHECK(inverse(killing_metric()) == killing_metric());
    MetricAnsatz zero = make_ansatz({{"d1", "d1", "0"}, {"d1", "d1", "0"}, {"0", "0", "d3"}}, v);
    CHECK_THROWS_AS(inverse_metric(zero), Error);
    CHECK_THROWS_AS(make_ansatz({{"d1", "d2"}, {"d3", "d1"}}, v), Error);
  }

  TEST_CASE("bi-invariant metric has omega = c/2") {
    LieAlgebra l = sl2x2();
    auto d = compute_curvature(l, killing_metric());
    for (std::size_t k = 0; k < 6; ++k)
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(d.omega(k, i, j) == QSqrt3(l.c(i, j, k) / Rational(2)));
    CHECK(d.ricci == QSqrt3(-2) * killing_metric());
    CHECK_FALSE(d.riemann.is_zero_tensor());
  }

  TEST_CASE("abelian algebras are flat") {
    LieAlgebra l = abelian(3);
    std::mt19937 rng(1);
    auto d = compute_curvature(l, random_metric(rng, 3));
    CHECK(d.omega.is_zero_tensor());
    CHECK(d.riemann.is_zero_tensor());
    CHECK(d.ricci == MQ(3, 3, QSqrt3(0)));
    auto v = std::make_shared<const VariableTable>(std::vector<std::string>{"p", "q"});
    MetricAnsatz a = make_ansatz({{"p", "0", "1"}, {"0", "q", "0"}, {"1", "0", "p + q"}}, v);
    auto ric = ricci_tensor(l, a);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(ric(i, j).is_zero());
  }

  TEST_CASE("frozen values on sl2") {
    Matrix<QSqrt3> g = {{QSqrt3(2), QSqrt3(1), QSqrt3(0)},
                        {QSqrt3(1), QSqrt3(3), QSqrt3(Rational(1, 2))},
                        {QSqrt3(0), QSqrt3(Rational(1, 2)), QSqrt3(-1)}};
    auto d = compute_curvature(sl2(), g);
    MQ expect(3, 3, QSqrt3(0));
    expect(0, 0) = QSqrt3(8);
    expect(1, 1) = QSqrt3(-8);
    expect(2, 2) = QSqrt3(-8);
    CHECK(d.ricci == expect);
    CHECK(d.riemann(0, 1, 0, 1) == QSqrt3(Rational(98, 11)));
    CHECK(d.riemann(2, 0, 1, 2) == QSqrt3(Rational(-4, 11)));
  }

  TEST_CASE("frozen values on sl2 + sl2") {
    MQ g = killing_metric();
    g(0, 4) = g(4, 0) = QSqrt3(Rational(1, 3));
    g(1, 2) = g(2, 1) = QSqrt3(Rational(1, 2));
    g(3, 5) = g(5, 3) = QSqrt3(2);
    CHECK(field_determinant(g) == QSqrt3(Rational(25, 6)));
    auto d = compute_curvature(sl2x2(), g);
    CHECK(d.ricci(0, 0) == QSqrt3(Rational(-2, 45)));
    CHECK(d.ricci(0, 4) == QSqrt3(Rational(-46, 45)));
    CHECK(d.ricci(1, 2) == QSqrt3(Rational(-52, 15)));
    CHECK(d.ricci(3, 5) == QSqrt3(Rational(-52, 25)));
    CHECK(d.ricci(5, 5) == QSqrt3(Rational(54, 25)));
    CHECK(d.ricci(2, 3) == QSqrt3(0));
  }

  TEST_CASE("symbolic Ricci matches frozen rational functions") {
    MetricAnsatz a = table_template(make_case("(E1,2E1)"));
    auto ric = ricci_tensor(sl2x2(), a);
    auto rf = [&](const char* num, const char* den) {
      return rf_normalize(parse_polynomial(num, a.vars), parse_polynomial(den, a.vars));
    };
    CHECK(same_function(ric(0, 0), rf("2*(a1^2*y1^2 + x1^2*y2^2)", "y1^2*y2^2")));
    CHECK(same_function(ric(1, 1), rf("-2*(x1 + 2*y1)", "y1")));
    CHECK(same_function(ric(0, 3), rf("2*a1*(x1*y2^2 + x2*y1^2)", "y1^2*y2^2")));
  }

  TEST_CASE("symbolic and exact paths agree") {
    MetricAnsatz a = table_template(make_case("(E1,2E1)"));
    auto ric = ricci_tensor(sl2x2(), a);
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::optional<Rational>> vals(a.vars->size());
      for (auto p : a.parameters()) vals[p] = Rational(d(rng), 1 + trial);
      Matrix<Rational> g = instantiate<Rational>(a, vals);
      if (field_determinant(g).is_zero()) continue;
      auto exact = compute_curvature(sl2x2(), g);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
          Rational n = evaluate<Rational>(ric(i, j).num(), vals);
          Rational dd = evaluate<Rational>(ric(i, j).den(), vals);
          CHECK(n / dd == exact.ricci(i, j));
        }
    }
  }

  TEST_CASE("torsion-free on the full ansatz") {
    auto v = VariableTable::standard_order();
    // General symmetric 6x6 ansatz over the 21 metric variables.
    const char* e[6][6] = {{"x1", "u1", "v1", "a1", "b1", "c1"},     {"u1", "y1", "w1", "a2", "b2", "c2"},
                           {"v1", "w1", "z1", "a3", "b3", "c3"},     {"a1", "a2", "a3", "x2", "u2", "v2"},
                           {"b1", "b2", "b3", "u2", "y2", "w2"},     {"c1", "c2", "c3", "v2", "w2", "z2"}};
    std::vector<std::vector<std::string>> entries(6, std::vector<std::string>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) entries[i][j] = e[i][j];
    MetricAnsatz a = make_ansatz(entries, v);
    CHECK(a.parameters().size() == 21);
    LieAlgebra l = sl2x2();
    SymbolicCurvature sc = symbolic_connection(l, a);
    // omega = P / (2 det), so P^k_ij - P^k_ji = 2 det c^k_ij.
    for (std::size_t k = 0; k < 6; ++k)
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
          CHECK(sc.p(k, i, j) - sc.p(k, j, i) == sc.det.scaled(Rational(2) * l.c(i, j, k)));
  }

  TEST_CASE("identities at random exact metrics") {
    LieAlgebra l = sl2x2();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 3; ++trial) {
      MQ g = random_metric(rng, 6);
      auto d = compute_curvature(l, g);
      const auto& w = d.omega;
      const auto& r = d.riemann;
      bool torsion = true, compat = true, bianchi = true, anti = true;
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t i = 0; i < 6; ++i)
          for (std::size_t j = 0; j < 6; ++j) {
            if (!(w(a, i, j) - w(a, j, i) == QSqrt3(l.c(i, j, a)))) torsion = false;
            // g(nabla_a F_i, F_j) + g(F_i, nabla_a F_j) = 0
            QSqrt3 s(0);
            for (std::size_t m = 0; m < 6; ++m) s += w(m, a, i) * g(m, j) + w(m, a, j) * g(i, m);
            if (!s.is_zero()) compat = false;
            for (std::size_t k = 0; k < 6; ++k) {
              if (!(r(a, i, j, k) + r(a, j, k, i) + r(a, k, i, j)).is_zero()) bianchi = false;
              if (!(r(a, i, j, k) == -r(a, j, i, k))) anti = false;
            }
          }
      CHECK(torsion);
      CHECK(compat);
      CHECK(bianchi);
      CHECK(anti);
      CHECK(d.ricci.is_symmetric());
    }
  }

  TEST_CASE("scaling leaves omega and Ricci unchanged") {
    LieAlgebra l = sl2x2();
    std::mt19937 rng(5);
    MQ g = random_metric(rng, 6);
    auto d = compute_curvature(l, g);
    for (Rational c : {Rational(2), Rational(1, 3), Rational(-5, 2)}) {
      auto e = compute_curvature(l, QSqrt3(c) * g);
      CHECK(e.omega == d.omega);
      CHECK(e.ricci == d.ricci);
    }
  }

  TEST_CASE("signature") {
    CHECK(signature_index(killing_metric()) == Inertia{2, 4, 0});
    CHECK(signature_index(MQ::identity(4)) == Inertia{0, 4, 0});
    CHECK(signature_index(metric_g2()) == Inertia{2, 4, 0});
    CHECK(signature_index(metric_g1()) == Inertia{2, 4, 0});
    MQ hyp = {{QSqrt3(0), QSqrt3(1)}, {QSqrt3(1), QSqrt3(0)}};
    CHECK(signature_index(hyp) == Inertia{1, 1, 0});
    MQ deg = {{QSqrt3(1), QSqrt3(1)}, {QSqrt3(1), QSqrt3(1)}};
    CHECK(signature_index(deg) == Inertia{0, 1, 1});
    // 1 - sqrt3 < 0
    MQ irr = {{QSqrt3(Rational(1), Rational(-1))}};
    CHECK(signature_index(irr) == Inertia{1, 0, 0});
  }

  TEST_CASE("covariant derivative of curvature") {
    LieAlgebra l = sl2x2();
    for (const MQ& g : {killing_metric(), metric_g1()}) {
      auto d = compute_curvature(l, g);
      CHECK(cov_deriv_riemann(d.omega, d.riemann).is_zero_tensor());
    }
    auto d2 = compute_curvature(l, metric_g2());
    Tensor<QSqrt3> nr = cov_deriv_riemann(d2.omega, d2.riemann);
    CHECK(nr.nonzero_count() == 1296);
    CHECK(nr(0, 0, 0, 1, 5) == QSqrt3(Rational(5, 27)));
    CHECK(nr(0, 0, 0, 2, 4) == QSqrt3(Rational(-5, 27)));
    CHECK(nr(0, 0, 0, 4, 2) == QSqrt3(Rational(-1, 9)));
  }

  TEST_CASE("pullbacks") {
    LieAlgebra l = sl2x2();
    std::mt19937 rng(8);
    MQ g = random_metric(rng, 6);
    auto d = compute_curvature(l, g);
    MQ id = MQ::identity(6);
    CHECK(pullback_symmetric(g, id) == g);
    CHECK(pullback_curvature(d.riemann, id) == d.riemann);
    QSqrt3 c(Rational(3, 2));
    Tensor<QSqrt3> scaled = pullback_curvature(d.riemann, c * id);
    bool ok = true;
    for (std::size_t p = 0; p < scaled.size(); ++p)
      if (!(scaled.data()[p] == c * c * d.riemann.data()[p])) ok = false;
    CHECK(ok);
    CHECK_THROWS_AS(pullback_curvature(d.riemann, MQ(6, 6, QSqrt3(0))), Error);
  }

  TEST_CASE("isometry witness") {
    LieAlgebra l = sl2x2();
    MQ a = isometry_witness_a();
    CHECK(pullback_symmetric(killing_metric(), a) == metric_g1());
    CHECK(check_isometry_candidate(l, killing_metric(), metric_g1(), a));
    CHECK(check_isometry_candidate(l, killing_metric(), killing_metric(), MQ::identity(6)));
    CHECK_FALSE(check_isometry_candidate(l, killing_metric(), metric_g2(), a));
  }
}
