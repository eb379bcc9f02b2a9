#include <doctest.h>

#include <random>

#include "curvlie/einstein.hpp"

using namespace curvlie;

namespace {

using MQ = Matrix<QSqrt3>;
using MX = Matrix<QuadExt>;

LieAlgebra sl2x2() { return direct_sum(sl2(), sl2()); }

MX to_quad(const MQ& m) {
  return m.map([](const QSqrt3& x) { return QuadExt(x); });
}

MQ eta() { return {{QSqrt3(-1), QSqrt3(0), QSqrt3(0)}, {QSqrt3(0), QSqrt3(1), QSqrt3(0)}, {QSqrt3(0), QSqrt3(0), QSqrt3(1)}}; }

const std::vector<FamilyId> kFamilies = {FamilyId::E1E1_1, FamilyId::E1E1_2, FamilyId::E3E3_1,
                                         FamilyId::E3E3_2, FamilyId::NN_1,   FamilyId::NN_2};

const QSqrt3 kLambda2(Rational(0), Rational(-10, 9));  // -10/(3 sqrt 3)

}  // namespace

TEST_SUITE("einstein") {
  TEST_CASE("generator catalog") {
    auto cat = generator_catalog();
    REQUIRE(cat.size() == 7);
    CHECK(cat[2].label == "(E1,N)");
    CHECK(cat[5].label == "(N,0)");
    GeneratorCase e10 = make_case("(E1,rE1)", Rational(0));
    CHECK(e10.row_label() == "(E1,0)");
    CHECK(e10.uses_q_block());
    CHECK(make_case("(E1,E1)").row_label() == "(E1,E1)");
    CHECK(make_case("(E1,2E1)").row_label() == "(E1,rE1)");
    CHECK(make_case("(E1, 2E3)").family == 2);
    CHECK_THROWS_AS(make_case("(E2,E1)"), Error);
    CHECK_THROWS_AS(make_case("(E1,rE1)").element(), Error);
    CHECK_THROWS_AS(make_case("(E1,rE3)", Rational(-1)), Error);
  }

  TEST_CASE("invariant spaces") {
    LieAlgebra s = sl2();
    auto e1 = invariant_tensor_space(s, s.basis_vector(0));
    CHECK(e1.size() == 2);
    for (const auto& g : e1) {
      CHECK(g(0, 1).is_zero());
      CHECK(g(0, 2).is_zero());
      CHECK(g(1, 2).is_zero());
      CHECK(g(1, 1) == g(2, 2));
    }
    LieAlgebra l = sl2x2();
    CHECK(invariant_tensor_space(l, Vector(6, Rational(0))).size() == 21);

    const std::map<std::string, std::size_t> dims = {
        {"(E1,2E1)", 5}, {"(E1,E1)", 7}, {"(E1,0)", 11}, {"(E1,2E3)", 5}, {"(E1,N)", 5}, {"(E3,2E3)", 5},
        {"(E3,E3)", 7},  {"(E3,0)", 11}, {"(E3,N)", 5},  {"(N,0)", 11},  {"(N,N)", 7}};
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> d(-6, 6);
    for (const auto& c : table_rows()) {
      CAPTURE(c.label);
      auto basis = invariant_tensor_space(l, c.element());
      CHECK(basis.size() == dims.at(c.label));
      for (const auto& g : basis) CHECK(is_invariant(l, c.element(), g));
      for (int q = 1; q <= (c.uses_q_block() ? 4 : 1); ++q) {
        MetricAnsatz a = table_template(c, q);
        for (int trial = 0; trial < 3; ++trial) {
          std::vector<std::optional<Rational>> vals(a.vars->size());
          for (auto p : a.parameters()) vals[p] = Rational(d(rng), 1 + trial);
          CHECK(is_invariant(l, c.element(), instantiate<Rational>(a, vals)));
        }
      }
    }
  }

  TEST_CASE("Q blocks") {
    auto v = q_block_variables();
    Matrix<Polynomial> q1 = q_block_ansatz(1);
    CHECK(q1(0, 0) == Polynomial::variable(v, "x"));
    CHECK(q1(1, 1) == Polynomial::variable(v, "y"));
    CHECK(q1(2, 2) == Polynomial::variable(v, "z"));
    CHECK(q1(0, 1).is_zero());
    for (int i = 1; i <= 5; ++i) CHECK(q_block_ansatz(i).is_symmetric());
    bool uses_s = false;
    Matrix<Polynomial> q5 = q_block_ansatz(5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) uses_s = uses_s || q5(i, j).contains_variable(v->require("s"));
    CHECK(uses_s);
    CHECK_THROWS_AS(q_block_ansatz(6), Error);
  }

  TEST_CASE("Einstein system assembly") {
    LieAlgebra l = sl2x2();
    auto v = einstein_variables();
    std::vector<std::vector<std::string>> b8(6, std::vector<std::string>(6, "0"));
    for (int i = 0; i < 6; ++i) b8[i][i] = (i % 3 == 0) ? "-1" : "1";
    MetricAnsatz a = make_ansatz(b8, v);
    EinsteinSystem sys = assemble_einstein_system(l, a, 1);
    CHECK(sys.equations.size() == 21);
    CHECK(sys.all().size() == 22);
    std::map<std::string, QSqrt3> at = {{"l", QSqrt3(-2)}};
    for (const auto& f : sys.all()) CHECK(poly_eval(f, at).is_zero());
    at["l"] = QSqrt3(-3);
    bool all_zero = true;
    for (const auto& f : sys.equations) all_zero = all_zero && poly_eval(f, at).is_zero();
    CHECK_FALSE(all_zero);

    // Abelian: Ric = 0, so each equation is a multiple of l times g_ij.
    std::vector<std::vector<std::string>> gen = {{"x1", "u1", "0"}, {"u1", "y1", "0"}, {"0", "0", "z1"}};
    EinsteinSystem ab = assemble_einstein_system(abelian(3), make_ansatz(gen, v), 1);
    std::size_t lv = v->require("l");
    for (const auto& f : ab.equations) {
      CHECK(f.coefficient_in(lv, 0).is_zero());
      CHECK(f.degree_in(lv) <= 1);
    }
  }

  TEST_CASE("five-parameter cases give only the Killing metric") {
    for (const char* label : {"(E1,2E1)", "(E1,2E3)", "(E1,N)", "(E3,2E3)", "(E3,N)"}) {
      CAPTURE(label);
      CaseResult r = solve_case(make_case(label));
      CHECK(r.solved());
      REQUIRE(r.solutions.size() == 1);
      const auto& s = r.solutions[0];
      CHECK(s.name == "B/8");
      CHECK(s.lambda == QSqrt3(-2));
      CHECK(s.det == QuadExt(1));
      CHECK(s.index == 2);
      CHECK(s.verified);
    }
  }

  TEST_CASE("other r samples") {
    for (Rational r : {Rational(3), Rational(1, 2)}) {
      CaseResult res = solve_case(make_case("(E1,rE1)", r));
      CHECK(res.solved());
      REQUIRE(res.solutions.size() == 1);
      CHECK(res.solutions[0].name == "B/8");
    }
  }

  TEST_CASE("negative determinant sign has no solutions in the five-parameter rows") {
    SolveOptions o;
    o.det_sign = -1;
    CaseResult r = solve_case(make_case("(E1,2E1)"), o);
    CHECK(r.solved());
    CHECK(r.solutions.empty());
  }

  TEST_CASE("verification") {
    LieAlgebra l = sl2x2();
    CHECK(verify_einstein(l, killing_metric(), QSqrt3(-2)));
    CHECK_FALSE(verify_einstein(l, killing_metric(), QSqrt3(-3)));
    CHECK(verify_einstein(l, metric_g1(), QSqrt3(-2)));
    CHECK(verify_einstein(l, metric_g2(), kLambda2));
    CHECK(kLambda2 == QSqrt3(-10) / (QSqrt3(3) * QSqrt3::sqrt3()));
    CHECK_THROWS_AS(verify_einstein(l, MQ(6, 6, QSqrt3(0)), QSqrt3(0)), Error);
  }

  TEST_CASE("scaling law") {
    LieAlgebra l = sl2x2();
    for (Rational c : {Rational(2), Rational(1, 3)}) {
      QSqrt3 cq(c);
      for (const auto& [g, lam] : {std::pair{killing_metric(), QSqrt3(-2)}, std::pair{metric_g2(), kLambda2}}) {
        CHECK(verify_einstein(l, cq * g, lam / cq));
        CHECK_FALSE(verify_einstein(l, cq * g, lam * cq * cq));
        CHECK_FALSE(verify_einstein(l, cq * g, lam));
      }
    }
  }

  TEST_CASE("negation") {
    SolutionRecord s;
    s.case_label = "(E1,2E1)";
    s.metric = to_quad(killing_metric());
    s.lambda = QSqrt3(-2);
    finalize_record(s);
    CHECK(s.index == 2);
    CHECK(s.verified);
    SolutionRecord n = negate_metric(s);
    CHECK(n.metric == to_quad(QSqrt3(-1) * killing_metric()));
    CHECK(n.lambda == QSqrt3(2));
    CHECK(n.index == 4);
    CHECK(n.det == s.det);
    CHECK(n.verified);
    CHECK(known_metric_name(n.metric) == "-B/8");
    SolutionRecord back = negate_metric(n);
    CHECK(back.metric == s.metric);
    CHECK(back.lambda == s.lambda);
    CHECK(back.index == s.index);
  }

  TEST_CASE("SO(2,1) and the orbit matrices") {
    CHECK(check_so21(MQ::identity(3)));
    CHECK_FALSE(check_so21(MQ{{QSqrt3(1), QSqrt3(0), QSqrt3(0)},
                              {QSqrt3(0), QSqrt3(1), QSqrt3(0)},
                              {QSqrt3(0), QSqrt3(0), QSqrt3(-1)}}));
    for (Rational c : {Rational(0), Rational(1), Rational(-2), Rational(3, 7)}) {
      CAPTURE(c.str());
      CHECK(check_so21(orbit_t1(c)));
      CHECK(check_so21(orbit_t2(c)));
      // With the transpose and the sign/eta bookkeeping made explicit, the
      // products are the identity and identity/sqrt3.
      MQ m1 = QSqrt3(-1) * orbit_m1(c) * eta();
      MQ m2 = QSqrt3(-1) * orbit_m2(c) * eta();
      CHECK(orbit_t1(c).transpose() * m1 == MQ::identity(3));
      CHECK(orbit_t2(c).transpose() * m2 == (QSqrt3(1) / QSqrt3::sqrt3()) * MQ::identity(3));
    }
    // The products exactly as displayed do not give the identity, already at c1 = 0.
    CHECK_FALSE(orbit_t1(Rational(0)) * orbit_m1(Rational(0)) == MQ::identity(3));
  }

  TEST_CASE("family members and witnesses") {
    LieAlgebra l = sl2x2();
    for (FamilyId id : kFamilies) {
      CAPTURE(to_string(id));
      CHECK(verify_family_symbolic(id));
      auto grid = family_grid(id, family_samples(id));
      CHECK(grid.size() == (family_has_branches(id) ? 8u : 4u));
      for (const auto& s : grid) {
        CHECK(s.verified);
        CHECK(s.det == QuadExt(1));
        CHECK(s.index == 2);
        CHECK(s.lambda == family_lambda(id));
      }
      for (int k : {0, 1})
        for (const Rational& p : family_samples(id))
          for (int br : family_has_branches(id) ? std::vector<int>{1, -1} : std::vector<int>{1}) {
            OrbitWitness w = orbit_reduction_witness(id, k, p, br);
            CHECK(w.ok());
            bool first = id == FamilyId::E1E1_1 || id == FamilyId::E3E3_1 || id == FamilyId::NN_1;
            CHECK(w.target == (first ? "g1" : "g2"));
          }
    }
    CHECK_THROWS_AS(family_metric(FamilyId::E1E1_1, 0, Rational(2), 1), Error);
  }

  TEST_CASE("canonical family member needs no transformation") {
    // At k = 0, c2 = 0 and the + branch the (E1,E1) first family is g1 itself.
    bool canonical = family_metric(FamilyId::E1E1_1, 1, Rational(0), 1) == to_quad(metric_g1()) ||
                     family_metric(FamilyId::E1E1_1, 0, Rational(0), 1) == to_quad(metric_g1());
    CHECK(canonical);
  }

  TEST_CASE("solution catalog") {
    auto cat = known_solution_catalog();
    std::size_t g2_count = 0;
    for (const auto& s : cat) {
      CAPTURE(s.case_label);
      CAPTURE(s.name);
      CHECK(s.verified);
      CHECK(s.det == QuadExt(1));
      CHECK(s.index == 2);
      CHECK((s.lambda == QSqrt3(-2) || s.lambda == kLambda2) == true);
      if (s.name == "g2") {
        ++g2_count;
        MQ tilde = {{QSqrt3(-2), QSqrt3(0), QSqrt3(0), QSqrt3(1), QSqrt3(0), QSqrt3(0)},
                    {QSqrt3(0), QSqrt3(2), QSqrt3(0), QSqrt3(0), QSqrt3(1), QSqrt3(0)},
                    {QSqrt3(0), QSqrt3(0), QSqrt3(2), QSqrt3(0), QSqrt3(0), QSqrt3(1)},
                    {QSqrt3(1), QSqrt3(0), QSqrt3(0), QSqrt3(-2), QSqrt3(0), QSqrt3(0)},
                    {QSqrt3(0), QSqrt3(1), QSqrt3(0), QSqrt3(0), QSqrt3(2), QSqrt3(0)},
                    {QSqrt3(0), QSqrt3(0), QSqrt3(1), QSqrt3(0), QSqrt3(0), QSqrt3(2)}};
        CHECK(s.metric == to_quad((QSqrt3(1) / QSqrt3::sqrt3()) * tilde));
      }
    }
    CHECK(g2_count == 1);
    std::size_t rows_with_b8 = 0;
    for (const auto& s : cat) rows_with_b8 += s.name == "B/8";
    CHECK(rows_with_b8 == 11);
    // Both branches of every family with a square root are listed.
    std::size_t e1e1 = 0;
    for (const auto& s : cat)
      if (s.family && (s.family->id == FamilyId::E1E1_1 || s.family->id == FamilyId::E1E1_2)) ++e1e1;
    CHECK(e1e1 == 4);

    MX nn = family_metric(FamilyId::NN_1, 0, Rational(0), 1);
    MX off = nn.block(0, 3, 3, 3);
    CHECK(off == to_quad(MQ{{QSqrt3(1), QSqrt3(0), QSqrt3(0)},
                            {QSqrt3(0), QSqrt3(-1), QSqrt3(0)},
                            {QSqrt3(0), QSqrt3(0), QSqrt3(-1)}}));
  }

  TEST_CASE("catalog families annihilate the assembled system") {
    LieAlgebra l = sl2x2();
    GeneratorCase c = make_case("(E1,E1)");
    MetricAnsatz a = table_template(c);
    EinsteinSystem sys = assemble_einstein_system(l, a, 1);
    CHECK(sys.all().size() == 22);
    for (FamilyId id : {FamilyId::E1E1_1, FamilyId::E1E1_2})
      for (const auto& s : family_grid(id, family_samples(id))) CHECK(system_vanishes_at(sys, a, s.metric, QuadExt(s.lambda)));
    CHECK(system_vanishes_at(sys, a, to_quad(killing_metric()), QuadExt(-2)));
    CHECK_FALSE(system_vanishes_at(sys, a, to_quad(killing_metric()), QuadExt(-3)));
    CHECK(system_vanishes_at(sys, a, to_quad(metric_g1()), QuadExt(-2)));
    CHECK(system_vanishes_at(sys, a, to_quad(metric_g2()), QuadExt(kLambda2)));
    MX outside = to_quad(killing_metric());
    outside(0, 1) = outside(1, 0) = QuadExt(1);
    CHECK_FALSE(match_template(a, outside).has_value());
    CHECK_FALSE(system_vanishes_at(sys, a, outside, QuadExt(-2)));
  }
}
