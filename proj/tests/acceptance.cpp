// Acceptance checks: one line per criterion, "criterion N: PASS|FAIL <summary>".
//
// Exit status is non-zero when a criterion fails that is not listed in
// kKnownFailures. Known failures are still printed as FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "curvlie/einstein.hpp"
#include "curvlie/report.hpp"

using namespace curvlie;

namespace {

using MQ = Matrix<QSqrt3>;
using MX = Matrix<QuadExt>;
using Clock = std::chrono::steady_clock;

// The displayed products T1 * M1 = I and T2 * M2 = I/sqrt3 do not hold as
// written (already at c1 = 0); see the README.
const std::set<int> kKnownFailures = {6};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
};

LieAlgebra sl2x2() { return direct_sum(sl2(), sl2()); }

MX to_quad(const MQ& m) {
  return m.map([](const QSqrt3& x) { return QuadExt(x); });
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

const QSqrt3 kLambda2(Rational(0), Rational(-10, 9));

const std::vector<FamilyId> kFamilies = {FamilyId::E1E1_1, FamilyId::E1E1_2, FamilyId::E3E3_1,
                                         FamilyId::E3E3_2, FamilyId::NN_1,   FamilyId::NN_2};

std::vector<int> branches(FamilyId id) { return family_has_branches(id) ? std::vector<int>{1, -1} : std::vector<int>{1}; }

Outcome killing_check() {
  Outcome o;
  auto t = Clock::now();
  MQ g = killing_metric();
  auto d = compute_curvature(sl2x2(), g);
  o.check(d.ricci == QSqrt3(-2) * g, "Ric(B/8) = -2 B/8");
  o.check(field_determinant(g) == QSqrt3(1), "det = 1");
  o.check(signature_index(g).negatives == 2, "index = 2");
  double s = seconds_since(t);
  o.check(s < 1.0, "runtime " + std::to_string(s) + " s < 1 s");
  return o;
}

Outcome g1_g2_check() {
  Outcome o;
  auto t = Clock::now();
  LieAlgebra l = sl2x2();
  o.check(compute_curvature(l, metric_g1()).ricci == QSqrt3(-2) * metric_g1(), "Ric(g1) = -2 g1");
  o.check(compute_curvature(l, metric_g2()).ricci == kLambda2 * metric_g2(), "Ric(g2) = -10/(3 sqrt3) g2");
  MQ tilde(6, 6, QSqrt3(0));
  for (std::size_t i = 0; i < 6; ++i) {
    tilde(i, i) = QSqrt3(i % 3 == 0 ? -2 : 2);
    tilde(i, (i + 3) % 6) = QSqrt3(1);
  }
  o.check(metric_g2() == (QSqrt3(1) / QSqrt3::sqrt3()) * tilde, "g2 equals (1/sqrt3) * displayed matrix entry-wise");
  double s = seconds_since(t);
  o.check(s < 5.0, "runtime " + std::to_string(s) + " s < 5 s");
  return o;
}

Outcome family_check() {
  Outcome o;
  auto t = Clock::now();
  for (FamilyId id : kFamilies) {
    auto grid = family_grid(id, family_samples(id));
    bool ok = !grid.empty();
    for (const auto& s : grid)
      ok = ok && s.verified && s.det == QuadExt(1) && s.index == 2 && s.lambda == family_lambda(id);
    std::string samples;
    for (const auto& p : family_samples(id)) samples += (samples.empty() ? "" : ",") + p.str();
    o.check(ok, std::string(to_string(id)) + ": " + std::to_string(grid.size()) + " members (k in {0,1}, " +
                    family_parameter(id) + " in {" + samples + "}" +
                    (family_has_branches(id) ? ", both branches" : "") + ") verified, det 1, index 2");
    o.check(verify_family_symbolic(id), std::string(to_string(id)) + ": symbolic check modulo the branch relation");
  }
  double s = seconds_since(t);
  o.check(s < 60.0, "runtime " + std::to_string(s) + " s < 60 s");
  return o;
}

Outcome nabla_r_check() {
  Outcome o;
  auto t = Clock::now();
  LieAlgebra l = sl2x2();
  auto nr = [&](const MQ& g) {
    auto d = compute_curvature(l, g);
    return cov_deriv_riemann(d.omega, d.riemann);
  };
  o.check(nr(killing_metric()).is_zero_tensor(), "nabla R(B/8) = 0");
  o.check(nr(metric_g1()).is_zero_tensor(), "nabla R(g1) = 0");
  std::size_t nz = nr(metric_g2()).nonzero_count();
  o.check(nz > 0, "nabla R(g2) has " + std::to_string(nz) + " nonzero components");
  double s = seconds_since(t);
  o.check(s < 60.0, "runtime " + std::to_string(s) + " s < 60 s");
  return o;
}

Outcome isometry_check() {
  Outcome o;
  LieAlgebra l = sl2x2();
  MQ a = isometry_witness_a();
  o.check(check_isometry_candidate(l, killing_metric(), metric_g1(), a), "A^*(B/8) = g1 and A^*R = R^{g1}");
  o.check(!check_isometry_candidate(l, killing_metric(), metric_g2(), a), "the same A does not reach g2");
  return o;
}

Outcome orbit_check() {
  Outcome o;
  MQ eta = {{QSqrt3(-1), QSqrt3(0), QSqrt3(0)}, {QSqrt3(0), QSqrt3(1), QSqrt3(0)}, {QSqrt3(0), QSqrt3(0), QSqrt3(1)}};
  MQ id = MQ::identity(3);
  MQ id_over_sqrt3 = (QSqrt3(1) / QSqrt3::sqrt3()) * id;
  bool so21 = true, literal1 = true, literal2 = true, corrected = true;
  for (Rational c : {Rational(0), Rational(1), Rational(-2)}) {
    so21 = so21 && check_so21(orbit_t1(c)) && check_so21(orbit_t2(c));
    literal1 = literal1 && orbit_t1(c) * orbit_m1(c) == id;
    literal2 = literal2 && orbit_t2(c) * orbit_m2(c) == id_over_sqrt3;
    corrected = corrected && orbit_t1(c).transpose() * (QSqrt3(-1) * orbit_m1(c) * eta) == id &&
                orbit_t2(c).transpose() * (QSqrt3(-1) * orbit_m2(c) * eta) == id_over_sqrt3;
  }
  o.check(so21, "T1, T2 in SO(2,1) for c1 in {0, 1, -2}");
  o.check(literal1, "T1 * M1 = I as displayed");
  o.check(literal2, "T2 * M2 = I/sqrt3 as displayed");
  // Not part of the verdict: the identity that does hold.
  o.notes.push_back(std::string(corrected ? "info " : "info not ") +
                    "T^T * (-M eta) gives I and I/sqrt3 for c1 in {0, 1, -2}");
  std::size_t total = 0, good = 0;
  for (FamilyId id : kFamilies)
    for (int k : {0, 1})
      for (const Rational& p : family_samples(id))
        for (int br : branches(id)) {
          ++total;
          good += orbit_reduction_witness(id, k, p, br).ok();
        }
  o.check(good == total, "orbit witnesses map " + std::to_string(good) + "/" + std::to_string(total) +
                             " sampled family members onto g1/g2");
  return o;
}

Outcome dimension_check() {
  Outcome o;
  const std::map<std::string, std::size_t> dims = {
      {"(E1,2E1)", 5}, {"(E1,E1)", 7}, {"(E1,0)", 11}, {"(E1,2E3)", 5}, {"(E1,N)", 5}, {"(E3,2E3)", 5},
      {"(E3,E3)", 7},  {"(E3,0)", 11}, {"(E3,N)", 5},  {"(N,0)", 11},  {"(N,N)", 7}};
  LieAlgebra l = sl2x2();
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  for (const auto& c : table_rows()) {
    std::size_t dim = invariant_tensor_space(l, c.element()).size();
    bool contained = true;
    for (int q = 1; q <= (c.uses_q_block() ? 4 : 1); ++q) {
      MetricAnsatz a = table_template(c, q);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::optional<Rational>> vals(a.vars->size());
        for (auto p : a.parameters()) vals[p] = Rational(d(rng), 1 + trial);
        contained = contained && is_invariant(l, c.element(), instantiate<Rational>(a, vals));
      }
    }
    o.check(dim == dims.at(c.label) && contained,
            c.label + ": dimension " + std::to_string(dim) + ", template instances contained");
  }
  return o;
}

std::vector<Polynomial> random_ideal(std::mt19937& rng, const VarTablePtr& v) {
  std::uniform_int_distribution<int> coeff(-3, 3), exp(0, 3), count(2, 3), terms(2, 3);
  std::vector<Polynomial> out;
  int n = count(rng);
  while (static_cast<int>(out.size()) < n) {
    std::vector<Term> ts;
    int nt = terms(rng);
    for (int t = 0; t < nt; ++t) {
      Monomial m;
      unsigned budget = 3;
      for (std::size_t i = 0; i < v->size(); ++i) {
        unsigned e = std::min<unsigned>(budget, static_cast<unsigned>(exp(rng)));
        m.set(i, e);
        budget -= e;
      }
      ts.push_back({m, Rational(coeff(rng))});
    }
    Polynomial f = Polynomial::from_terms(v, std::move(ts));
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

Outcome groebner_check() {
  Outcome o;
  auto xy = std::make_shared<const VariableTable>(std::vector<std::string>{"x", "y"});
  auto xyz = std::make_shared<const VariableTable>(std::vector<std::string>{"x", "y", "z"});
  std::vector<std::vector<Polynomial>> ideals = {
      {parse_polynomial("x^2 - 1", xy), parse_polynomial("x*y - 1", xy)}};
  std::mt19937 rng(20240);
  for (int i = 0; i < 5; ++i) ideals.push_back(random_ideal(rng, xyz));
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    const auto& gens = ideals[i];
    GroebnerOptions opt;
    opt.certificate = true;
    GroebnerBasis b = buchberger(gens, opt);
    bool spairs = satisfies_buchberger_criterion(b.polys, b.order);
    for (const auto& pc : b.certificate) spairs = spairs && pc.reduces_to_zero;
    bool members = true;
    for (const auto& g : gens) members = members && ideal_membership(g, b);
    bool same = true;
    for (unsigned jobs : {2u, 4u}) {
      GroebnerOptions par = opt;
      par.jobs = jobs;
      GroebnerBasis p = buchberger(gens, par);
      same = same && p.polys == b.polys && p.certificate_digest == b.certificate_digest;
    }
    std::string basis;
    for (const auto& p : b.polys) basis += (basis.empty() ? "" : ", ") + p.str();
    std::string name = i == 0 ? "fixed ideal" : "random ideal " + std::to_string(i);
    o.check(spairs && members && same, name + " -> {" + basis + "}: S-pairs and generators reduce to 0, jobs 1/2/4 agree");
    if (i == 0)
      o.check(b.polys == std::vector<Polynomial>{parse_polynomial("x - y", xy), parse_polynomial("y^2 - 1", xy)},
              "fixed ideal basis is {x - y, y^2 - 1}");
  }
  return o;
}

Outcome case_check() {
  Outcome o;
  auto t = Clock::now();
  RunConfig c;
  c.subcommand = "solve";
  c.arguments = {"(E1,rE1)"};
  c.r_samples = {Rational(2)};
  c.det_sign = 1;
  Report r = run(c);
  const auto& cs = r.body.at("cases").at(0);
  bool one = cs.at("solutions").size() == 1;
  bool exact = one && cs.at("solutions").at(0).at("name") == "B/8" &&
               qsqrt3_from_json(cs.at("solutions").at(0).at("lambda")) == QSqrt3(-2) &&
               cs.at("solutions").at(0).at("verified") == true;
  o.check(r.exit_code == 0 && cs.at("residuals").empty() && exact,
          "solve (E1,rE1) r=2 det +1: exactly B/8 with lambda -2, no residuals (" +
              std::to_string(seconds_since(t)) + " s)");

  // Full (E1,E1) case under a memory cap, then the substitution fallback.
  t = Clock::now();
  SolveOptions opt;
  const char* mb = std::getenv("CURVLIE_BUDGET_MB");
  opt.groebner.budget.max_megabytes = mb ? std::strtoul(mb, nullptr, 10) : 1000;
  CaseResult full = solve_case(make_case("(E1,E1)"), opt);
  bool full_ok = full.solved();
  o.notes.push_back(std::string("info ") + "(E1,E1) full solve: " +
                    (full.budget_exceeded ? "budget stop (" + full.message + ")"
                                          : std::to_string(full.solutions.size()) + " solutions") +
                    " after " + std::to_string(seconds_since(t)) + " s, " +
                    std::to_string(full.stats.pairs_processed) + " pairs");
  if (!full_ok) {
    LieAlgebra l = sl2x2();
    MetricAnsatz a = table_template(make_case("(E1,E1)"));
    EinsteinSystem sys = assemble_einstein_system(l, a, 1);
    std::size_t total = 0, good = 0;
    for (FamilyId id : {FamilyId::E1E1_1, FamilyId::E1E1_2})
      for (const auto& s : family_grid(id, family_samples(id))) {
        ++total;
        good += system_vanishes_at(sys, a, s.metric, QuadExt(s.lambda));
      }
    for (const auto& [g, lam] : {std::pair{killing_metric(), QSqrt3(-2)}, std::pair{metric_g1(), QSqrt3(-2)},
                                 std::pair{metric_g2(), kLambda2}}) {
      ++total;
      good += system_vanishes_at(sys, a, to_quad(g), QuadExt(lam));
    }
    o.check(sys.all().size() == 22 && good == total,
            "fallback: all " + std::to_string(total) + " (E1,E1) catalog members annihilate the " +
                std::to_string(sys.all().size()) + "-polynomial system");
  } else {
    o.check(true, "(E1,E1) solved in full");
  }
  return o;
}

Outcome negation_check() {
  Outcome o;
  LieAlgebra l = sl2x2();
  for (const auto& [name, g, lam] : {std::tuple{"B/8", killing_metric(), QSqrt3(-2)},
                                     std::tuple{"g2", metric_g2(), kLambda2}}) {
    SolutionRecord s;
    s.metric = to_quad(g);
    s.lambda = lam;
    finalize_record(s);
    SolutionRecord n = negate_metric(s);
    o.check(n.metric == to_quad(QSqrt3(-1) * g) && n.lambda == -lam && n.index == 6 - s.index && n.verified,
            std::string(name) + ": negation gives (-g, -lambda, 6 - index) and verifies");
    for (Rational c : {Rational(2), Rational(1, 3)}) {
      QSqrt3 cq(c);
      bool law = verify_einstein(l, cq * g, lam / cq) == verify_einstein(l, g, lam);
      bool wrong = !verify_einstein(l, cq * g, lam * cq * cq);
      o.check(law && wrong, std::string(name) + ": scaling by " + c.str() + " gives lambda/c (not lambda*c^2)");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Killing metric is Einstein with lambda -2, det 1, index 2", killing_check},
      {"g1 and g2 are Einstein over Q(sqrt3)", g1_g2_check},
      {"solution families verify on the sample grid", family_check},
      {"nabla R separates g2 from B/8 and g1", nabla_r_check},
      {"isometry witness A", isometry_check},
      {"orbit reduction", orbit_check},
      {"invariant-space dimensions and template containment", dimension_check},
      {"Groebner soundness and determinism", groebner_check},
      {"end-to-end case reproduction", case_check},
      {"negation and scaling laws", negation_check},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int n = static_cast<int>(i) + 1;
    auto t = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s %s (%.2f s)%s\n", n, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds_since(t), !o.pass && kKnownFailures.count(n) ? " [known, documented]" : "");
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    if (!o.pass && !kKnownFailures.count(n)) ++unexpected;
  }
  std::printf("unexpected failures: %d\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
