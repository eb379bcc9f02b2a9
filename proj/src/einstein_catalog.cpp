#include <algorithm>

#include "curvlie/einstein.hpp"

namespace curvlie {

namespace {

const QSqrt3 kSqrt3(Rational(0), Rational(1));

struct FamilyData {
  FamilyId id;
  const char* name;
  const char* row;
  const char* parameter;
  /// Radicand of w in the parameter; empty for families without a branch.
  const char* radicand;
  bool second;  // lambda = -10/(3 sqrt 3) instead of -2
  // Entries over k, t = sqrt 3, w = +-sqrt(radicand) and the parameter.
  std::vector<std::vector<std::string>> entries;
};

const std::vector<FamilyData>& families() {
  static const std::vector<FamilyData> data = {
      {FamilyId::E1E1_1, "E1E1_1", "(E1,E1)", "c2", "1 - c2^2", false,
       {{"-1 - k", "0", "0", "1", "0", "0"},
        {"0", "1 + k", "0", "0", "w", "c2"},
        {"0", "0", "1 + k", "0", "-c2", "w"},
        {"1", "0", "0", "-2 + k", "0", "0"},
        {"0", "w", "-c2", "0", "2 - k", "0"},
        {"0", "c2", "w", "0", "0", "2 - k"}}},
      {FamilyId::E1E1_2, "E1E1_2", "(E1,E1)", "c2", "1/3 - c2^2", true,
       {{"-2/3*t", "0", "0", "1/3*t", "0", "0"},
        {"0", "2/3*t", "0", "0", "w", "c2"},
        {"0", "0", "2/3*t", "0", "-c2", "w"},
        {"1/3*t", "0", "0", "-2/3*t", "0", "0"},
        {"0", "w", "-c2", "0", "2/3*t", "0"},
        {"0", "c2", "w", "0", "0", "2/3*t"}}},
      {FamilyId::E3E3_1, "E3E3_1", "(E3,E3)", "b1", "1 + b1^2", false,
       {{"-1 - k", "0", "0", "w", "b1", "0"},
        {"0", "1 + k", "0", "-b1", "-w", "0"},
        {"0", "0", "1 + k", "0", "0", "-1"},
        {"w", "-b1", "0", "-2 + k", "0", "0"},
        {"b1", "-w", "0", "0", "2 - k", "0"},
        {"0", "0", "-1", "0", "0", "2 - k"}}},
      {FamilyId::E3E3_2, "E3E3_2", "(E3,E3)", "b1", "1/3 + b1^2", true,
       {{"-2/3*t", "0", "0", "w", "b1", "0"},
        {"0", "2/3*t", "0", "-b1", "-w", "0"},
        {"0", "0", "2/3*t", "0", "0", "-1/3*t"},
        {"w", "-b1", "0", "-2/3*t", "0", "0"},
        {"b1", "-w", "0", "0", "2/3*t", "0"},
        {"0", "0", "-1/3*t", "0", "0", "2/3*t"}}},
      {FamilyId::NN_1, "NN_1", "(N,N)", "c1", "", false,
       {{"-1 - k", "0", "0", "1 + 1/2*c1^2", "1/2*c1^2", "c1"},
        {"0", "1 + k", "0", "1/2*c1^2", "1/2*c1^2 - 1", "c1"},
        {"0", "0", "1 + k", "-c1", "-c1", "-1"},
        {"1 + 1/2*c1^2", "1/2*c1^2", "-c1", "-2 + k", "0", "0"},
        {"1/2*c1^2", "1/2*c1^2 - 1", "-c1", "0", "2 - k", "0"},
        {"c1", "c1", "-1", "0", "0", "2 - k"}}},
      {FamilyId::NN_2, "NN_2", "(N,N)", "c1", "", true,
       {{"-2/3*t", "0", "0", "1/3*t + 1/2*t*c1^2", "1/2*t*c1^2", "c1"},
        {"0", "2/3*t", "0", "1/2*t*c1^2", "-1/3*t + 1/2*t*c1^2", "c1"},
        {"0", "0", "2/3*t", "-c1", "-c1", "-1/3*t"},
        {"1/3*t + 1/2*t*c1^2", "1/2*t*c1^2", "-c1", "-2/3*t", "0", "0"},
        {"1/2*t*c1^2", "-1/3*t + 1/2*t*c1^2", "-c1", "0", "2/3*t", "0"},
        {"c1", "c1", "-1/3*t", "0", "0", "2/3*t"}}},
  };
  return data;
}

const FamilyData& family(FamilyId id) {
  for (const auto& f : families())
    if (f.id == id) return f;
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

VarTablePtr family_vars(const FamilyData& f) {
  return std::make_shared<const VariableTable>(std::vector<std::string>{"k", "t", "w", f.parameter});
}

MetricAnsatz family_ansatz(const FamilyData& f) { return make_ansatz(f.entries, family_vars(f)); }

Matrix<QSqrt3> to_qs3(const Matrix<Rational>& m) { return m.map([](const Rational& x) { return QSqrt3(x); }); }

Matrix<QuadExt> to_quad(const Matrix<QSqrt3>& m) { return m.map([](const QSqrt3& x) { return QuadExt(x); }); }

Matrix<QSqrt3> eta() { return to_qs3(Matrix<Rational>{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

// Orbit matrices with the off-diagonal scale u (1 or sqrt 3).
Matrix<QSqrt3> orbit_t(const Rational& c1, const QSqrt3& u) {
  QSqrt3 c = u * QSqrt3(c1);
  QSqrt3 h = c * c * QSqrt3(Rational(1, 2));
  return {{QSqrt3(1) + h, h, -c}, {-h, QSqrt3(1) - h, c}, {-c, -c, QSqrt3(1)}};
}

}  // namespace

const char* to_string(FamilyId id) { return family(id).name; }
std::string family_case(FamilyId id) { return family(id).row; }
std::string family_parameter(FamilyId id) { return family(id).parameter; }
bool family_has_branches(FamilyId id) { return *family(id).radicand != '\0'; }

QSqrt3 family_lambda(FamilyId id) {
  if (family(id).second) return QSqrt3(Rational(0), Rational(-10, 9));  // -10/(3 sqrt 3)
  return QSqrt3(-2);
}

Matrix<QuadExt> family_metric(FamilyId id, int k, const Rational& p, int branch) {
  if (k != 0 && k != 1) throw Error(ErrorCode::InvalidArgument, "k must be 0 or 1");
  if (branch != 1 && branch != -1) throw Error(ErrorCode::InvalidArgument, "branch must be +1 or -1");
  const auto& f = family(id);
  MetricAnsatz a = family_ansatz(f);
  QuadExt w(0);
  if (family_has_branches(id)) {
    QSqrt3 rad(evaluate<Rational>(parse_polynomial(f.radicand, a.vars), {std::nullopt, std::nullopt, std::nullopt, p}));
    if (rad.sign() < 0)
      throw Error(ErrorCode::InvalidArgument,
                  std::string(f.name) + ": radicand " + rad.str() + " is negative at " + f.parameter + " = " + p.str());
    if (!rad.is_zero()) w = QuadExt::sqrt_of(rad) * QuadExt(branch);
  }
  std::vector<std::optional<QuadExt>> values = {QuadExt(k), QuadExt(kSqrt3), w, QuadExt(p)};
  return instantiate<QuadExt>(a, values);
}

std::vector<std::vector<std::string>> family_template_strings(FamilyId id, int branch) {
  const auto& f = family(id);
  std::string root = std::string(branch < 0 ? "-" : "") + "sqrt(" + f.radicand + ")";
  auto out = f.entries;
  for (auto& row : out)
    for (auto& e : row) {
      std::string s;
      for (char ch : e) {
        if (ch == 'w') s += root;
        else if (ch == 't') s += "sqrt(3)";
        else s += ch;
      }
      e = s;
    }
  return out;
}

bool verify_family_symbolic(FamilyId id) {
  const auto& f = family(id);
  MetricAnsatz a = family_ansatz(f);
  const auto& vars = a.vars;
  Polynomial k = Polynomial::variable(vars, "k"), t = Polynomial::variable(vars, "t"),
             w = Polynomial::variable(vars, "w");
  Polynomial one(vars, Rational(1));
  // Leading monomials k^2, t^2, w^2 are coprime, so this is a Groebner basis.
  std::vector<Polynomial> rel = {k * k - k, t * t - Polynomial(vars, Rational(3))};
  if (family_has_branches(id)) rel.push_back(w * w - parse_polynomial(f.radicand, vars));
  auto reduce = [&](const Polynomial& p) { return poly_reduce(p, rel); };

  LieAlgebra l = direct_sum(sl2(), sl2());
  SymbolicCurvature sc = symbolic_ricci(l, a, reduce);
  if (!reduce(sc.det - one).is_zero()) return false;
  QSqrt3 lam = family_lambda(id);
  Polynomial lam_poly = Polynomial(vars, lam.a()) + t.scaled(lam.b());
  Polynomial coeff = reduce(sc.det * sc.det * lam_poly.scaled(Rational(4)));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j)
      if (!reduce(sc.s(i, j) - coeff * a.g(i, j)).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------

Matrix<QSqrt3> killing_metric() {
  Matrix<QSqrt3> g = to_qs3(Matrix<Rational>::identity(6));
  g(0, 0) = g(3, 3) = QSqrt3(-1);
  return g;
}

Matrix<QSqrt3> metric_g1() {
  Matrix<QSqrt3> g(6, 6, QSqrt3(0));
  Matrix<QSqrt3> e = eta();
  g.set_block(0, 0, e);
  g.set_block(3, 3, e * QSqrt3(2));
  g.set_block(0, 3, to_qs3(Matrix<Rational>::identity(3)));
  g.set_block(3, 0, to_qs3(Matrix<Rational>::identity(3)));
  return g;
}

Matrix<QSqrt3> metric_g2() {
  Matrix<QSqrt3> g(6, 6, QSqrt3(0));
  Matrix<QSqrt3> e = eta() * QSqrt3(2);
  g.set_block(0, 0, e);
  g.set_block(3, 3, e);
  g.set_block(0, 3, to_qs3(Matrix<Rational>::identity(3)));
  g.set_block(3, 0, to_qs3(Matrix<Rational>::identity(3)));
  return g * (QSqrt3(1) / kSqrt3);
}

Matrix<QSqrt3> isometry_witness_a() {
  Matrix<QSqrt3> a = to_qs3(Matrix<Rational>::identity(6));
  a(0, 3) = QSqrt3(-1);
  a(1, 4) = QSqrt3(1);
  a(2, 5) = QSqrt3(1);
  return a;
}

Matrix<QSqrt3> orbit_t1(const Rational& c1) { return orbit_t(c1, QSqrt3(1)); }
Matrix<QSqrt3> orbit_t2(const Rational& c1) { return orbit_t(c1, kSqrt3); }

Matrix<QSqrt3> orbit_m1(const Rational& c1) {
  QSqrt3 c(c1), h(c1 * c1 * Rational(1, 2));
  return {{QSqrt3(1) + h, h, -c}, {h, h - QSqrt3(1), -c}, {c, c, QSqrt3(-1)}};
}

Matrix<QSqrt3> orbit_m2(const Rational& c1) {
  QSqrt3 c(c1), cc(c1 * c1);
  QSqrt3 p = kSqrt3 * (QSqrt3(2) + cc * QSqrt3(3)) * QSqrt3(Rational(1, 6));
  QSqrt3 q = kSqrt3 * cc * QSqrt3(Rational(1, 2));
  QSqrt3 r = kSqrt3 * (QSqrt3(-2) + cc * QSqrt3(3)) * QSqrt3(Rational(1, 6));
  return {{p, q, -c}, {q, r, -c}, {c, c, -(QSqrt3(1) / kSqrt3)}};
}

// ---------------------------------------------------------------------------
// Records

std::string known_metric_name(const Matrix<QuadExt>& g) {
  Matrix<QuadExt> b = to_quad(killing_metric());
  if (g == b) return "B/8";
  if (g == -b) return "-B/8";
  if (g == to_quad(metric_g1())) return "g1";
  if (g == to_quad(metric_g2())) return "g2";
  return "";
}

void finalize_record(SolutionRecord& s) {
  LieAlgebra l = direct_sum(sl2(), sl2());
  s.det = field_determinant(s.metric);
  s.index = static_cast<int>(signature_index(s.metric).negatives);
  s.verified = !is_zero(s.det) && verify_einstein(l, s.metric, QuadExt(s.lambda));
}

SolutionRecord negate_metric(const SolutionRecord& s) {
  SolutionRecord out = s;
  out.metric = s.metric.map([](const QuadExt& x) { return -x; });
  out.lambda = -s.lambda;
  // The Ricci tensor is scale invariant, so Ric = lambda g becomes (-lambda)(-g).
  out.det = field_determinant(out.metric);
  out.index = static_cast<int>(s.metric.rows()) - s.index;
  return out;
}

namespace {

SolutionRecord family_record(FamilyId id, int k, const Rational& p, int branch) {
  SolutionRecord r;
  r.case_label = family_case(id);
  r.name = std::string(to_string(id)) + (family_has_branches(id) ? (branch > 0 ? "+" : "-") : "");
  r.metric = family_metric(id, k, p, branch);
  r.lambda = family_lambda(id);
  r.family = FamilyRef{id, branch};
  r.parameters["k"] = std::to_string(k);
  r.parameters[family_parameter(id)] = p.str();
  if (family_has_branches(id)) r.parameters["branch"] = branch > 0 ? "+" : "-";
  finalize_record(r);
  return r;
}

SolutionRecord plain_record(const std::string& label, const std::string& name, const Matrix<QSqrt3>& g,
                            const QSqrt3& lambda) {
  SolutionRecord r;
  r.case_label = label;
  r.name = name;
  r.metric = to_quad(g);
  r.lambda = lambda;
  finalize_record(r);
  return r;
}

constexpr FamilyId kAllFamilies[] = {FamilyId::E1E1_1, FamilyId::E1E1_2, FamilyId::E3E3_1,
                                     FamilyId::E3E3_2, FamilyId::NN_1,   FamilyId::NN_2};

}  // namespace

std::vector<SolutionRecord> known_solution_catalog() {
  std::vector<SolutionRecord> out;
  for (const auto& c : table_rows()) {
    std::string row = c.row_label().find('r') != std::string::npos ? c.label : c.row_label();
    out.push_back(plain_record(row, "B/8", killing_metric(), QSqrt3(-2)));
    for (FamilyId id : kAllFamilies) {
      if (family_case(id) != c.row_label()) continue;
      for (int br : family_has_branches(id) ? std::vector<int>{1, -1} : std::vector<int>{1})
        out.push_back(family_record(id, 0, Rational(0), br));
    }
  }
  out.push_back(plain_record("(E1,E1)", "g1", metric_g1(), QSqrt3(-2)));
  out.push_back(plain_record("(E1,E1)", "g2", metric_g2(), family_lambda(FamilyId::E1E1_2)));
  return out;
}

std::vector<Rational> family_samples(FamilyId id) {
  if (id == FamilyId::E1E1_1 || id == FamilyId::E1E1_2) return {Rational(0), Rational(1, 2)};
  return {Rational(0), Rational(1)};
}

std::vector<SolutionRecord> family_grid(FamilyId id, const std::vector<Rational>& samples) {
  std::vector<SolutionRecord> out;
  for (int k : {0, 1})
    for (const auto& p : samples)
      for (int br : family_has_branches(id) ? std::vector<int>{1, -1} : std::vector<int>{1})
        out.push_back(family_record(id, k, p, br));
  return out;
}

// ---------------------------------------------------------------------------
// Orbit reduction

OrbitWitness orbit_reduction_witness(FamilyId id, int k, const Rational& p, int branch) {
  const auto& f = family(id);
  Matrix<QuadExt> g = family_metric(id, k, p, branch);
  OrbitWitness out;
  out.target = f.second ? "g2" : "g1";
  Matrix<QuadExt> target = to_quad(f.second ? metric_g2() : metric_g1());
  QuadExt scale = f.second ? QuadExt(QSqrt3(1) / kSqrt3) : QuadExt(1);
  // Family 2 is independent of k; only family 1 has swapped diagonal blocks at k = 1.
  bool swap = !f.second && k == 1;
  Matrix<QuadExt> u = g.block(0, 3, 3, 3);
  Matrix<QuadExt> u_eff = swap ? u.transpose() : u;

  Automorphism<QuadExt> a;
  a.swap = swap;
  if (id == FamilyId::NN_1 || id == FamilyId::NN_2) {
    Matrix<QuadExt> t = to_quad(id == FamilyId::NN_1 ? orbit_t1(p) : orbit_t2(p));
    Matrix<QuadExt> minus_eta = to_quad(eta()).map([](const QuadExt& x) { return -x; });
    a.first = swap ? t : minus_eta;
    a.second = swap ? minus_eta : t;
  } else {
    a.first = Matrix<QuadExt>::identity(3);
    a.second = inverse(u_eff) * scale;
  }
  out.automorphism = a;
  out.factors_in_so21 = check_so21(a.first) && check_so21(a.second);
  Matrix<QuadExt> m = a.matrix();
  out.is_automorphism = is_lie_automorphism(direct_sum(sl2(), sl2()), m);
  out.maps_to_target = pullback_symmetric(g, m) == target;
  return out;
}

}  // namespace curvlie
