#include <algorithm>
#include <cctype>

#include "curvlie/einstein.hpp"

namespace curvlie {

// ---------------------------------------------------------------------------
// Generator cases

namespace {

Vector sl2_vector(Sl2Kind k) {
  switch (k) {
    case Sl2Kind::Zero: return {0, 0, 0};
    case Sl2Kind::E1: return {1, 0, 0};
    case Sl2Kind::E3: return {0, 0, 1};
    case Sl2Kind::N: return sl2_nilpotent();
  }
  return {0, 0, 0};
}

const char* kind_name(Sl2Kind k) {
  switch (k) {
    case Sl2Kind::Zero: return "0";
    case Sl2Kind::E1: return "E1";
    case Sl2Kind::E3: return "E3";
    case Sl2Kind::N: return "N";
  }
  return "?";
}

struct FamilyShape {
  Sl2Kind first, second;
  bool has_r;
  const char* label;
};

constexpr FamilyShape kFamilies[] = {
    {Sl2Kind::E1, Sl2Kind::E1, true, "(E1,rE1)"}, {Sl2Kind::E1, Sl2Kind::E3, true, "(E1,rE3)"},
    {Sl2Kind::E1, Sl2Kind::N, false, "(E1,N)"},   {Sl2Kind::E3, Sl2Kind::E3, true, "(E3,rE3)"},
    {Sl2Kind::E3, Sl2Kind::N, false, "(E3,N)"},   {Sl2Kind::N, Sl2Kind::Zero, false, "(N,0)"},
    {Sl2Kind::N, Sl2Kind::N, false, "(N,N)"},
};

GeneratorCase from_family(int family) {
  const auto& f = kFamilies[family - 1];
  GeneratorCase c;
  c.label = f.label;
  c.family = family;
  c.first = f.first;
  c.second = f.second;
  c.has_r = f.has_r;
  return c;
}

}  // namespace

Vector GeneratorCase::element() const {
  Vector a = sl2_vector(first), b = sl2_vector(second);
  if (has_r) {
    if (!r) throw Error(ErrorCode::InvalidArgument, "case " + label + " needs a value for r");
    for (auto& x : b) x *= *r;
  }
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string GeneratorCase::row_label() const {
  if (has_r && r) {
    if (r->is_zero()) return std::string("(") + kind_name(first) + ",0)";
    if (r->is_one()) return std::string("(") + kind_name(first) + "," + kind_name(second) + ")";
  }
  return kFamilies[family - 1].label;
}

bool GeneratorCase::uses_q_block() const {
  std::string row = row_label();
  return row == "(E1,0)" || row == "(E3,0)" || row == "(N,0)";
}

std::vector<GeneratorCase> generator_catalog() {
  std::vector<GeneratorCase> out;
  for (int f = 1; f <= 7; ++f) out.push_back(from_family(f));
  return out;
}

GeneratorCase make_case(std::string_view label, std::optional<Rational> r) {
  std::string s;
  for (char ch : label)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::InvalidArgument, "unknown generator case '" + std::string(label) + "': " + why);
  };
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') throw bad("expected (A,B)");
  auto comma = s.find(',');
  if (comma == std::string::npos) throw bad("expected (A,B)");
  std::string a = s.substr(1, comma - 1), b = s.substr(comma + 1, s.size() - comma - 2);

  auto parse_kind = [&](const std::string& t) -> Sl2Kind {
    if (t == "E1") return Sl2Kind::E1;
    if (t == "E3") return Sl2Kind::E3;
    if (t == "N") return Sl2Kind::N;
    if (t == "0") return Sl2Kind::Zero;
    throw bad("unknown element '" + t + "'");
  };
  Sl2Kind first = parse_kind(a);
  Sl2Kind second = Sl2Kind::Zero;
  std::optional<Rational> coeff;
  if (b == "0" || b == "N") {
    second = parse_kind(b);
  } else if (b.size() >= 2 && (b.ends_with("E1") || b.ends_with("E3"))) {
    second = parse_kind(b.substr(b.size() - 2));
    std::string prefix = b.substr(0, b.size() - 2);
    if (prefix.empty())
      coeff = Rational(1);
    else if (prefix != "r")
      coeff = Rational::parse(prefix);
  } else {
    throw bad("unknown element '" + b + "'");
  }
  if (r) coeff = r;

  int family = 0;
  if (first == Sl2Kind::E1 && (second == Sl2Kind::E1 || second == Sl2Kind::Zero)) family = 1;
  else if (first == Sl2Kind::E1 && second == Sl2Kind::E3) family = 2;
  else if (first == Sl2Kind::E1 && second == Sl2Kind::N) family = 3;
  else if (first == Sl2Kind::E3 && (second == Sl2Kind::E3 || second == Sl2Kind::Zero)) family = 4;
  else if (first == Sl2Kind::E3 && second == Sl2Kind::N) family = 5;
  else if (first == Sl2Kind::N && second == Sl2Kind::Zero) family = 6;
  else if (first == Sl2Kind::N && second == Sl2Kind::N) family = 7;
  else throw bad("not one of the seven normal forms");

  GeneratorCase c = from_family(family);
  c.label = s;
  if (c.has_r) {
    if (second == Sl2Kind::Zero) coeff = Rational(0);
    if (coeff && coeff->sign() < 0) throw bad("r must be non-negative");
    if (coeff && family == 2 && coeff->is_zero()) throw bad("r must be positive");
    c.r = coeff;
  }
  return c;
}

std::vector<GeneratorCase> table_rows() {
  std::vector<GeneratorCase> out;
  for (const char* l : {"(E1,2E1)", "(E1,E1)", "(E1,0)", "(E1,2E3)", "(E1,N)", "(E3,2E3)", "(E3,E3)", "(E3,0)",
                        "(E3,N)", "(N,0)", "(N,N)"})
    out.push_back(make_case(l));
  return out;
}

// ---------------------------------------------------------------------------
// Invariant tensors

namespace {

// Nullspace of a rational matrix by reduced row echelon form.
std::vector<Vector> nullspace(Matrix<Rational> a) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    Rational inv = a(r, c).inverse();
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Vector> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vector v(cols);
    v[free] = Rational(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, free);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Matrix<Rational>> invariant_tensor_space(const LieAlgebra& l, const Vector& a) {
  std::size_t n = l.dim();
  Matrix<Rational> ad = ad_matrix(l, a);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<std::size_t>> slot_of(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      slot_of[i][j] = slot_of[j][i] = slots.size();
      slots.emplace_back(i, j);
    }
  // (ad^T g + g ad)_pq = sum_r ad(r,p) g(r,q) + g(p,r) ad(r,q)
  Matrix<Rational> sys(slots.size(), slots.size(), Rational(0));
  for (std::size_t e = 0; e < slots.size(); ++e) {
    auto [p, q] = slots[e];
    for (std::size_t r = 0; r < n; ++r) {
      if (!ad(r, p).is_zero()) sys(e, slot_of[r][q]) += ad(r, p);
      if (!ad(r, q).is_zero()) sys(e, slot_of[p][r]) += ad(r, q);
    }
  }
  std::vector<Matrix<Rational>> basis;
  for (const auto& v : nullspace(sys)) {
    Matrix<Rational> g(n, n, Rational(0));
    for (std::size_t e = 0; e < slots.size(); ++e) {
      g(slots[e].first, slots[e].second) = v[e];
      g(slots[e].second, slots[e].first) = v[e];
    }
    basis.push_back(std::move(g));
  }
  return basis;
}

bool is_invariant(const LieAlgebra& l, const Vector& a, const Matrix<Rational>& g) {
  if (!g.is_symmetric()) return false;
  Matrix<Rational> ad = ad_matrix(l, a);
  return (ad.transpose() * g + g * ad).is_zero_matrix();
}

// ---------------------------------------------------------------------------
// Templates

VarTablePtr einstein_variables() {
  static const VarTablePtr table = [] {
    auto names = VariableTable::standard_order()->names();
    names.push_back("s");
    return std::make_shared<const VariableTable>(names);
  }();
  return table;
}

VarTablePtr q_block_variables() {
  static const VarTablePtr table = std::make_shared<const VariableTable>(std::vector<std::string>{"x", "y", "z", "s"});
  return table;
}

namespace {

using StringMatrix = std::vector<std::vector<std::string>>;

StringMatrix q_strings(int i, const std::string& x, const std::string& y, const std::string& z) {
  switch (i) {
    case 1: return {{x, "0", "0"}, {"0", y, "0"}, {"0", "0", z}};
    case 2: return {{"-" + x, y, "0"}, {y, x, "0"}, {"0", "0", z}};
    case 3: return {{"-1/2 - " + x, "-1/2", "0"}, {"-1/2", "-1/2 + " + x, "0"}, {"0", "0", y}};
    case 4: return {{"1/2 - " + x, "1/2", "0"}, {"1/2", "1/2 + " + x, "0"}, {"0", "0", y}};
    case 5: return {{"-" + x, "0", "s"}, {"0", x, "s"}, {"s", "s", x}};
    default: throw Error(ErrorCode::InvalidArgument, "Q block index must be 1..5");
  }
}

const StringMatrix* row_template(const std::string& row) {
  static const std::map<std::string, StringMatrix> rows = {
      {"(E1,rE1)",
       {{"x1", "0", "0", "a1", "0", "0"}, {"0", "y1", "0", "0", "0", "0"}, {"0", "0", "y1", "0", "0", "0"},
        {"a1", "0", "0", "x2", "0", "0"}, {"0", "0", "0", "0", "y2", "0"}, {"0", "0", "0", "0", "0", "y2"}}},
      {"(E1,E1)",
       {{"x1", "0", "0", "a1", "0", "0"}, {"0", "y1", "0", "0", "b2", "c2"}, {"0", "0", "y1", "0", "-c2", "b2"},
        {"a1", "0", "0", "x2", "0", "0"}, {"0", "b2", "-c2", "0", "y2", "0"}, {"0", "c2", "b2", "0", "0", "y2"}}},
      {"(E1,0)",
       {{"x1", "0", "0", "a1", "b1", "c1"}, {"0", "y1", "0", "0", "0", "0"}, {"0", "0", "y1", "0", "0", "0"},
        {"a1", "0", "0", "Q", "Q", "Q"}, {"b1", "0", "0", "Q", "Q", "Q"}, {"c1", "0", "0", "Q", "Q", "Q"}}},
      {"(E1,rE3)",
       {{"x1", "0", "0", "0", "0", "c1"}, {"0", "y1", "0", "0", "0", "0"}, {"0", "0", "y1", "0", "0", "0"},
        {"0", "0", "0", "x2", "0", "0"}, {"0", "0", "0", "0", "-x2", "0"}, {"c1", "0", "0", "0", "0", "z2"}}},
      {"(E1,N)",
       {{"x1", "0", "0", "a1", "a1", "0"},
        {"0", "y1", "0", "0", "0", "0"},
        {"0", "0", "y1", "0", "0", "0"},
        {"a1", "0", "0", "x2", "1/2*x2 + 1/2*y2", "0"},
        {"a1", "0", "0", "1/2*x2 + 1/2*y2", "y2", "0"},
        {"0", "0", "0", "0", "0", "-1/2*x2 + 1/2*y2"}}},
      {"(E3,rE3)",
       {{"x1", "0", "0", "0", "0", "0"}, {"0", "-x1", "0", "0", "0", "0"}, {"0", "0", "z1", "0", "0", "c3"},
        {"0", "0", "0", "x2", "0", "0"}, {"0", "0", "0", "0", "-x2", "0"}, {"0", "0", "c3", "0", "0", "z2"}}},
      {"(E3,E3)",
       {{"x1", "0", "0", "a1", "b1", "0"}, {"0", "-x1", "0", "-b1", "-a1", "0"}, {"0", "0", "z1", "0", "0", "c3"},
        {"a1", "-b1", "0", "x2", "0", "0"}, {"b1", "-a1", "0", "0", "-x2", "0"}, {"0", "0", "c3", "0", "0", "z2"}}},
      {"(E3,0)",
       {{"x1", "0", "0", "0", "0", "0"}, {"0", "-x1", "0", "0", "0", "0"}, {"0", "0", "z1", "a3", "b3", "c3"},
        {"0", "0", "a3", "Q", "Q", "Q"}, {"0", "0", "b3", "Q", "Q", "Q"}, {"0", "0", "c3", "Q", "Q", "Q"}}},
      {"(E3,N)",
       {{"x1", "0", "0", "0", "0", "0"},
        {"0", "-x1", "0", "0", "0", "0"},
        {"0", "0", "z1", "a3", "a3", "0"},
        {"0", "0", "a3", "x2", "1/2*x2 + 1/2*y2", "0"},
        {"0", "0", "a3", "1/2*x2 + 1/2*y2", "y2", "0"},
        {"0", "0", "0", "0", "0", "-1/2*x2 + 1/2*y2"}}},
      {"(N,0)",
       {{"x1", "1/2*x1 + 1/2*y1", "0", "a1", "b1", "c1"},
        {"1/2*x1 + 1/2*y1", "y1", "0", "a1", "b1", "c1"},
        {"0", "0", "-1/2*x1 + 1/2*y1", "0", "0", "0"},
        {"a1", "a1", "0", "Q", "Q", "Q"},
        {"b1", "b1", "0", "Q", "Q", "Q"},
        {"c1", "c1", "0", "Q", "Q", "Q"}}},
      {"(N,N)",
       {{"x1", "1/2*x1 + 1/2*y1", "0", "a1", "b1", "c1"},
        {"1/2*x1 + 1/2*y1", "y1", "0", "b1", "-a1 + 2*b1", "c1"},
        {"0", "0", "-1/2*x1 + 1/2*y1", "-c1", "-c1", "-a1 + b1"},
        {"a1", "b1", "-c1", "x2", "1/2*x2 + 1/2*y2", "0"},
        {"b1", "-a1 + 2*b1", "-c1", "1/2*x2 + 1/2*y2", "y2", "0"},
        {"c1", "c1", "-a1 + b1", "0", "0", "-1/2*x2 + 1/2*y2"}}},
  };
  auto it = rows.find(row);
  return it == rows.end() ? nullptr : &it->second;
}

}  // namespace

Matrix<Polynomial> q_block_ansatz(int i) {
  auto s = q_strings(i, "x", "y", "z");
  Matrix<Polynomial> q(3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) q(a, b) = parse_polynomial(s[a][b], q_block_variables());
  return q;
}

MetricAnsatz table_template(const GeneratorCase& c, int q) {
  std::string row = c.row_label();
  const StringMatrix* t = row_template(row);
  if (!t) throw Error(ErrorCode::Internal, "no template for row " + row);
  StringMatrix m = *t;
  if (c.uses_q_block()) {
    auto qs = q_strings(q, "x2", "y2", "z2");
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) m[3 + a][3 + b] = qs[a][b];
  }
  return make_ansatz(m, einstein_variables());
}

// ---------------------------------------------------------------------------
// Assembly

std::vector<Polynomial> EinsteinSystem::all() const {
  std::vector<Polynomial> out = equations;
  out.push_back(det_constraint);
  out.insert(out.end(), relations.begin(), relations.end());
  return out;
}

EinsteinSystem assemble_einstein_system(const LieAlgebra& l, const MetricAnsatz& g, int det_sign) {
  if (det_sign != 1 && det_sign != -1) throw Error(ErrorCode::InvalidArgument, "det sign must be +1 or -1");
  auto lam_index = g.vars->index_of("l");
  if (!lam_index) throw Error(ErrorCode::MissingVariable, "variable table has no Einstein constant 'l'");
  for (std::size_t v : g.parameters())
    if (v == *lam_index) throw Error(ErrorCode::InvalidArgument, "metric entries may not involve l");

  SymbolicCurvature sc = symbolic_ricci(l, g);
  Polynomial lam = Polynomial::variable(g.vars, *lam_index);
  EinsteinSystem sys;
  sys.det_sign = det_sign;
  std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // S = det^k S' with k <= 2 gives S' - 4 det^(2-k) l g; modulo det - det_sign
      // the remaining det powers are the constant det_sign^(2-k).
      Polynomial e = sc.s(i, j);
      int k = 0;
      while (k < 2 && !e.is_zero() && !sc.det.is_constant()) {
        auto q = e.divide_exact(sc.det);
        if (!q) break;
        e = std::move(*q);
        ++k;
      }
      Rational c(k == 1 ? 4 * det_sign : 4);
      if (sc.det.is_constant()) c = Rational(4) * sc.det.constant_value() * sc.det.constant_value();
      e -= (lam * g.g(i, j)).scaled(c);
      sys.equations.push_back(std::move(e));
    }
  sys.det_constraint = sc.det - Polynomial(g.vars, Rational(det_sign));
  if (auto s = g.vars->index_of("s")) {
    bool uses_s = false;
    for (std::size_t v : g.parameters()) uses_s = uses_s || v == *s;
    if (uses_s) {
      Polynomial sv = Polynomial::variable(g.vars, *s);
      sys.relations.push_back((sv * sv).scaled(Rational(2)) - Polynomial(g.vars, Rational(1)));
    }
  }
  return sys;
}

std::optional<std::map<std::size_t, QuadExt>> match_template(const MetricAnsatz& a, const Matrix<QuadExt>& g) {
  if (g.rows() != a.g.rows() || g.cols() != a.g.cols()) return std::nullopt;
  std::map<std::size_t, QuadExt> values;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Polynomial& p = a.g(i, j);
      if (p.size() != 1 || p.terms()[0].mono.degree() != 1) continue;
      std::size_t v = p.variables().front();
      if (!values.count(v)) values[v] = g(i, j) / QuadExt(p.terms()[0].coeff);
    }
  std::vector<std::optional<QuadExt>> vals(kMaxVariables);
  for (const auto& [v, x] : values) vals[v] = x;
  try {
    if (!(instantiate<QuadExt>(a, vals) == g)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return values;
}

bool system_vanishes_at(const EinsteinSystem& sys, const MetricAnsatz& a, const Matrix<QuadExt>& g,
                        const QuadExt& lambda) {
  auto values = match_template(a, g);
  if (!values) return false;
  std::vector<std::optional<QuadExt>> vals(kMaxVariables);
  for (const auto& [v, x] : *values) vals[v] = x;
  vals[a.vars->require("l")] = lambda;
  for (const auto& p : sys.all())
    if (!evaluate<QuadExt>(p, vals).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Case pipeline

namespace {

// Keeps the relative order of the einstein table, dropping unused names.
VarTablePtr compact_table(const std::vector<Polynomial>& polys, const VarTablePtr& full) {
  std::array<bool, kMaxVariables> used{};
  for (const auto& p : polys)
    for (auto v : p.variables()) used[v] = true;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < full->size(); ++v)
    if (used[v]) names.push_back(full->name(v));
  return std::make_shared<const VariableTable>(names);
}

std::string q_suffix(const GeneratorCase& c, int q) {
  return c.uses_q_block() ? " Q" + std::to_string(q) : "";
}

}  // namespace

CaseResult solve_case(const GeneratorCase& c, const SolveOptions& options) {
  CaseResult result;
  result.label = c.label;
  result.det_sign = options.det_sign;
  LieAlgebra l = direct_sum(sl2(), sl2());

  std::vector<int> qs = {1};
  if (c.uses_q_block()) qs = options.q_blocks.empty() ? std::vector<int>{1, 2, 3, 4, 5} : options.q_blocks;

  for (int q : qs) {
    MetricAnsatz ansatz = table_template(c, q);
    // The template must consist of invariant tensors when r is known.
    if (!c.has_r || c.r) {
      Vector a = c.element();
      std::vector<std::optional<Rational>> zero(kMaxVariables, Rational(0));
      Matrix<Rational> base = instantiate<Rational>(ansatz, zero);
      for (std::size_t v : ansatz.parameters()) {
        if (ansatz.vars->name(v) == "s") continue;
        auto vals = zero;
        vals[v] = Rational(1);
        if (!is_invariant(l, a, instantiate<Rational>(ansatz, vals) - base))
          throw Error(ErrorCode::Internal, "template of " + c.row_label() + " is not invariant");
      }
    }
    EinsteinSystem sys = assemble_einstein_system(l, ansatz, options.det_sign);
    std::vector<Polynomial> gens = sys.all();
    VarTablePtr table = compact_table(gens, ansatz.vars);
    for (auto& p : gens) p = p.rebase(table);

    GroebnerBasis basis;
    try {
      basis = buchberger(gens, options.groebner);
    } catch (const BudgetExceeded& e) {
      result.budget_exceeded = true;
      result.message = e.what();
      result.stats = e.partial().stats;
      result.residuals.push_back(e.partial().polys);
      continue;
    }
    result.stats = basis.stats;
    result.basis_size += basis.polys.size();
    BackSolveResult bs = back_solve(basis);
    for (const auto& br : bs.branches) {
      if (!br.fully_determined()) {
        std::vector<Polynomial> res = br.residuals;
        if (res.empty()) {
          for (const auto& [var, v] : br.values)
            if (v.kind == BranchValue::Kind::Free)
              res.push_back(Polynomial::variable(table, var));  // free parameter left open
        }
        result.residuals.push_back(std::move(res));
        continue;
      }
      std::map<std::string, QSqrt3> values;
      for (const auto& [var, v] : br.values) values[table->name(var)] = v.value;
      SolutionRecord rec;
      rec.case_label = c.label;
      rec.name = c.row_label() + q_suffix(c, q);
      rec.metric = ansatz.g.map([&](const Polynomial& p) { return QuadExt(poly_eval(p.rebase(table), values)); });
      rec.lambda = values.count("l") ? values["l"] : QSqrt3();
      if (c.r) rec.parameters["r"] = c.r->str();
      if (c.uses_q_block()) rec.parameters["Q"] = std::to_string(q);
      finalize_record(rec);
      if (rec.lambda.sign() > 0) rec = negate_metric(rec);
      if (auto known = known_metric_name(rec.metric); !known.empty()) rec.name = known;
      bool dup = false;
      for (const auto& s : result.solutions) dup = dup || (s.metric == rec.metric && s.lambda == rec.lambda);
      if (!dup) result.solutions.push_back(std::move(rec));
    }
  }
  return result;
}

}  // namespace curvlie
