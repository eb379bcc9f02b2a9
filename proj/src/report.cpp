#include "curvlie/report.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>

namespace curvlie {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Encodings

ojson to_json(const QSqrt3& x) { return ojson{{"a", x.a().str()}, {"b", x.b().str()}}; }

ojson to_json(const QuadExt& x) {
  if (x.b().is_zero()) return to_json(x.a());
  return ojson{{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"d", to_json(x.radicand())}};
}

QSqrt3 qsqrt3_from_json(const ojson& j) {
  if (j.is_string()) return parse_qsqrt3(j.get<std::string>());
  if (j.is_number_integer()) return QSqrt3(Rational(j.get<long>()));
  if (j.is_object() && j.contains("a") && j.contains("b"))
    return QSqrt3(Rational::parse(j.at("a").get<std::string>()), Rational::parse(j.at("b").get<std::string>()));
  throw Error(ErrorCode::Parse, "expected a Q(sqrt3) value, got " + j.dump());
}

namespace {

template <class T, class F>
ojson matrix_json(const Matrix<T>& m, F&& enc) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(enc(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson quad_matrix(const Matrix<QuadExt>& m) {
  return matrix_json(m, [](const QuadExt& x) { return to_json(x); });
}

ojson qs3_matrix(const Matrix<QSqrt3>& m) {
  return matrix_json(m, [](const QSqrt3& x) { return to_json(x); });
}

ojson rational_matrix(const Matrix<Rational>& m) {
  return matrix_json(m, [](const Rational& x) { return x.str(); });
}

ojson stats_json(const GroebnerStats& s) {
  return ojson{{"pairs_processed", s.pairs_processed},
               {"pairs_skipped_coprime", s.pairs_skipped_coprime},
               {"pairs_skipped_chain", s.pairs_skipped_chain},
               {"zero_reductions", s.zero_reductions},
               {"peak_monomials", s.peak_monomials}};
}

ojson poly_list(const std::vector<Polynomial>& ps) {
  ojson out = ojson::array();
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

}  // namespace

ojson to_json(const SolutionRecord& s) {
  ojson params = ojson::object();
  for (const auto& [k, v] : s.parameters) params[k] = v;
  return ojson{{"case", s.case_label},   {"name", s.name},   {"metric", quad_matrix(s.metric)},
               {"lambda", to_json(s.lambda)}, {"det", to_json(s.det)}, {"index", s.index},
               {"parameters", params},   {"verified", s.verified}};
}

// ---------------------------------------------------------------------------
// Inputs

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ojson read_json(const std::string& path) {
  try {
    return ojson::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

LieAlgebra load_algebra(const RunConfig& c) {
  auto it = c.inputs.find("algebra");
  if (it == c.inputs.end()) return direct_sum(sl2(), sl2());
  return lie_algebra_from_json(read_file(it->second));
}

std::string entry_string(const ojson& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long>());
  throw Error(ErrorCode::Parse, "metric entries must be strings or integers, got " + e.dump());
}

// Accepts [[...], ...] or {"variables": [...], "metric": [[...], ...]}.
std::pair<std::vector<std::vector<std::string>>, std::vector<std::string>> load_metric_strings(const std::string& path) {
  ojson j = read_json(path);
  std::vector<std::string> vars;
  ojson rows = j;
  if (j.is_object()) {
    if (!j.contains("metric")) throw Error(ErrorCode::Parse, path + ": missing \"metric\"");
    rows = j.at("metric");
    if (j.contains("variables"))
      for (const auto& v : j.at("variables")) vars.push_back(v.get<std::string>());
  }
  if (!rows.is_array()) throw Error(ErrorCode::Parse, path + ": metric must be an array of rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(ErrorCode::Parse, path + ": metric rows must be arrays");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(entry_string(e));
    out.push_back(std::move(r));
  }
  if (vars.empty()) {
    // Identifiers in order of first appearance.
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    for (const auto& row : out)
      for (const auto& e : row)
        for (auto it = std::sregex_iterator(e.begin(), e.end(), ident); it != std::sregex_iterator(); ++it)
          if (std::find(vars.begin(), vars.end(), it->str()) == vars.end()) vars.push_back(it->str());
  }
  return {out, vars};
}

std::map<std::string, QSqrt3> parse_assignments(const std::string& text) {
  std::map<std::string, QSqrt3> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected name=value in --eval, got '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    out[name] = parse_qsqrt3(item.substr(eq + 1));
  }
  return out;
}

const std::string& first_argument(const RunConfig& c, const char* what) {
  if (c.arguments.empty()) throw Error(ErrorCode::InvalidArgument, std::string("missing ") + what);
  return c.arguments.front();
}

// ---------------------------------------------------------------------------
// Commands

void run_curvature(const RunConfig& c, Report& r) {
  LieAlgebra l = load_algebra(c);
  auto mit = c.inputs.find("metric");
  if (mit == c.inputs.end()) throw Error(ErrorCode::InvalidArgument, "curvature needs a metric file");
  auto [entries, names] = load_metric_strings(mit->second);
  auto vars = std::make_shared<const VariableTable>(names);
  MetricAnsatz a = make_ansatz(entries, vars);
  if (a.g.rows() != l.dim()) throw Error(ErrorCode::InvalidArgument, "metric size does not match the algebra");

  auto values = parse_assignments(c.eval);
  if (vars->index_of("sqrt3") && !values.count("sqrt3")) values["sqrt3"] = QSqrt3(Rational(0), Rational(1));
  bool numeric = true;
  for (std::size_t v : a.parameters()) numeric = numeric && values.count(vars->name(v));
  bool want_ricci = c.ricci || (!c.nabla_r && !c.signature);

  r.body["dim"] = l.dim();
  r.body["variables"] = names;
  if (!numeric) {
    if (c.nabla_r || c.signature)
      throw Error(ErrorCode::InvalidArgument, "--nabla-r and --signature need values for every variable (--eval)");
    std::map<std::size_t, Rational> fixed;
    for (const auto& [name, v] : values) {
      auto idx = vars->index_of(name);
      if (!idx) throw Error(ErrorCode::MissingVariable, "metric has no variable '" + name + "'");
      if (!v.is_rational()) throw Error(ErrorCode::InvalidArgument, "symbolic evaluation takes rational values only");
      fixed[*idx] = v.a();
    }
    MetricAnsatz s = a;
    s.g = a.g.map([&](const Polynomial& p) { return p.specialize(fixed); });
    r.body["mode"] = "symbolic";
    r.body["ricci"] = matrix_json(ricci_tensor(l, s), [](const RationalFunction& f) { return f.str(); });
    return;
  }
  std::vector<std::optional<QSqrt3>> vals(kMaxVariables);
  for (const auto& [name, v] : values) {
    auto idx = vars->index_of(name);
    if (!idx) throw Error(ErrorCode::MissingVariable, "metric has no variable '" + name + "'");
    vals[*idx] = v;
  }
  Matrix<QSqrt3> g = instantiate<QSqrt3>(a, vals);
  if (is_zero(field_determinant(g))) throw Error(ErrorCode::Singular, "metric is degenerate at the given values");
  auto d = compute_curvature(l, g);
  r.body["mode"] = "exact";
  r.body["metric"] = qs3_matrix(g);
  if (want_ricci) r.body["ricci"] = qs3_matrix(d.ricci);
  if (c.nabla_r) {
    auto nr = cov_deriv_riemann(d.omega, d.riemann);
    ojson comps = ojson::array();
    std::size_t n = l.dim();
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t a1 = 0; a1 < n; ++a1)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
              if (!nr(m, a1, i, j, k).is_zero())
                comps.push_back(ojson{{"index", {m, a1, i, j, k}}, {"value", to_json(nr(m, a1, i, j, k))}});
    r.body["nabla_r"] = ojson{{"vanishes", comps.empty()}, {"nonzero", comps.size()}, {"components", comps}};
  }
  if (c.signature) {
    Inertia in = signature_index(g);
    r.body["signature"] = ojson{{"negatives", in.negatives}, {"positives", in.positives}, {"zeros", in.zeros}};
  }
}

void run_groebner(const RunConfig& c, Report& r) {
  ojson j = read_json(first_argument(c, "ideal file"));
  if (!j.contains("variables") || !j.contains("polynomials"))
    throw Error(ErrorCode::Parse, "ideal file needs \"variables\" and \"polynomials\"");
  std::vector<std::string> names = j.at("variables").get<std::vector<std::string>>();
  auto vars = std::make_shared<const VariableTable>(names);
  std::vector<Polynomial> gens;
  for (const auto& p : j.at("polynomials")) gens.push_back(parse_polynomial(p.get<std::string>(), vars));
  GroebnerOptions opt;
  std::string order = j.value("order", "lex");
  if (order == "grevlex") opt.order = MonomialOrder::GrevLex;
  else if (order != "lex") throw Error(ErrorCode::InvalidArgument, "order must be lex or grevlex");
  opt.budget = c.budget;
  opt.jobs = c.jobs;
  opt.certificate = c.certificate;
  r.body["variables"] = names;
  r.body["order"] = order;
  GroebnerBasis basis;
  try {
    basis = buchberger(gens, opt);
  } catch (const BudgetExceeded& e) {
    r.status = "partial";
    r.exit_code = 1;
    r.body["message"] = e.what();
    r.body["partial"] = poly_list(e.partial().polys);
    r.body["stats"] = stats_json(e.partial().stats);
    return;
  }
  r.body["basis"] = poly_list(basis.polys);
  r.body["stats"] = stats_json(basis.stats);
  if (c.certificate) {
    ojson pairs = ojson::array();
    for (const auto& p : basis.certificate)
      pairs.push_back(ojson{{"i", p.i}, {"j", p.j}, {"hash", hex64(p.hash)}, {"zero", p.reduces_to_zero}});
    r.body["certificate"] = ojson{{"digest", hex64(basis.certificate_digest)}, {"pairs", pairs}};
  }
}

std::optional<Rational> single_r(const RunConfig& c) {
  if (c.r_samples.size() > 1) throw Error(ErrorCode::InvalidArgument, "give a single --r");
  if (c.r_samples.empty()) return std::nullopt;
  return c.r_samples.front();
}

bool template_contained(const GeneratorCase& gc, const std::vector<Matrix<Rational>>& basis, int q) {
  // Coefficient matrices of the template must be invariant; the span check
  // follows from invariance.
  LieAlgebra l = direct_sum(sl2(), sl2());
  MetricAnsatz a = table_template(gc, q);
  std::vector<std::optional<Rational>> zero(kMaxVariables, Rational(0));
  Matrix<Rational> base = instantiate<Rational>(a, zero);
  if (!base.is_zero_matrix() && !is_invariant(l, gc.element(), base)) return false;
  for (std::size_t v : a.parameters()) {
    if (a.vars->name(v) == "s") continue;
    auto vals = zero;
    vals[v] = Rational(1);
    if (!is_invariant(l, gc.element(), instantiate<Rational>(a, vals) - base)) return false;
  }
  return !basis.empty();
}

void run_invariant_space(const RunConfig& c, Report& r) {
  GeneratorCase gc = make_case(first_argument(c, "case label"), single_r(c));
  LieAlgebra l = direct_sum(sl2(), sl2());
  Vector a = gc.element();
  auto basis = invariant_tensor_space(l, a);
  ojson elem = ojson::array();
  for (const auto& x : a) elem.push_back(x.str());
  ojson mats = ojson::array();
  for (const auto& b : basis) mats.push_back(rational_matrix(b));
  r.body["case"] = gc.label;
  r.body["row"] = gc.row_label();
  r.body["element"] = elem;
  r.body["dimension"] = basis.size();
  bool contained = true;
  for (int q : gc.uses_q_block() ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{1})
    contained = contained && template_contained(gc, basis, q);
  r.body["template_contained"] = contained;
  r.body["basis"] = mats;
}

std::vector<GeneratorCase> expand_cases(const RunConfig& c) {
  std::vector<GeneratorCase> out;
  for (const auto& label : c.arguments) {
    GeneratorCase base = make_case(label);
    if (!base.has_r || base.r) {
      if (!c.r_samples.empty() && base.has_r)
        for (const auto& rv : c.r_samples) out.push_back(make_case(label, rv));
      else
        out.push_back(base);
      continue;
    }
    std::vector<Rational> samples = c.r_samples;
    if (samples.empty()) samples = {Rational(2), Rational(3), Rational(1, 2)};
    for (const auto& rv : samples) out.push_back(make_case(label, rv));
  }
  return out;
}

void run_solve(const RunConfig& c, Report& r) {
  if (c.arguments.empty()) throw Error(ErrorCode::InvalidArgument, "missing case label");
  std::vector<GeneratorCase> cases = expand_cases(c);
  SolveOptions opt;
  opt.det_sign = c.det_sign;
  opt.groebner.budget = c.budget;
  opt.groebner.jobs = cases.size() == 1 ? c.jobs : 1;
  opt.q_blocks = c.q_blocks;

  std::vector<CaseResult> results(cases.size());
  std::vector<std::string> errors(cases.size());
  std::size_t width = std::max(1u, c.jobs);
  for (std::size_t start = 0; start < cases.size(); start += width) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < std::min(cases.size(), start + width); ++i)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, [&, i] {
        results[i] = solve_case(cases[i], opt);
      }));
    for (auto& f : batch) f.get();
  }

  ojson arr = ojson::array();
  bool all_solved = true;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& res = results[i];
    bool verified = std::all_of(res.solutions.begin(), res.solutions.end(),
                                [](const SolutionRecord& s) { return s.verified; });
    std::string status = res.solved() && verified ? "solved" : "partial";
    all_solved = all_solved && status == "solved";
    ojson sols = ojson::array();
    for (const auto& s : res.solutions) sols.push_back(to_json(s));
    ojson residuals = ojson::array();
    for (const auto& rs : res.residuals) residuals.push_back(poly_list(rs));
    ojson entry{{"case", cases[i].label}, {"row", cases[i].row_label()}, {"status", status}};
    if (cases[i].r) entry["r"] = cases[i].r->str();
    entry["det_sign"] = res.det_sign;
    entry["solutions"] = sols;
    entry["residuals"] = residuals;
    entry["basis_size"] = res.basis_size;
    entry["stats"] = stats_json(res.stats);
    if (!res.message.empty()) entry["message"] = res.message;
    arr.push_back(std::move(entry));
  }
  r.body["cases"] = arr;
  r.status = all_solved ? "solved" : "partial";
  r.exit_code = all_solved ? 0 : 1;
}

void run_verify(const RunConfig& c, Report& r) {
  if (c.catalog) {
    std::vector<SolutionRecord> records = known_solution_catalog();
    ojson fams = ojson::array();
    bool ok = true;
    for (FamilyId id : {FamilyId::E1E1_1, FamilyId::E1E1_2, FamilyId::E3E3_1, FamilyId::E3E3_2, FamilyId::NN_1,
                        FamilyId::NN_2}) {
      auto grid = family_grid(id, family_samples(id));
      bool grid_ok = true, witnesses = true;
      for (const auto& s : grid) {
        grid_ok = grid_ok && s.verified && s.det == QuadExt(1) && s.index == 2;
        witnesses = witnesses && orbit_reduction_witness(id, std::stoi(s.parameters.at("k")),
                                                         Rational::parse(s.parameters.at(family_parameter(id))),
                                                         s.family->branch)
                                     .ok();
      }
      bool symbolic = verify_family_symbolic(id);
      ok = ok && grid_ok && witnesses && symbolic;
      fams.push_back(ojson{{"family", to_string(id)},
                           {"case", family_case(id)},
                           {"grid_points", grid.size()},
                           {"grid_verified", grid_ok},
                           {"symbolic", symbolic},
                           {"orbit_witnesses", witnesses}});
    }
    ojson recs = ojson::array();
    for (const auto& s : records) {
      ok = ok && s.verified;
      recs.push_back(to_json(s));
    }
    r.body["records"] = recs;
    r.body["families"] = fams;
    r.status = ok ? "verified" : "failed";
    r.exit_code = ok ? 0 : 1;
    return;
  }
  auto mit = c.inputs.find("metric");
  if (mit == c.inputs.end()) throw Error(ErrorCode::InvalidArgument, "verify needs --catalog or --metric <file>");
  if (!c.lambda) throw Error(ErrorCode::InvalidArgument, "verify --metric needs --lambda");
  LieAlgebra l = load_algebra(c);
  auto [entries, names] = load_metric_strings(mit->second);
  Matrix<QSqrt3> g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != entries.size()) throw Error(ErrorCode::InvalidArgument, "metric must be square");
    for (std::size_t j = 0; j < entries.size(); ++j) g(i, j) = parse_qsqrt3(entries[i][j]);
  }
  if (g.rows() != l.dim()) throw Error(ErrorCode::InvalidArgument, "metric size does not match the algebra");
  QSqrt3 lam = parse_qsqrt3(*c.lambda);
  bool ok = verify_einstein(l, g, lam);
  Inertia in = signature_index(g);
  r.body["metric"] = qs3_matrix(g);
  r.body["lambda"] = to_json(lam);
  r.body["det"] = to_json(field_determinant(g));
  r.body["index"] = in.negatives;
  r.body["verified"] = ok;
  r.status = ok ? "verified" : "failed";
  r.exit_code = ok ? 0 : 1;
}

void run_catalog(const RunConfig&, Report& r) {
  ojson sols = ojson::array();
  for (const auto& s : known_solution_catalog()) sols.push_back(to_json(s));
  ojson fams = ojson::array();
  for (FamilyId id : {FamilyId::E1E1_1, FamilyId::E1E1_2, FamilyId::E3E3_1, FamilyId::E3E3_2, FamilyId::NN_1,
                      FamilyId::NN_2}) {
    ojson branches = ojson::array();
    for (int b : family_has_branches(id) ? std::vector<int>{1, -1} : std::vector<int>{1})
      branches.push_back(ojson{{"branch", b > 0 ? "+" : "-"}, {"template", family_template_strings(id, b)}});
    fams.push_back(ojson{{"family", to_string(id)},
                         {"case", family_case(id)},
                         {"parameter", family_parameter(id)},
                         {"lambda", to_json(family_lambda(id))},
                         {"branches", branches}});
  }
  r.body["solutions"] = sols;
  r.body["families"] = fams;
}

}  // namespace

Report run(const RunConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = config.subcommand;
  RunConfig c = config;
  if (c.budget.max_megabytes == 0)
    if (const char* mb = std::getenv("CURVLIE_BUDGET_MB")) c.budget.max_megabytes = std::strtoull(mb, nullptr, 10);
  try {
    if (c.det_sign != 1 && c.det_sign != -1) throw Error(ErrorCode::InvalidArgument, "det sign must be +1 or -1");
    if (c.subcommand.empty()) {
      // empty run
    } else if (c.subcommand == "curvature") {
      run_curvature(c, r);
    } else if (c.subcommand == "groebner") {
      run_groebner(c, r);
    } else if (c.subcommand == "invariant-space") {
      run_invariant_space(c, r);
    } else if (c.subcommand == "solve") {
      run_solve(c, r);
    } else if (c.subcommand == "verify") {
      run_verify(c, r);
    } else if (c.subcommand == "catalog") {
      run_catalog(c, r);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + c.subcommand + "'");
    }
  } catch (const Error& e) {
    r.status = "error";
    r.exit_code = 2;
    r.body = ojson{{"error", ojson{{"code", to_string(e.code())}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    r.status = "error";
    r.exit_code = 2;
    r.body = ojson{{"error", ojson{{"code", "internal"}, {"message", e.what()}}}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

bool is_qs3_object(const ojson& j) { return j.is_object() && j.size() == 2 && j.contains("a") && j.contains("b"); }

std::string scalar_text(const ojson& j) {
  if (is_qs3_object(j)) {
    if (j.at("a").is_object()) return "(" + scalar_text(j.at("a")) + ")";
    return qsqrt3_from_json(j).str();
  }
  if (j.is_object() && j.contains("d"))
    return "(" + scalar_text(j.at("a")) + ") + (" + scalar_text(j.at("b")) + ")*sqrt(" + scalar_text(j.at("d")) + ")";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_scalar(const ojson& j) { return !j.is_structured() || is_qs3_object(j) || (j.is_object() && j.contains("d") && j.size() == 3); }

bool is_row(const ojson& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!is_scalar(e)) return false;
  return true;
}

void text_render(std::ostringstream& os, const std::string& key, const ojson& j, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (is_scalar(j)) {
    os << pad << key << ": " << scalar_text(j) << "\n";
  } else if (is_row(j)) {
    os << pad << key << ": [";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_text(j[i]);
    os << "]\n";
  } else if (j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), is_row)) {
    os << pad << key << ":\n";
    for (const auto& row : j) {
      os << pad << "  ";
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << scalar_text(row[i]);
      os << "\n";
    }
  } else if (j.is_array()) {
    os << pad << key << ": " << j.size() << " item(s)\n";
    for (std::size_t i = 0; i < j.size(); ++i) text_render(os, "- [" + std::to_string(i) + "]", j[i], depth + 1);
  } else {
    os << pad << key << ":\n";
    for (auto it = j.begin(); it != j.end(); ++it) text_render(os, it.key(), it.value(), depth + 1);
  }
}

}  // namespace

std::string emit_report(const Report& report, OutputFormat format, int verbosity) {
  ojson out{{"schema", kReportSchema}, {"command", report.command}, {"status", report.status},
            {"exit_code", report.exit_code}};
  for (auto it = report.body.begin(); it != report.body.end(); ++it) out[it.key()] = it.value();
  if (verbosity > 0) out["timing"] = ojson{{"seconds", report.seconds}};
  if (format == OutputFormat::Json) return out.dump(2) + "\n";
  std::ostringstream os;
  for (auto it = out.begin(); it != out.end(); ++it) text_render(os, it.key(), it.value(), 0);
  return os.str();
}

}  // namespace curvlie
