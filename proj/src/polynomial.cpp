#include "curvlie/polynomial.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace curvlie {

// ---------------------------------------------------------------------------
// VariableTable

VariableTable::VariableTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw Error(ErrorCode::InvalidArgument, "at most " + std::to_string(kMaxVariables) + " variables");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error(ErrorCode::InvalidArgument, "duplicate variable " + names_[i]);
  }
}

std::shared_ptr<const VariableTable> VariableTable::standard_order() {
  static const auto table = std::make_shared<const VariableTable>(std::vector<std::string>{
      "l", "x1", "y1", "z1", "x2", "y2", "z2", "u1", "v1", "w1", "u2", "v2", "w2",
      "a1", "b1", "c1", "a2", "b2", "c2", "a3", "b3", "c3"});
  return table;
}

std::optional<std::size_t> VariableTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VariableTable::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw Error(ErrorCode::MissingVariable, "unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned v) {
  if (i >= kMaxVariables) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  if (v > 255) throw Error(ErrorCode::InvalidArgument, "exponent overflow");
  deg_ = static_cast<std::uint16_t>(deg_ - e_[i] + v);
  e_[i] = static_cast<std::uint8_t>(v);
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.e_[i] = std::max(a.e_[i], b.e_[i]);
    d += m.e_[i];
  }
  m.deg_ = static_cast<std::uint16_t>(d);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned v = unsigned(a.e_[i]) + b.e_[i];
    if (v > 255) throw Error(ErrorCode::InvalidArgument, "exponent overflow");
    m.e_[i] = static_cast<std::uint8_t>(v);
  }
  m.deg_ = static_cast<std::uint16_t>(a.deg_ + b.deg_);
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = static_cast<std::uint8_t>(a.e_[i] - b.e_[i]);
  m.deg_ = static_cast<std::uint16_t>(a.deg_ - b.deg_);
  return m;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
  for (std::size_t i = kMaxVariables; i-- > 0;)
    if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? -1 : 1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : e_) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

int Monomial::last_variable() const {
  for (std::size_t i = kMaxVariables; i-- > 0;)
    if (e_[i]) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool lex_greater(const Term& a, const Term& b) { return lex_compare(a.mono, b.mono) > 0; }

}  // namespace

VarTablePtr Polynomial::merge_tables(const VarTablePtr& a, const VarTablePtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!(*a == *b)) throw Error(ErrorCode::VariableMismatch, "polynomials over different variable tables");
  return a;
}

Polynomial::Polynomial(VarTablePtr vars, const Rational& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(VarTablePtr vars, std::size_t index) {
  if (!vars || index >= vars->size()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Polynomial p(std::move(vars));
  p.terms_.push_back({Monomial::variable(index), Rational(1)});
  return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, std::string_view name) {
  std::size_t i = vars->require(name);
  return variable(std::move(vars), i);
}

Polynomial Polynomial::from_terms(VarTablePtr vars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), lex_greater);
  Polynomial p(std::move(vars));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
    if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  }
  // A zero sum can leave a later equal monomial unmerged; re-merge if needed.
  for (std::size_t i = 1; i < p.terms_.size(); ++i)
    if (p.terms_[i].mono == p.terms_[i - 1].mono) return from_terms(p.vars_, std::move(p.terms_));
  if (p.vars_)
    for (const auto& t : p.terms_)
      if (t.mono.last_variable() >= static_cast<int>(p.vars_->size()))
        throw Error(ErrorCode::InvalidArgument, "monomial uses a variable outside the table");
  return p;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "polynomial is not constant");
  return terms_[0].coeff;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool Polynomial::contains_variable(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var]) return true;
  return false;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::array<bool, kMaxVariables> seen{};
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (t.mono[i]) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

const Term& Polynomial::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
  if (order == MonomialOrder::Lex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (grevlex_compare(t.mono, best->mono) > 0) best = &t;
  return *best;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

// Merges sign-adjusted terms of b into a; both sorted by decreasing lex.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : (j == b.size() ? 1 : lex_compare(a[i].mono, b[j].mono));
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      Rational s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  vars_ = merge_tables(vars_, o.vars_);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  vars_ = merge_tables(vars_, o.vars_);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(Polynomial::merge_tables(a.vars_, b.vars_));
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const auto& x = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
  const auto& y = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
  if (x.size() == 1) {
    out.terms_.reserve(y.size());
    for (const auto& t : y) out.terms_.push_back({x[0].mono * t.mono, x[0].coeff * t.coeff});
    return out;
  }
  // Heap merge of the rows x_i * y (Johnson's method); rows stay sorted
  // because lex order is compatible with multiplication.
  struct Entry {
    Monomial mono;
    std::size_t i, j;
  };
  auto less = [](const Entry& p, const Entry& q) {
    int c = lex_compare(p.mono, q.mono);
    return c != 0 ? c < 0 : p.i > q.i;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less);
  for (std::size_t i = 0; i < x.size(); ++i) heap.push({x[i].mono * y[0].mono, i, 0});
  Rational prod;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    prod = x[e.i].coeff * y[e.j].coeff;
    if (!out.terms_.empty() && out.terms_.back().mono == e.mono) {
      out.terms_.back().coeff += prod;
      if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
    } else {
      out.terms_.push_back({e.mono, prod});
    }
    if (e.j + 1 < y.size()) heap.push({x[e.i].mono * y[e.j + 1].mono, e.i, e.j + 1});
  }
  // Cancellation to zero followed by the same monomial again is impossible:
  // equal monomials pop consecutively from the heap.
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c.is_zero()) return Polynomial(vars_);
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return Polynomial(vars_);
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    t.mono = t.mono * m;
    t.coeff *= c;
  }
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(vars_, Rational(1)), base = *this;
  for (; e; e >>= 1) {
    if (e & 1u) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

Polynomial Polynomial::coefficient_in(std::size_t var, unsigned k) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.mono[var] == k) {
      Monomial m = t.mono;
      m.set(var, 0);
      out.push_back({m, t.coeff});
    }
  return from_terms(vars_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  unsigned d = degree_in(var);
  if (d == 0) return *this;
  std::vector<Polynomial> powers{Polynomial(vars_, Rational(1))};
  for (unsigned k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
  Polynomial out(merge_tables(vars_, value.vars()));
  for (unsigned k = 0; k <= d; ++k) {
    Polynomial c = coefficient_in(var, k);
    if (!c.is_zero()) out += c * powers[k];
  }
  return out;
}

Polynomial Polynomial::specialize(const std::map<std::size_t, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    Rational c = t.coeff;
    for (const auto& [var, val] : values) {
      unsigned e = m[var];
      if (!e) continue;
      c *= val.pow(e);
      m.set(var, 0);
    }
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  return from_terms(vars_, std::move(out));
}

Polynomial Polynomial::rebase(VarTablePtr target) const {
  if (!vars_ || vars_ == target) {
    Polynomial p = *this;
    p.vars_ = std::move(target);
    return p;
  }
  // Only variables that occur need a counterpart in the target.
  std::array<std::size_t, kMaxVariables> map{};
  for (std::size_t i : variables()) map[i] = target->require(vars_->name(i));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < vars_->size(); ++i)
      if (t.mono[i]) m.set(map[i], t.mono[i]);
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& g) const {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Polynomial(merge_tables(vars_, g.vars_));
  const Term& lg = g.terms_.front();
  if (g.terms_.size() == 1) {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!lg.mono.divides(t.mono)) return std::nullopt;
      out.push_back({t.mono / lg.mono, t.coeff / lg.coeff});
    }
    Polynomial q(merge_tables(vars_, g.vars_));
    q.terms_ = std::move(out);
    return q;
  }
  Polynomial rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!lg.mono.divides(lt.mono)) return std::nullopt;
    Monomial m = lt.mono / lg.mono;
    Rational c = lt.coeff / lg.coeff;
    quot.push_back({m, c});
    rem -= g.times_term(m, c);
  }
  Polynomial q(merge_tables(vars_, g.vars_));
  q.terms_ = std::move(quot);  // produced in decreasing order
  return q;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.raw().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.raw().get_den_mpz_t());
  }
  return Rational(mpz_class(abs(g)), l);
}

Polynomial Polynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  if (terms_.front().coeff.sign() < 0) c = -c;
  return scaled(c.inverse());
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(terms_.front().coeff.inverse());
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned e = t.mono[i];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_ ? vars_->name(i) : "v" + std::to_string(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += c.str();
    else if (c.is_one())
      out += mono;
    else
      out += c.str() + "*" + mono;
  }
  return out;
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0;
  for (const auto& t : terms_) h = h * 1000003u ^ (t.mono.hash() + 31u * t.coeff.hash());
  return h;
}

// ---------------------------------------------------------------------------
// Evaluation and division

QSqrt3 poly_eval(const Polynomial& f, const std::map<std::string, QSqrt3>& assignment) {
  std::vector<std::optional<QSqrt3>> values(kMaxVariables);
  if (f.vars())
    for (std::size_t i = 0; i < f.vars()->size(); ++i) {
      auto it = assignment.find(f.vars()->name(i));
      if (it != assignment.end()) values[i] = it->second;
    }
  return evaluate<QSqrt3>(f, values);
}

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors, MonomialOrder order) {
  for (const auto& g : divisors)
    if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  auto cmp = [order](const Monomial& a, const Monomial& b) { return compare(order, a, b) > 0; };
  std::map<Monomial, Rational, decltype(cmp)> work(cmp);
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);
  std::vector<std::vector<Term>> quot(divisors.size());
  std::vector<Term> rem;
  std::vector<const Term*> leads;
  for (const auto& g : divisors) leads.push_back(&g.leading_term(order));
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    std::size_t k = 0;
    while (k < divisors.size() && !leads[k]->mono.divides(m)) ++k;
    if (k == divisors.size()) {
      rem.push_back({m, c});
      continue;
    }
    Monomial qm = m / leads[k]->mono;
    Rational qc = c / leads[k]->coeff;
    quot[k].push_back({qm, qc});
    for (const auto& t : divisors[k].terms()) {
      if (&t == leads[k]) continue;
      Monomial pm = t.mono * qm;
      Rational pc = t.coeff * qc;
      auto [pos, inserted] = work.emplace(pm, -pc);
      if (!inserted) {
        pos->second -= pc;
        if (pos->second.is_zero()) work.erase(pos);
      }
    }
  }
  VarTablePtr vars = f.vars();
  for (const auto& g : divisors)
    if (!vars) vars = g.vars();
  DivisionResult out;
  for (auto& q : quot) out.quotients.push_back(Polynomial::from_terms(vars, std::move(q)));
  out.remainder = Polynomial::from_terms(vars, std::move(rem));
  return out;
}

Polynomial poly_reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, MonomialOrder order) {
  return divide(f, divisors, order).remainder;
}

// ---------------------------------------------------------------------------
// gcd: content / primitive-part recursion on the last occurring variable with
// primitive pseudo-remainder sequences.

namespace {

Polynomial gcd_rec(const Polynomial& f, const Polynomial& g);

int main_variable(const Polynomial& f, const Polynomial& g) {
  int v = -1;
  for (const auto* p : {&f, &g})
    for (const auto& t : p->terms()) v = std::max(v, t.mono.last_variable());
  return v;
}

// Content of f as a polynomial in var: gcd of its coefficients.
Polynomial content_in(const Polynomial& f, std::size_t var) {
  unsigned d = f.degree_in(var);
  Polynomial c;
  for (unsigned k = d + 1; k-- > 0;) {
    Polynomial ck = f.coefficient_in(var, k);
    if (ck.is_zero()) continue;
    c = c.is_zero() ? ck.primitive_part() : gcd_rec(c, ck);
    if (c.is_constant()) break;
  }
  return c.is_zero() ? c : c.primitive_part();
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& g, std::size_t var) {
  unsigned dg = g.degree_in(var);
  Polynomial lc = g.coefficient_in(var, dg);
  Polynomial rest = g - lc * Polynomial::variable(g.vars(), var).pow(dg);
  while (!r.is_zero() && r.degree_in(var) >= dg) {
    unsigned dr = r.degree_in(var);
    Polynomial lr = r.coefficient_in(var, dr);
    Polynomial rr = r - lr * Polynomial::variable(g.vars(), var).pow(dr);
    r = lc * rr - lr * rest * Polynomial::variable(g.vars(), var).pow(dr - dg);
  }
  return r;
}

Polynomial gcd_rec(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g.primitive_part();
  if (g.is_zero()) return f.primitive_part();
  if (f.is_constant() || g.is_constant()) return Polynomial(f.vars() ? f.vars() : g.vars(), Rational(1));
  int v = main_variable(f, g);
  auto var = static_cast<std::size_t>(v);
  bool in_f = f.contains_variable(var), in_g = g.contains_variable(var);
  if (!in_f) return gcd_rec(f, content_in(g, var));
  if (!in_g) return gcd_rec(content_in(f, var), g);
  Polynomial cf = content_in(f, var), cg = content_in(g, var);
  Polynomial c = gcd_rec(cf, cg);
  Polynomial a = *f.divide_exact(cf), b = *g.divide_exact(cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(var) > 0) {
    Polynomial r = pseudo_remainder(a, b, var);
    a = std::move(b);
    if (r.is_zero()) {
      b = Polynomial();
      break;
    }
    Polynomial cr = content_in(r, var);
    b = *r.divide_exact(cr);
  }
  Polynomial prim = b.is_zero() ? a : Polynomial(f.vars(), Rational(1));
  if (!prim.is_constant()) prim = *prim.divide_exact(content_in(prim, var));
  return (c * prim).primitive_part();
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() && g.is_zero()) return Polynomial(f.vars() ? f.vars() : g.vars());
  return gcd_rec(f, g);
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Polynomial& p) : num_(p), den_(p.vars(), Rational(1)) {}

RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  RationalFunction out;
  if (num.is_zero()) {
    out.num_ = Polynomial(num.vars() ? num.vars() : den.vars());
    out.den_ = Polynomial(out.num_.vars(), Rational(1));
    return out;
  }
  Polynomial g = gcd(num, den);
  Polynomial n = *num.divide_exact(g), d = *den.divide_exact(g);
  Rational lc = d.leading_coeff();
  out.num_ = n.scaled(lc.inverse());
  out.den_ = d.scaled(lc.inverse());
  return out;
}

std::string RationalFunction::str() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarTablePtr& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "polynomial parse error at " + std::to_string(pos_) + ": " + msg +
                                      " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(vars_);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (accept('-')) neg = true;
      else if (!first && !accept('+')) break;
      else if (first) accept('+');
      Polynomial t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
      }
      return Polynomial(vars_, Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (!vars_) fail("no variable table for '" + std::string(name) + "'");
      auto idx = vars_->index_of(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(vars_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  VarTablePtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarTablePtr& vars) { return Parser(text, vars).parse(); }

}  // namespace curvlie
