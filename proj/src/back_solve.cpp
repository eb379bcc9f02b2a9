#include <algorithm>

#include "curvlie/groebner.hpp"

namespace curvlie {

namespace {

// Dense univariate polynomial over Q(sqrt 3), coefficient k of x^k.
struct UPoly {
  std::vector<QSqrt3> c;

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const QSqrt3& lead() const { return c.back(); }

  UPoly monic() const {
    UPoly out = *this;
    QSqrt3 inv = lead().inverse();
    for (auto& x : out.c) x *= inv;
    return out;
  }
  QSqrt3 eval(const QSqrt3& x) const {
    QSqrt3 acc;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  }
};

UPoly upoly_rem(UPoly a, const UPoly& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    QSqrt3 q = a.lead() / b.lead();
    int shift = a.degree() - b.degree();
    for (int k = 0; k <= b.degree(); ++k) a.c[static_cast<std::size_t>(k + shift)] -= q * b.c[static_cast<std::size_t>(k)];
    a.c.pop_back();
    a.trim();
  }
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

// Divides out the linear factor (x - root).
UPoly deflate(const UPoly& p, const QSqrt3& root) {
  UPoly q;
  q.c.resize(p.c.size() - 1);
  QSqrt3 carry;
  for (std::size_t k = p.c.size() - 1; k-- > 0;) {
    carry = p.c[k + 1] + carry * root;
    q.c[k] = carry;
  }
  return q;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.c.size(); ++k) d.c.push_back(p.c[k] * QSqrt3(Rational(static_cast<long>(k))));
  d.trim();
  return d;
}

std::vector<mpz_class> small_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > 1000000000) return out;
  unsigned long v = n.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.emplace_back(d);
      if (d * d != v) out.emplace_back(v / d);
    }
  return out;
}

// Rational roots of a polynomial with rational coefficients.
std::vector<Rational> rational_roots(const UPoly& p) {
  for (const auto& x : p.c)
    if (!x.is_rational()) return {};
  mpz_class l = 1;
  for (const auto& x : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.a().raw().get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& x : p.c) z.push_back(x.a().raw().get_num() * (l / x.a().raw().get_den()));
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  std::vector<Rational> roots;
  if (low > 0) roots.emplace_back(0);
  if (low >= z.size()) return roots;
  for (const auto& num : small_divisors(z[low]))
    for (const auto& den : small_divisors(z.back()))
      for (int s : {1, -1}) {
        Rational r(mpz_class(s * num), den);
        if (std::find(roots.begin(), roots.end(), r) == roots.end() && p.eval(QSqrt3(r)).is_zero())
          roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Number of distinct real roots of a square-free polynomial (Sturm).
int real_root_count(const UPoly& f) {
  std::vector<UPoly> seq = {f, derivative(f)};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    UPoly r = upoly_rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    for (auto& x : r.c) x = -x;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int count = 0, prev = 0;
    for (const auto& p : seq) {
      if (p.is_zero()) continue;
      int s = p.lead().sign();
      if (!at_plus && p.degree() % 2) s = -s;
      if (prev && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

struct Roots {
  std::vector<QSqrt3> values;
  bool complete = true;  // false when an irreducible leftover factor remains
  UPoly leftover;
};

Roots real_roots(const UPoly& p) {
  Roots out;
  UPoly f = p.monic();
  // Square-free part.
  UPoly d = derivative(f);
  if (!d.is_zero()) {
    UPoly g = upoly_gcd(f, d);
    if (g.degree() > 0) {
      UPoly q;
      UPoly rem = f;
      q.c.assign(static_cast<std::size_t>(f.degree() - g.degree() + 1), QSqrt3());
      while (!rem.is_zero() && rem.degree() >= g.degree()) {
        QSqrt3 t = rem.lead() / g.lead();
        int shift = rem.degree() - g.degree();
        q.c[static_cast<std::size_t>(shift)] = t;
        for (int k = 0; k <= g.degree(); ++k)
          rem.c[static_cast<std::size_t>(k + shift)] -= t * g.c[static_cast<std::size_t>(k)];
        rem.c.pop_back();
        rem.trim();
      }
      f = q.monic();
    }
  }
  for (const auto& r : rational_roots(f)) {
    out.values.emplace_back(r);
    f = deflate(f, QSqrt3(r));
  }
  if (f.degree() == 1) {
    out.values.push_back(-f.c[0] / f.c[1]);
  } else if (f.degree() == 2) {
    QSqrt3 b = f.c[1], c = f.c[0];
    QSqrt3 disc = b * b - QSqrt3(4) * c;
    if (disc.sign() >= 0) {
      if (auto s = qs3_sqrt(disc)) {
        QSqrt3 half(Rational(1, 2));
        out.values.push_back((-b - *s) * half);
        if (!s->is_zero()) out.values.push_back((-b + *s) * half);
      } else {
        out.complete = false;
        out.leftover = f;
      }
    }
  } else if (f.degree() > 2 && real_root_count(f) > 0) {
    out.complete = false;
    out.leftover = f;
  }
  std::sort(out.values.begin(), out.values.end(),
            [](const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() < 0; });
  return out;
}

int main_variable(const Polynomial& p) {
  for (const auto& v : p.variables()) return static_cast<int>(v);
  return -1;
}

// Substitutes known values; nullopt when some other variable is not fixed.
std::optional<UPoly> restrict_to(const Polynomial& p, std::size_t var, const SolutionBranch& branch) {
  UPoly u;
  u.c.assign(p.degree_in(var) + 1, QSqrt3());
  for (const auto& t : p.terms()) {
    QSqrt3 coeff(t.coeff);
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned e = t.mono[i];
      if (!e || i == var) continue;
      auto it = branch.values.find(i);
      if (it == branch.values.end() || it->second.kind != BranchValue::Kind::Value) return std::nullopt;
      coeff *= it->second.value.pow(e);
    }
    u.c[t.mono[var]] += coeff;
  }
  u.trim();
  return u;
}

}  // namespace

bool SolutionBranch::fully_determined() const {
  if (!residuals.empty()) return false;
  for (const auto& [var, v] : values)
    if (v.kind != BranchValue::Kind::Value) return false;
  return true;
}

BackSolveResult back_solve(const GroebnerBasis& basis) {
  if (basis.order != MonomialOrder::Lex) throw Error(ErrorCode::InvalidArgument, "back_solve needs a lex basis");
  BackSolveResult out;
  for (const auto& p : basis.polys)
    if (p.vars()) out.vars = p.vars();
  if (basis.is_unit()) {
    out.inconsistent = true;
    return out;
  }
  std::size_t nvars = out.vars ? out.vars->size() : 0;
  std::vector<std::vector<const Polynomial*>> by_var(nvars);
  for (const auto& p : basis.polys) {
    int v = main_variable(p);
    if (v >= 0) by_var[static_cast<std::size_t>(v)].push_back(&p);
  }

  std::vector<SolutionBranch> branches(1);
  for (std::size_t var = nvars; var-- > 0;) {
    std::vector<SolutionBranch> next;
    for (auto& br : branches) {
      UPoly g;
      std::vector<Polynomial> unresolved;
      for (const Polynomial* p : by_var[var]) {
        auto u = restrict_to(*p, var, br);
        if (!u)
          unresolved.push_back(*p);
        else
          g = upoly_gcd(g, *u);
      }
      if (!g.is_zero() && g.degree() == 0) continue;  // inconsistent branch
      if (!unresolved.empty()) {
        BranchValue bv;
        bv.kind = BranchValue::Kind::Constraint;
        bv.constraint = unresolved.front();
        br.values[var] = bv;
        for (auto& p : unresolved) br.residuals.push_back(std::move(p));
        next.push_back(std::move(br));
        continue;
      }
      if (g.is_zero()) {
        br.values[var] = BranchValue{};
        next.push_back(std::move(br));
        continue;
      }
      Roots roots = real_roots(g);
      for (const auto& r : roots.values) {
        SolutionBranch b = br;
        b.values[var] = BranchValue{BranchValue::Kind::Value, r, {}};
        next.push_back(std::move(b));
      }
      if (!roots.complete) {
        SolutionBranch b = br;
        BranchValue bv;
        bv.kind = BranchValue::Kind::Constraint;
        bool rational = std::all_of(roots.leftover.c.begin(), roots.leftover.c.end(),
                                    [](const QSqrt3& x) { return x.is_rational(); });
        if (rational) {
          std::vector<Term> terms;
          for (std::size_t k = 0; k < roots.leftover.c.size(); ++k)
            terms.push_back({Monomial::variable(var, static_cast<unsigned>(k)), roots.leftover.c[k].a()});
          bv.constraint = Polynomial::from_terms(out.vars, std::move(terms));
        } else {
          bv.constraint = *by_var[var].front();
        }
        b.values[var] = bv;
        b.residuals.push_back(bv.constraint);
        next.push_back(std::move(b));
      }
    }
    branches = std::move(next);
  }

  // A determined branch must annihilate every basis element.
  for (auto& br : branches) {
    if (!br.fully_determined()) continue;
    std::vector<std::optional<QSqrt3>> vals(kMaxVariables);
    for (const auto& [var, v] : br.values) vals[var] = v.value;
    for (const auto& p : basis.polys)
      if (!evaluate<QSqrt3>(p, vals).is_zero())
        throw Error(ErrorCode::Internal, "back_solve produced a non-solution");
  }
  out.branches = std::move(branches);
  return out;
}

}  // namespace curvlie
