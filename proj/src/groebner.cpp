#include "curvlie/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace curvlie {

namespace {

// Integer-coefficient polynomial with terms sorted by decreasing order.
struct IPoly {
  std::vector<Monomial> m;
  std::vector<mpz_class> c;

  bool empty() const { return m.empty(); }
  std::size_t size() const { return m.size(); }
};

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void add(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
};

void make_primitive(IPoly& p) {
  if (p.empty()) return;
  mpz_class g = 0;
  for (const auto& c : p.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(p.c[0]) < 0) g = -g;
  if (g != 1)
    for (auto& c : p.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IPoly to_ipoly(const Polynomial& f, MonomialOrder order) {
  IPoly p;
  mpz_class l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.raw().get_den_mpz_t());
  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (order != MonomialOrder::Lex)
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return compare(order, f.terms()[a].mono, f.terms()[b].mono) > 0;
    });
  p.m.reserve(f.size());
  p.c.reserve(f.size());
  for (std::size_t i : idx) {
    const auto& t = f.terms()[i];
    p.m.push_back(t.mono);
    p.c.push_back(t.coeff.raw().get_num() * (l / t.coeff.raw().get_den()));
  }
  make_primitive(p);
  return p;
}

Polynomial to_poly(const IPoly& p, const VarTablePtr& vars) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) terms.push_back({p.m[i], Rational(p.c[i])});
  return Polynomial::from_terms(vars, std::move(terms));
}

// p <- a*p - b*mult*g, where mult*lm(g) equals p.m[pos] and p[0..pos) is
// already irreducible.
void reduce_step(IPoly& p, std::size_t pos, const mpz_class& a, const mpz_class& b, const Monomial& mult,
                 const IPoly& g, MonomialOrder order, IPoly& scratch) {
  scratch.m.clear();
  scratch.c.clear();
  scratch.m.reserve(p.size() + g.size());
  scratch.c.reserve(p.size() + g.size());
  const bool scale = a != 1;
  for (std::size_t i = 0; i < pos; ++i) {
    scratch.m.push_back(p.m[i]);
    scratch.c.push_back(scale ? mpz_class(p.c[i] * a) : p.c[i]);
  }
  std::size_t i = pos + 1, j = 1;
  mpz_class tmp;
  while (i < p.size() || j < g.size()) {
    Monomial gm;
    int cmp;
    if (j < g.size()) {
      gm = g.m[j] * mult;
      cmp = i < p.size() ? compare(order, p.m[i], gm) : -1;
    } else {
      cmp = 1;
    }
    if (cmp > 0) {
      scratch.m.push_back(p.m[i]);
      scratch.c.push_back(scale ? mpz_class(p.c[i] * a) : p.c[i]);
      ++i;
    } else if (cmp < 0) {
      scratch.m.push_back(gm);
      scratch.c.push_back(-(b * g.c[j]));
      ++j;
    } else {
      tmp = p.c[i];
      if (scale) tmp *= a;
      tmp -= b * g.c[j];
      if (sgn(tmp) != 0) {
        scratch.m.push_back(gm);
        scratch.c.push_back(tmp);
      }
      ++i;
      ++j;
    }
  }
  std::swap(p, scratch);
}

// Full normal form of p modulo basis. Records the transcript in fnv if given.
IPoly normal_form(IPoly p, const std::vector<const IPoly*>& basis, MonomialOrder order, Fnv* fnv = nullptr,
                  std::size_t skip = SIZE_MAX) {
  IPoly scratch;
  std::size_t pos = 0;
  unsigned steps = 0;
  mpz_class gcd, a, b;
  while (pos < p.size()) {
    std::size_t k = 0;
    for (; k < basis.size(); ++k)
      if (k != skip && basis[k]->m[0].divides(p.m[pos])) break;
    if (k == basis.size()) {
      ++pos;
      continue;
    }
    const IPoly& g = *basis[k];
    Monomial mult = p.m[pos] / g.m[0];
    mpz_gcd(gcd.get_mpz_t(), p.c[pos].get_mpz_t(), g.c[0].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), g.c[0].get_mpz_t(), gcd.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), p.c[pos].get_mpz_t(), gcd.get_mpz_t());
    if (sgn(a) < 0) {
      a = -a;
      b = -b;
    }
    if (fnv) {
      fnv->add(k);
      fnv->add(mult.hash());
    }
    reduce_step(p, pos, a, b, mult, g, order, scratch);
    if (++steps % 16 == 0) make_primitive(p);
  }
  make_primitive(p);
  if (fnv) {
    fnv->add(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      fnv->add(p.m[i].hash());
      fnv->add(std::hash<std::string>{}(p.c[i].get_str(16)));
    }
  }
  return p;
}

IPoly s_poly(const IPoly& f, const IPoly& g, MonomialOrder order) {
  Monomial l = lcm(f.m[0], g.m[0]);
  Monomial mf = l / f.m[0], mg = l / g.m[0];
  mpz_class d;
  mpz_gcd(d.get_mpz_t(), f.c[0].get_mpz_t(), g.c[0].get_mpz_t());
  mpz_class a = g.c[0] / d, b = f.c[0] / d;  // a*lc(f) == b*lc(g)
  IPoly p;
  p.m.reserve(f.size());
  p.c.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    p.m.push_back(f.m[i] * mf);
    p.c.push_back(f.c[i] * a);
  }
  IPoly scratch;
  reduce_step(p, 0, mpz_class(1), b, mg, g, order, scratch);
  return p;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Engine {
 public:
  Engine(const GroebnerOptions& opt, VarTablePtr vars) : opt_(opt), vars_(std::move(vars)) {}

  GroebnerBasis run(const std::vector<Polynomial>& generators) {
    for (const auto& f : generators) {
      if (f.is_zero()) continue;
      IPoly p = to_ipoly(f, opt_.order);
      if (p.m[0].is_one()) return unit();
      add(std::move(p));
    }
    if (store_.empty()) throw Error(ErrorCode::InvalidArgument, "buchberger needs a nonzero generator");
    while (!pairs_.empty()) {
      std::sort(pairs_.begin(), pairs_.end(), [this](const Pair& a, const Pair& b) {
        int c = compare(opt_.order, a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return a.i != b.i ? a.i < b.i : a.j < b.j;
      });
      std::size_t batch = std::min<std::size_t>(std::max(1u, opt_.jobs), pairs_.size());
      std::vector<Pair> todo(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(batch));
      pairs_.erase(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(batch));
      std::vector<const IPoly*> snapshot = active_polys();
      std::vector<IPoly> reduced(batch);
      auto work = [&](std::size_t k) {
        reduced[k] = normal_form(s_poly(store_[todo[k].i], store_[todo[k].j], opt_.order), snapshot, opt_.order);
      };
      if (batch == 1) {
        work(0);
      } else {
        std::vector<std::thread> threads;
        for (std::size_t k = 0; k < batch; ++k) threads.emplace_back(work, k);
        for (auto& t : threads) t.join();
      }
      for (std::size_t k = 0; k < batch; ++k) {
        ++stats_.pairs_processed;
        IPoly h = std::move(reduced[k]);
        if (k > 0 && !h.empty()) h = normal_form(std::move(h), active_polys(), opt_.order);
        if (h.empty()) {
          ++stats_.zero_reductions;
          continue;
        }
        if (h.m[0].is_one()) return unit();
        add(std::move(h));
      }
      check_budget();
    }
    return finish();
  }

 private:
  std::vector<const IPoly*> active_polys() const {
    std::vector<const IPoly*> out;
    for (std::size_t i : active_) out.push_back(&store_[i]);
    return out;
  }

  GroebnerBasis unit() {
    GroebnerBasis b;
    b.order = opt_.order;
    b.stats = stats_;
    b.polys.push_back(Polynomial(vars_, Rational(1)));
    return b;
  }

  // Gebauer-Moeller update with the new element h.
  void add(IPoly p) {
    std::size_t h = store_.size();
    terms_ += p.size();
    stats_.peak_monomials = std::max(stats_.peak_monomials, terms_);
    store_.push_back(std::move(p));
    const Monomial& lh = store_[h].m[0];

    std::vector<Pair> c;
    for (std::size_t g : active_) c.push_back({g, h, lcm(store_[g].m[0], lh)});
    std::vector<Pair> d;
    std::vector<bool> cop;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool is_coprime = coprime(store_[c[k].i].m[0], lh);
      bool keep = is_coprime;
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (c[q].lcm.divides(c[k].lcm)) keep = false;
        for (std::size_t q = 0; q < d.size() && keep; ++q)
          if (d[q].lcm.divides(c[k].lcm)) keep = false;
        if (!keep) ++stats_.pairs_skipped_chain;
      }
      if (keep) {
        d.push_back(c[k]);
        cop.push_back(is_coprime);
      }
    }
    std::vector<Pair> next;
    for (const auto& pr : pairs_) {
      if (lh.divides(pr.lcm) && !(lcm(store_[pr.i].m[0], lh) == pr.lcm) &&
          !(lcm(store_[pr.j].m[0], lh) == pr.lcm)) {
        ++stats_.pairs_skipped_chain;
        continue;
      }
      next.push_back(pr);
    }
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (cop[k])
        ++stats_.pairs_skipped_coprime;
      else
        next.push_back(d[k]);
    }
    pairs_ = std::move(next);
    std::vector<std::size_t> keep;
    for (std::size_t g : active_)
      if (!lh.divides(store_[g].m[0])) keep.push_back(g);
    keep.push_back(h);
    active_ = std::move(keep);
  }

  void check_budget() {
    const auto& b = opt_.budget;
    std::string why;
    if (b.max_pairs && stats_.pairs_processed > b.max_pairs)
      why = "pair budget of " + std::to_string(b.max_pairs) + " exceeded";
    else if (b.max_monomials && terms_ > b.max_monomials)
      why = "monomial budget of " + std::to_string(b.max_monomials) + " exceeded";
    else if (b.max_megabytes && estimated_bytes() > b.max_megabytes * (std::size_t{1} << 20))
      why = "memory budget of " + std::to_string(b.max_megabytes) + " MB exceeded";
    if (why.empty()) return;
    GroebnerBasis partial;
    partial.order = opt_.order;
    partial.stats = stats_;
    for (std::size_t i : active_) partial.polys.push_back(to_poly(store_[i], vars_));
    throw BudgetExceeded(why, std::move(partial));
  }

  std::size_t estimated_bytes() const {
    std::size_t bytes = 0;
    for (const auto& p : store_) {
      bytes += p.size() * (sizeof(Monomial) + sizeof(mpz_class));
      for (const auto& c : p.c) bytes += mpz_size(c.get_mpz_t()) * sizeof(mp_limb_t);
    }
    return bytes;
  }

  GroebnerBasis finish() {
    std::vector<IPoly> g;
    for (std::size_t i : active_) g.push_back(store_[i]);
    std::sort(g.begin(), g.end(),
              [this](const IPoly& a, const IPoly& b) { return compare(opt_.order, a.m[0], b.m[0]) > 0; });
    // Inter-reduce from the smallest leading monomial upward so each tail
    // reduction sees already reduced elements.
    for (std::size_t k = g.size(); k-- > 0;) {
      std::vector<const IPoly*> others;
      for (std::size_t q = 0; q < g.size(); ++q)
        if (q != k) others.push_back(&g[q]);
      g[k] = normal_form(std::move(g[k]), others, opt_.order);
    }
    GroebnerBasis out;
    out.order = opt_.order;
    out.stats = stats_;
    for (const auto& p : g) out.polys.push_back(to_poly(p, vars_));
    if (opt_.certificate) certify(out);
    return out;
  }

  GroebnerOptions opt_;
  VarTablePtr vars_;
  std::vector<IPoly> store_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
  std::size_t terms_ = 0;
};

VarTablePtr common_table(const std::vector<Polynomial>& polys) {
  VarTablePtr vars;
  for (const auto& p : polys) {
    if (!p.vars()) continue;
    if (!vars)
      vars = p.vars();
    else if (vars != p.vars() && !(*vars == *p.vars()))
      throw Error(ErrorCode::VariableMismatch, "generators use different variable tables");
  }
  return vars;
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidArgument, "S-polynomial of zero");
  const Term& tf = f.leading_term(order);
  const Term& tg = g.leading_term(order);
  Monomial l = lcm(tf.mono, tg.mono);
  return f.times_term(l / tf.mono, tf.coeff.inverse()) - g.times_term(l / tg.mono, tg.coeff.inverse());
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const GroebnerOptions& options) {
  Engine engine(options, common_table(generators));
  return engine.run(generators);
}

bool ideal_membership(const Polynomial& f, const GroebnerBasis& basis) {
  if (f.is_zero()) return true;
  std::vector<IPoly> g;
  for (const auto& p : basis.polys) g.push_back(to_ipoly(p, basis.order));
  std::vector<const IPoly*> ptrs;
  for (const auto& p : g) ptrs.push_back(&p);
  return normal_form(to_ipoly(f, basis.order), ptrs, basis.order).empty();
}

void certify(GroebnerBasis& basis) {
  std::vector<IPoly> g;
  for (const auto& p : basis.polys) g.push_back(to_ipoly(p, basis.order));
  std::vector<const IPoly*> ptrs;
  for (const auto& p : g) ptrs.push_back(&p);
  basis.certificate.clear();
  Fnv digest;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Fnv fnv;
      fnv.add(i);
      fnv.add(j);
      IPoly r = normal_form(s_poly(g[i], g[j], basis.order), ptrs, basis.order, &fnv);
      basis.certificate.push_back({i, j, fnv.h, r.empty()});
      digest.add(fnv.h);
    }
  basis.certificate_digest = digest.h;
}

bool satisfies_buchberger_criterion(const std::vector<Polynomial>& polys, MonomialOrder order) {
  std::vector<IPoly> g;
  for (const auto& p : polys)
    if (!p.is_zero()) g.push_back(to_ipoly(p, order));
  std::vector<const IPoly*> ptrs;
  for (const auto& p : g) ptrs.push_back(&p);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!normal_form(s_poly(g[i], g[j], order), ptrs, order).empty()) return false;
  return true;
}

}  // namespace curvlie
