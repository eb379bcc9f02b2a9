#include "curvlie/curvature.hpp"

namespace curvlie {

std::vector<std::size_t> MetricAnsatz::parameters() const {
  std::array<bool, kMaxVariables> seen{};
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      for (auto v : g(i, j).variables()) seen[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < kMaxVariables; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

MetricAnsatz make_ansatz(const std::vector<std::vector<std::string>>& entries, const VarTablePtr& vars) {
  std::size_t n = entries.size();
  MetricAnsatz a;
  a.vars = vars;
  a.g = Matrix<Polynomial>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) throw Error(ErrorCode::InvalidArgument, "metric must be square");
    for (std::size_t j = 0; j < n; ++j) a.g(i, j) = parse_polynomial(entries[i][j], vars);
  }
  if (!a.g.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "metric is not symmetric");
  return a;
}

SymbolicCurvature symbolic_connection(const LieAlgebra& l, const MetricAnsatz& ansatz,
                                      const std::function<Polynomial(const Polynomial&)>& reduce) {
  auto red = [&](Polynomial p) { return reduce ? reduce(p) : p; };
  const auto& g = ansatz.g;
  std::size_t n = l.dim();
  if (g.rows() != n || !g.square()) throw Error(ErrorCode::InvalidArgument, "metric size does not match algebra");
  SymbolicCurvature out;
  out.det = red(determinant(g));
  if (out.det.is_zero()) throw Error(ErrorCode::Singular, "metric ansatz is identically degenerate");
  out.adj = adjugate(g).map(red);
  const Polynomial& det = out.det;

  // h(i, j, m) = g_il c^l_jm
  Tensor<Polynomial> h(n, 3);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t q = 0; q < n; ++q) {
        const Rational& c = l.c(j, m, q);
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (!g(i, q).is_zero()) h(i, j, m) += g(i, q).scaled(c);
      }
  // P^k_ij = -adj^mk (h(i,j,m) + h(j,i,m)) + det c^k_ij
  out.p = Tensor<Polynomial>(n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Polynomial acc = det.scaled(l.c(i, j, k));
        for (std::size_t m = 0; m < n; ++m) {
          if (out.adj(m, k).is_zero()) continue;
          Polynomial s = h(i, j, m) + h(j, i, m);
          if (!s.is_zero()) acc -= out.adj(m, k) * s;
        }
        out.p(k, i, j) = red(std::move(acc));
      }
  return out;
}

SymbolicCurvature symbolic_ricci(const LieAlgebra& l, const MetricAnsatz& ansatz,
                                 const std::function<Polynomial(const Polynomial&)>& reduce) {
  auto red = [&](Polynomial p) { return reduce ? reduce(p) : p; };
  SymbolicCurvature out = symbolic_connection(l, ansatz, reduce);
  std::size_t n = l.dim();
  const Polynomial& det = out.det;
  const auto& p = out.p;
  // S_ij = sum_m P^m_ij t_m - sum_{l,m} (P^m_lj P^l_im + 2 det c^m_li P^l_mj), t_m = P^l_lm
  std::vector<Polynomial> t(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t q = 0; q < n; ++q) t[m] += p(q, q, m);
  Polynomial two_det = det.scaled(Rational(2));
  out.s = Matrix<Polynomial>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial acc;
      Polynomial cterm;
      for (std::size_t m = 0; m < n; ++m) {
        if (!p(m, i, j).is_zero() && !t[m].is_zero()) acc += p(m, i, j) * t[m];
        for (std::size_t q = 0; q < n; ++q) {
          if (!p(m, q, j).is_zero() && !p(q, i, m).is_zero()) acc -= p(m, q, j) * p(q, i, m);
          const Rational& c = l.c(q, i, m);
          if (!c.is_zero() && !p(q, m, j).is_zero()) cterm += p(q, m, j).scaled(c);
        }
      }
      if (!cterm.is_zero()) acc -= two_det * cterm;
      out.s(i, j) = red(std::move(acc));
    }
  return out;
}

namespace {

Polynomial constant(const Polynomial& like, long v) { return Polynomial(like.vars(), Rational(v)); }

}  // namespace

Matrix<RationalFunction> inverse_metric(const MetricAnsatz& g) {
  Polynomial det = determinant(g.g);
  if (det.is_zero()) throw Error(ErrorCode::Singular, "metric ansatz is identically degenerate");
  Matrix<Polynomial> adj = adjugate(g.g);
  return adj.map([&](const Polynomial& a) { return rf_normalize(a, det); });
}

Tensor<RationalFunction> connection_coefficients(const LieAlgebra& l, const MetricAnsatz& g) {
  SymbolicCurvature sc = symbolic_connection(l, g);
  std::size_t n = l.dim();
  Polynomial den = sc.det.scaled(Rational(2));
  Tensor<RationalFunction> w(n, 3);
  for (std::size_t p = 0; p < sc.p.size(); ++p) w.data()[p] = rf_normalize(sc.p.data()[p], den);
  return w;
}

Tensor<RationalFunction> riemann_tensor(const LieAlgebra& la, const MetricAnsatz& g) {
  SymbolicCurvature sc = symbolic_connection(la, g);
  std::size_t n = la.dim();
  const auto& p = sc.p;
  Polynomial two_det = sc.det.scaled(Rational(2));
  Polynomial den = sc.det * sc.det.scaled(Rational(4));
  Tensor<RationalFunction> r(n, 4);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Polynomial acc = constant(sc.det, 0);
          for (std::size_t m = 0; m < n; ++m) {
            acc += p(m, j, k) * p(l, i, m) - p(m, i, k) * p(l, j, m);
            const Rational& c = la.c(i, j, m);
            if (!c.is_zero()) acc -= two_det.scaled(c) * p(l, m, k);
          }
          r(l, i, j, k) = rf_normalize(acc, den);
        }
  return r;
}

Matrix<RationalFunction> ricci_tensor(const LieAlgebra& l, const MetricAnsatz& g) {
  SymbolicCurvature sc = symbolic_ricci(l, g);
  Polynomial den = sc.det * sc.det.scaled(Rational(4));
  return sc.s.map([&](const Polynomial& s) { return rf_normalize(s, den); });
}

}  // namespace curvlie
