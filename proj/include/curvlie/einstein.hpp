#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlie/curvature.hpp"
#include "curvlie/groebner.hpp"
#include "curvlie/liealg.hpp"

namespace curvlie {

// ---------------------------------------------------------------------------
// Generators of one-parameter subgroups of SL(2,R) x SL(2,R)

/// Which sl2 element sits in a factor of the generator.
enum class Sl2Kind { Zero, E1, E3, N };

struct GeneratorCase {
  /// Family label such as "(E1,rE1)" or a concrete one such as "(E1,2E1)".
  std::string label;
  /// Family number 1..7 in the order (E1,rE1), (E1,rE3), (E1,N), (E3,rE3), (E3,N), (N,0), (N,N).
  int family = 0;
  Sl2Kind first = Sl2Kind::Zero;
  Sl2Kind second = Sl2Kind::Zero;
  /// True when the second factor carries the parameter r.
  bool has_r = false;
  std::optional<Rational> r;

  /// The element of sl2 + sl2; throws when r is needed but unset.
  Vector element() const;
  /// Label of the table row this case falls into, e.g. "(E1,E1)" for r = 1.
  std::string row_label() const;
  /// Table rows with a Q_i block: (E1,0), (E3,0), (N,0).
  bool uses_q_block() const;
};

/// The seven families; r is left unset.
std::vector<GeneratorCase> generator_catalog();

/// Parses "(E1,rE1)", "(E1,2E1)", "(E1,E1)", "(E3,0)", "(N,N)", ... An
/// explicit r overrides a coefficient written in the label.
GeneratorCase make_case(std::string_view label, std::optional<Rational> r = std::nullopt);

/// The eleven table rows with a sample r where one is needed.
std::vector<GeneratorCase> table_rows();

// ---------------------------------------------------------------------------
// Invariant symmetric tensors

/// Basis of {g symmetric : ad_A^T g + g ad_A = 0}.
std::vector<Matrix<Rational>> invariant_tensor_space(const LieAlgebra& l, const Vector& a);

/// True when g is symmetric and ad_A^T g + g ad_A = 0.
bool is_invariant(const LieAlgebra& l, const Vector& a, const Matrix<Rational>& g);

/// Variables of the Einstein systems: l (the Einstein constant), the 21
/// metric entries, and s with 2 s^2 = 1 for the Q5 block.
VarTablePtr einstein_variables();

/// Q_i for i in 1..5 over the variables x, y, z, s (s^2 = 1/2).
Matrix<Polynomial> q_block_ansatz(int i);
VarTablePtr q_block_variables();

/// Table template of the case's row; q selects Q_i for rows that need it.
MetricAnsatz table_template(const GeneratorCase& c, int q = 1);

// ---------------------------------------------------------------------------
// Einstein systems

struct EinsteinSystem {
  /// Numerators of (Ric - l g)_ij for i <= j. Powers of det(g) are
  /// divided out or replaced by det_sign, which leaves the ideal unchanged.
  std::vector<Polynomial> equations;
  /// det(g) - det_sign.
  Polynomial det_constraint;
  /// Side relations of the ansatz (2 s^2 - 1 for Q5).
  std::vector<Polynomial> relations;
  int det_sign = 1;
  std::string label;

  /// equations, det constraint, then relations.
  std::vector<Polynomial> all() const;
};

EinsteinSystem assemble_einstein_system(const LieAlgebra& l, const MetricAnsatz& g, int det_sign);

/// Values of the template variables that reproduce g; nullopt when g is not
/// an instance of the template.
std::optional<std::map<std::size_t, QuadExt>> match_template(const MetricAnsatz& a, const Matrix<QuadExt>& g);

/// Whether every polynomial of the system vanishes at the template values
/// of g and l = lambda. False when g is not an instance of the template.
bool system_vanishes_at(const EinsteinSystem& sys, const MetricAnsatz& a, const Matrix<QuadExt>& g,
                        const QuadExt& lambda);

// ---------------------------------------------------------------------------
// Solutions

/// Parametric families of the solution tables.
enum class FamilyId { E1E1_1, E1E1_2, E3E3_1, E3E3_2, NN_1, NN_2 };

const char* to_string(FamilyId id);
/// Generator row the family belongs to, e.g. "(E1,E1)".
std::string family_case(FamilyId id);
/// Name of the family parameter: c2, b1 or c1.
std::string family_parameter(FamilyId id);
/// Whether the family has a +/- branch.
bool family_has_branches(FamilyId id);
/// Exact member at k in {0, 1}, parameter value p and branch sign +1/-1.
/// Throws Error(InvalidArgument) when the radicand is negative.
Matrix<QuadExt> family_metric(FamilyId id, int k, const Rational& p, int branch);
/// Einstein constant of the family: -2 or -10/(3 sqrt 3).
QSqrt3 family_lambda(FamilyId id);
/// Human-readable template entries in k, the parameter and sqrt(...).
std::vector<std::vector<std::string>> family_template_strings(FamilyId id, int branch);

struct FamilyRef {
  FamilyId id;
  int branch = 1;
};

struct SolutionRecord {
  std::string case_label;
  std::string name;
  Matrix<QuadExt> metric;
  QSqrt3 lambda;
  QuadExt det;
  int index = 0;
  std::optional<FamilyRef> family;
  /// Parameter name -> value as printed (k, c2, b1, c1, branch, r).
  std::map<std::string, std::string> parameters;
  bool verified = false;
};

/// (1/8) B on sl2 + sl2, i.e. diag(-1, 1, 1, -1, 1, 1).
Matrix<QSqrt3> killing_metric();
Matrix<QSqrt3> metric_g1();
Matrix<QSqrt3> metric_g2();
/// The linear map A with A^*(B/8) = g1.
Matrix<QSqrt3> isometry_witness_a();
/// T1, T2 and the matrices they are multiplied with in the orbit reduction of the families.
Matrix<QSqrt3> orbit_t1(const Rational& c1);
Matrix<QSqrt3> orbit_t2(const Rational& c1);
Matrix<QSqrt3> orbit_m1(const Rational& c1);
Matrix<QSqrt3> orbit_m2(const Rational& c1);

/// Exact check Ric = lambda g. Throws Error(Singular) when det g = 0.
template <class T>
bool verify_einstein(const LieAlgebra& l, const Matrix<T>& g, const T& lambda) {
  if (is_zero(field_determinant(g))) throw Error(ErrorCode::Singular, "metric is degenerate");
  auto d = compute_curvature(l, g);
  return d.ricci == lambda * g;
}

/// "B/8", "-B/8", "g1", "g2" or "" for other metrics.
std::string known_metric_name(const Matrix<QuadExt>& g);

/// Fills det, index and verified from the metric and lambda.
void finalize_record(SolutionRecord& s);

/// -g with -lambda; det is kept and the index becomes dim - index.
SolutionRecord negate_metric(const SolutionRecord& s);

/// One record per table row with both branches of every family, plus g1 and
/// g2 on their own. Family members are instantiated at k = 0 and parameter 0.
std::vector<SolutionRecord> known_solution_catalog();

/// Members of a family on the grid k in {0,1}, the parameter samples and
/// both branches.
std::vector<SolutionRecord> family_grid(FamilyId id, const std::vector<Rational>& samples);

/// Standard grid for the family parameter: c2 in {0, 1/2}, b1 and c1 in {0, 1}.
std::vector<Rational> family_samples(FamilyId id);

/// Checks the family symbolically: the Einstein numerators vanish modulo the
/// branch relation, sqrt3^2 = 3 and k^2 = k.
bool verify_family_symbolic(FamilyId id);

/// Result of mapping a family member onto g1 or g2 by an automorphism.
struct OrbitWitness {
  Automorphism<QuadExt> automorphism;
  bool factors_in_so21 = false;
  bool is_automorphism = false;
  bool maps_to_target = false;
  std::string target;  // "g1" or "g2"

  bool ok() const { return factors_in_so21 && is_automorphism && maps_to_target; }
};

OrbitWitness orbit_reduction_witness(FamilyId id, int k, const Rational& p, int branch);

/// Whether the 6x6 matrix preserves the brackets of sl2 + sl2.
template <class T>
bool is_lie_automorphism(const LieAlgebra& l, const Matrix<T>& m) {
  std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // phi([F_i, F_j]) = [phi F_i, phi F_j], component k.
        T lhs(0), rhs(0);
        for (std::size_t q = 0; q < n; ++q)
          if (!l.c(i, j, q).is_zero()) lhs += m(k, q) * T(l.c(i, j, q));
        for (std::size_t p = 0; p < n; ++p) {
          if (is_zero(m(p, i))) continue;
          for (std::size_t q = 0; q < n; ++q)
            if (!is_zero(m(q, j)) && !l.c(p, q, k).is_zero()) rhs += m(p, i) * m(q, j) * T(l.c(p, q, k));
        }
        if (!(lhs == rhs)) return false;
      }
  return true;
}

/// pullback_symmetric(g_src, M) == g_dst and the curvature pullback of
/// R^{g_src} equals R^{g_dst}. Throws Error(Singular) for singular M.
template <class T>
bool check_isometry_candidate(const LieAlgebra& l, const Matrix<T>& g_src, const Matrix<T>& g_dst,
                              const Matrix<T>& m) {
  if (is_zero(field_determinant(m))) throw Error(ErrorCode::Singular, "isometry candidate is singular");
  if (!(pullback_symmetric(g_src, m) == g_dst)) return false;
  auto src = compute_curvature(l, g_src);
  auto dst = compute_curvature(l, g_dst);
  return pullback_curvature(src.riemann, m) == dst.riemann;
}

// ---------------------------------------------------------------------------
// Case pipeline

struct SolveOptions {
  int det_sign = 1;
  GroebnerOptions groebner;
  /// Q_i blocks to try for rows that need one; empty means all five.
  std::vector<int> q_blocks;
};

struct CaseResult {
  std::string label;
  int det_sign = 1;
  std::vector<SolutionRecord> solutions;
  /// Unresolved branches or, after a budget stop, the partial basis.
  std::vector<std::vector<Polynomial>> residuals;
  bool budget_exceeded = false;
  std::string message;
  GroebnerStats stats;
  std::size_t basis_size = 0;

  bool solved() const { return !budget_exceeded && residuals.empty(); }
};

CaseResult solve_case(const GeneratorCase& c, const SolveOptions& options = {});

}  // namespace curvlie
