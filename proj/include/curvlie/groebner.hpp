#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlie/polynomial.hpp"

namespace curvlie {

/// Caps on the Buchberger loop. Zero means unlimited.
struct GroebnerBudget {
  std::size_t max_pairs = 0;
  std::size_t max_monomials = 0;
  /// Soft cap on the estimated size of the working polynomials.
  std::size_t max_megabytes = 0;
};

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::Lex;
  GroebnerBudget budget;
  /// Number of S-polynomials reduced concurrently per round.
  unsigned jobs = 1;
  bool certificate = false;
};

/// One line of the certificate: basis pair (i, j) and the hash of the
/// reduction transcript of S(g_i, g_j) modulo the basis.
struct PairCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t hash = 0;
  bool reduces_to_zero = false;
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_skipped_coprime = 0;
  std::size_t pairs_skipped_chain = 0;
  std::size_t zero_reductions = 0;
  std::size_t peak_monomials = 0;
};

/// Reduced basis, sorted by decreasing leading monomial, every element
/// primitive with positive leading coefficient.
struct GroebnerBasis {
  std::vector<Polynomial> polys;
  MonomialOrder order = MonomialOrder::Lex;
  GroebnerStats stats;
  std::vector<PairCertificate> certificate;
  std::uint64_t certificate_digest = 0;

  bool is_unit() const { return polys.size() == 1 && polys[0].is_constant(); }
};

/// Thrown when a budget is exhausted; partial() holds the generators
/// accumulated so far (not a Groebner basis).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, GroebnerBasis partial)
      : Error(ErrorCode::BudgetExceeded, what), partial_(std::move(partial)) {}
  const GroebnerBasis& partial() const { return partial_; }

 private:
  GroebnerBasis partial_;
};

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order = MonomialOrder::Lex);

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const GroebnerOptions& options = {});

/// Normal form of f modulo the basis is zero.
bool ideal_membership(const Polynomial& f, const GroebnerBasis& basis);

/// Recomputes the pair certificate of a finished basis: every S-polynomial
/// is reduced modulo the basis and its transcript hashed.
void certify(GroebnerBasis& basis);

/// Buchberger criterion checked directly on an arbitrary list.
bool satisfies_buchberger_criterion(const std::vector<Polynomial>& polys, MonomialOrder order);

// ---------------------------------------------------------------------------
// Back-substitution over lex bases

struct BranchValue {
  enum class Kind { Value, Free, Constraint };
  Kind kind = Kind::Free;
  QSqrt3 value;
  /// For Kind::Constraint: polynomial the variable must annihilate.
  Polynomial constraint;
};

struct SolutionBranch {
  std::map<std::size_t, BranchValue> values;
  std::vector<Polynomial> residuals;

  bool fully_determined() const;
};

struct BackSolveResult {
  VarTablePtr vars;
  std::vector<SolutionBranch> branches;
  /// True when the basis is {1}.
  bool inconsistent = false;
};

/// Works upwards from the last variable: linear steps, quadratics with roots
/// in Q(sqrt 3), and unconstrained variables become free parameters. Anything
/// else stays as a residual of the branch.
BackSolveResult back_solve(const GroebnerBasis& basis);

}  // namespace curvlie
