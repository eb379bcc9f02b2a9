#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlie/error.hpp"
#include "curvlie/qsqrt3.hpp"
#include "curvlie/rational.hpp"

namespace curvlie {

inline constexpr std::size_t kMaxVariables = 32;

/// Ordered list of variable names; index 0 has the highest lex priority.
class VariableTable {
 public:
  explicit VariableTable(std::vector<std::string> names);

  /// l, x1, y1, z1, x2, y2, z2, u1, v1, w1, u2, v2, w2, a1, b1, c1, a2, b2, c2, a3, b3, c3
  /// (l is the Einstein constant).
  static std::shared_ptr<const VariableTable> standard_order();

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws Error(MissingVariable).
  std::size_t require(std::string_view name) const;

  friend bool operator==(const VariableTable& a, const VariableTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VariableTable>;

enum class MonomialOrder { Lex, GrevLex };

/// Exponent vector packed into fixed storage; unused slots stay zero.
class Monomial {
 public:
  Monomial() { e_.fill(0); }

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned v);
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables) == 0;
  }
  /// Lex comparison: first differing exponent decides.
  friend int lex_compare(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables);
  }
  friend int grevlex_compare(const Monomial& a, const Monomial& b);

  std::size_t hash() const;
  /// Largest variable index with nonzero exponent, or -1.
  int last_variable() const;

 private:
  std::array<std::uint8_t, kMaxVariables> e_;
  std::uint16_t deg_ = 0;
};

inline int compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  int c = order == MonomialOrder::Lex ? lex_compare(a, b) : grevlex_compare(a, b);
  return (c > 0) - (c < 0);
}

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted by
/// decreasing lex order with no zero coefficients, so equal polynomials have
/// identical representations.
///
/// A default-constructed polynomial is zero and carries no variable table;
/// it adopts the table of whatever it is combined with.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarTablePtr vars) : vars_(std::move(vars)) {}
  Polynomial(VarTablePtr vars, const Rational& c);
  Polynomial(int c) : Polynomial(nullptr, Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(VarTablePtr vars, std::size_t index);
  static Polynomial variable(VarTablePtr vars, std::string_view name);
  /// Sorts and merges; drops zero coefficients.
  static Polynomial from_terms(VarTablePtr vars, std::vector<Term> terms);

  const VarTablePtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool contains_variable(std::size_t var) const;
  /// Indices of variables that occur, ascending.
  std::vector<std::size_t> variables() const;

  /// Leading term under the given order.
  const Term& leading_term(MonomialOrder order = MonomialOrder::Lex) const;
  const Rational& leading_coeff(MonomialOrder order = MonomialOrder::Lex) const {
    return leading_term(order).coeff;
  }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;

  /// Coefficient of var^k as a polynomial in the remaining variables.
  Polynomial coefficient_in(std::size_t var, unsigned k) const;
  /// Replaces var by the given polynomial.
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  /// Replaces several variables by rational values at once.
  Polynomial specialize(const std::map<std::size_t, Rational>& values) const;
  /// Moves the polynomial onto another table by variable name.
  Polynomial rebase(VarTablePtr target) const;

  /// Exact quotient when g divides this polynomial, else nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& g) const;

  /// Positive gcd of the numerators over the lcm of the denominators.
  Rational content() const;
  /// Integer coefficients with content 1 and positive lex-leading coefficient.
  Polynomial primitive_part() const;
  Polynomial monic() const;

  std::string str() const;
  std::size_t hash() const;

 private:
  friend class PolynomialBuilder;
  static VarTablePtr merge_tables(const VarTablePtr& a, const VarTablePtr& b);

  VarTablePtr vars_;
  std::vector<Term> terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

/// Generic exact evaluation; values[i] must be set for every variable that
/// occurs in f.
template <class T>
T evaluate(const Polynomial& f, const std::vector<std::optional<T>>& values) {
  T acc(0);
  for (const auto& t : f.terms()) {
    T term(t.coeff);
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned e = t.mono[i];
      if (!e) continue;
      if (i >= values.size() || !values[i])
        throw Error(ErrorCode::MissingVariable,
                    "no value for variable " + (f.vars() ? f.vars()->name(i) : std::to_string(i)));
      for (unsigned k = 0; k < e; ++k) term *= *values[i];
    }
    acc += term;
  }
  return acc;
}

/// Exact evaluation at named values in Q(sqrt 3). Throws Error(MissingVariable).
QSqrt3 poly_eval(const Polynomial& f, const std::map<std::string, QSqrt3>& assignment);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division: f = sum q_i g_i + r with no term of r divisible by
/// any leading monomial of the g_i.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      MonomialOrder order = MonomialOrder::Lex);

/// Normal form of f modulo the list (remainder of divide()).
Polynomial poly_reduce(const Polynomial& f, const std::vector<Polynomial>& divisors,
                       MonomialOrder order = MonomialOrder::Lex);

/// Multivariate gcd over Q, normalised by primitive_part(). gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);

/// Quotient of two polynomials in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Polynomial& p);  // NOLINT(google-explicit-constructor)

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::string str() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  friend RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);
  Polynomial num_;
  Polynomial den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

/// gcd-cancelled representative; throws Error(DivisionByZero) for den = 0.
RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);

/// Parses expressions such as "-2*x1*y2 + 3/4*l", "(x+1)^2". Variables must
/// exist in the table.
Polynomial parse_polynomial(std::string_view text, const VarTablePtr& vars);

}  // namespace curvlie

template <>
struct std::hash<curvlie::Monomial> {
  std::size_t operator()(const curvlie::Monomial& m) const noexcept { return m.hash(); }
};
