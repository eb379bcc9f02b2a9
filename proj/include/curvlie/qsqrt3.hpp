#pragma once

#include <optional>
#include <string>

#include "curvlie/rational.hpp"

namespace curvlie {

/// Element a + b*sqrt(3) of the real quadratic field Q(sqrt 3).
class QSqrt3 {
 public:
  QSqrt3() = default;
  QSqrt3(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt3(int a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  QSqrt3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt3 sqrt3() { return {Rational(0), Rational(1)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  /// Exact sign of the real number a + b*sqrt(3).
  int sign() const;

  /// a^2 - 3 b^2.
  Rational norm() const { return a_ * a_ - Rational(3) * b_ * b_; }
  QSqrt3 conjugate() const { return {a_, -b_}; }

  QSqrt3 operator-() const { return {-a_, -b_}; }
  QSqrt3& operator+=(const QSqrt3& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QSqrt3& operator-=(const QSqrt3& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QSqrt3& operator*=(const QSqrt3& o);
  /// Throws Error(DivisionByZero) when o is zero.
  QSqrt3& operator/=(const QSqrt3& o);

  friend QSqrt3 operator+(QSqrt3 x, const QSqrt3& y) { return x += y; }
  friend QSqrt3 operator-(QSqrt3 x, const QSqrt3& y) { return x -= y; }
  friend QSqrt3 operator*(QSqrt3 x, const QSqrt3& y) { return x *= y; }
  friend QSqrt3 operator/(QSqrt3 x, const QSqrt3& y) { return x /= y; }
  friend bool operator==(const QSqrt3& x, const QSqrt3& y) = default;

  QSqrt3 inverse() const;
  QSqrt3 pow(unsigned e) const;

  std::string str() const;

 private:
  Rational a_;
  Rational b_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Field operation with an explicit error value: std::nullopt on division by zero.
std::optional<QSqrt3> qs3_arith(const QSqrt3& x, const QSqrt3& y, ArithOp op);

inline int qs3_sign(const QSqrt3& x) { return x.sign(); }
inline bool is_zero(const QSqrt3& x) { return x.is_zero(); }
inline int sign(const QSqrt3& x) { return x.sign(); }
inline std::string to_string(const QSqrt3& x) { return x.str(); }

/// Principal (non-negative) square root inside Q(sqrt 3), when one exists.
std::optional<QSqrt3> qs3_sqrt(const QSqrt3& x);

/// Parses "a", "p/q", "sqrt3", "p/q*sqrt3", "a + b*sqrt3", "a - sqrt3" and the like.
QSqrt3 parse_qsqrt3(std::string_view text);

/// Element a + b*sqrt(d) of Q(sqrt 3)(sqrt d) for a fixed positive radicand d.
///
/// Elements with b == 0 carry no radicand and combine with any field of the
/// tower; mixing two different nonzero radicands throws.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const QSqrt3& a) : a_(a) {}   // NOLINT(google-explicit-constructor)
  QuadExt(const Rational& a) : a_(a) {} // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  QuadExt(QSqrt3 a, QSqrt3 b, QSqrt3 d);

  /// sqrt(d) itself; d must be positive. When d is a square in Q(sqrt 3) the
  /// result collapses into the base field.
  static QuadExt sqrt_of(const QSqrt3& d);

  const QSqrt3& a() const { return a_; }
  const QSqrt3& b() const { return b_; }
  const QSqrt3& radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  int sign() const;

  QuadExt operator-() const { return {-a_, -b_, d_}; }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y);

  std::string str() const;

 private:
  void adopt(const QuadExt& o);
  void normalize();

  QSqrt3 a_;
  QSqrt3 b_;
  QSqrt3 d_;
};

inline bool is_zero(const QuadExt& x) { return x.is_zero(); }
inline int sign(const QuadExt& x) { return x.sign(); }
inline std::string to_string(const QuadExt& x) { return x.str(); }

}  // namespace curvlie
