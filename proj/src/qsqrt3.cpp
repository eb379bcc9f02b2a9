#include "curvlie/qsqrt3.hpp"

#include <cctype>

#include "curvlie/error.hpp"

namespace curvlie {

namespace {

// Sign of a + b*sqrt(r) given signs of a, b and the comparison a^2 <=> b^2 r.
template <class T>
int sign_from_parts(int sa, int sb, const T& a_sq_minus_b_sq_r) {
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  int s = sign(a_sq_minus_b_sq_r);
  return s > 0 ? sa : sb;
}

}  // namespace

int QSqrt3::sign() const {
  return sign_from_parts(a_.sign(), b_.sign(), norm());
}

QSqrt3& QSqrt3::operator*=(const QSqrt3& o) {
  Rational na = a_ * o.a_ + Rational(3) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QSqrt3 QSqrt3::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Q(sqrt3)");
  Rational n = norm();
  return {a_ / n, -b_ / n};
}

QSqrt3& QSqrt3::operator/=(const QSqrt3& o) { return *this *= o.inverse(); }

QSqrt3 QSqrt3::pow(unsigned e) const {
  QSqrt3 result(1), base = *this;
  for (; e; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

std::string QSqrt3::str() const {
  if (b_.is_zero()) return a_.str();
  std::string bpart = b_.is_one() ? "sqrt3" : (b_ == Rational(-1) ? "-sqrt3" : b_.str() + "*sqrt3");
  if (a_.is_zero()) return bpart;
  if (b_.sign() < 0) {
    Rational nb = -b_;
    return a_.str() + " - " + (nb.is_one() ? std::string("sqrt3") : nb.str() + "*sqrt3");
  }
  return a_.str() + " + " + bpart;
}

std::optional<QSqrt3> qs3_arith(const QSqrt3& x, const QSqrt3& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div:
      if (y.is_zero()) return std::nullopt;
      return x / y;
  }
  return std::nullopt;
}

std::optional<QSqrt3> qs3_sqrt(const QSqrt3& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_zero()) return QSqrt3();
  Rational root;
  if (x.b().is_zero()) {
    if (rational_sqrt(x.a(), root)) return QSqrt3(root);
    if (rational_sqrt(x.a() / Rational(3), root)) return QSqrt3(Rational(0), root);
    return std::nullopt;
  }
  // (p + q sqrt3)^2 = p^2 + 3q^2 + 2pq sqrt3, so p^2 = (a +- sqrt(a^2 - 3b^2)) / 2.
  Rational n;
  if (!rational_sqrt(x.norm(), n)) return std::nullopt;
  for (const Rational& p_sq : {(x.a() + n) / Rational(2), (x.a() - n) / Rational(2)}) {
    Rational p;
    if (p_sq.is_zero() || !rational_sqrt(p_sq, p)) continue;
    QSqrt3 cand(p, x.b() / (Rational(2) * p));
    if (cand * cand == x) return cand.sign() < 0 ? -cand : cand;
  }
  return std::nullopt;
}

QSqrt3 parse_qsqrt3(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty Q(sqrt3) literal");
  QSqrt3 total;
  std::size_t i = 0;
  while (i < s.size()) {
    int sgn = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw Error(ErrorCode::Parse, "malformed Q(sqrt3) literal '" + std::string(text) + "'");
    bool radical = false;
    for (const char* tag : {"*sqrt3", "sqrt3", "*sqrt(3)", "sqrt(3)"}) {
      std::string t(tag);
      if (term.size() >= t.size() && term.compare(term.size() - t.size(), t.size(), t) == 0) {
        term.erase(term.size() - t.size());
        radical = true;
        break;
      }
    }
    // "p/q*sqrt3" leaves "p/q"; "sqrt3/3" style is written as "1/3*sqrt3".
    Rational coeff = term.empty() ? Rational(1) : Rational::parse(term);
    if (sgn < 0) coeff = -coeff;
    total += radical ? QSqrt3(Rational(0), coeff) : QSqrt3(coeff);
    i = j;
  }
  return total;
}

QuadExt::QuadExt(QSqrt3 a, QSqrt3 b, QSqrt3 d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  normalize();
}

QuadExt QuadExt::sqrt_of(const QSqrt3& d) {
  if (d.sign() < 0) throw Error(ErrorCode::InvalidArgument, "negative radicand " + d.str());
  if (auto r = qs3_sqrt(d)) return QuadExt(*r);
  return QuadExt(QSqrt3(), QSqrt3(1), d);
}

void QuadExt::normalize() {
  if (b_.is_zero()) d_ = QSqrt3();
}

void QuadExt::adopt(const QuadExt& o) {
  if (o.d_.is_zero()) return;
  if (d_.is_zero()) {
    d_ = o.d_;
    return;
  }
  if (!(d_ == o.d_))
    throw Error(ErrorCode::InvalidArgument, "mixing radicands " + d_.str() + " and " + o.d_.str());
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  adopt(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  adopt(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  adopt(o);
  QSqrt3 na = a_ * o.a_ + b_ * o.b_ * d_;
  QSqrt3 nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in quadratic extension");
  adopt(o);
  QSqrt3 n = o.a_ * o.a_ - o.b_ * o.b_ * d_;
  QuadExt inv(o.a_ / n, -o.b_ / n, d_);
  return *this *= inv;
}

int QuadExt::sign() const {
  return sign_from_parts(a_.sign(), b_.sign(), a_ * a_ - b_ * b_ * d_);
}

bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).is_zero(); }

std::string QuadExt::str() const {
  if (b_.is_zero()) return a_.str();
  return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + d_.str() + ")";
}

}  // namespace curvlie
