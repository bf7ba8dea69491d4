#pragma once

// Exact coefficient field K = Q(s)(beta), s^2 = 2, with alpha = beta^2 the
// puncture parameter of the three-point configuration.

#include <compare>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "knsuper/upoly.hpp"

namespace knsuper {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical num/den; throws DivisionByZero for den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);
std::string to_string(const Rational& q);

// a + b*s with s^2 = 2.
class Q2 {
 public:
  Q2() = default;
  Q2(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Q2(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT
  static Q2 sqrt2() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }
  bool is_rational() const { return sgn(b_) == 0; }
  // a^2 - 2 b^2, nonzero for nonzero elements since 2 is not a rational square.
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }
  Q2 conjugate() const { return {a_, -b_}; }
  Q2 inverse() const;

  Q2 operator-() const { return {-a_, -b_}; }
  Q2& operator+=(const Q2& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Q2& operator-=(const Q2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Q2& operator*=(const Q2& o);
  Q2& operator/=(const Q2& o) { return *this *= o.inverse(); }
  friend Q2 operator+(Q2 x, const Q2& y) { return x += y; }
  friend Q2 operator-(Q2 x, const Q2& y) { return x -= y; }
  friend Q2 operator*(Q2 x, const Q2& y) { return x *= y; }
  friend Q2 operator/(Q2 x, const Q2& y) { return x /= y; }
  friend bool operator==(const Q2& x, const Q2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_, b_;
};

inline bool is_zero(const Q2& x) { return sgn(x.rational_part()) == 0 && sgn(x.sqrt2_part()) == 0; }
std::string to_string(const Q2& x);

using BetaPoly = UPoly<Q2>;

// Element of K stored as num(beta)/den(beta), reduced, with monic denominator.
class Scalar {
 public:
  Scalar() : den_(Q2(1L)) {}
  Scalar(long v) : num_(Q2(v)), den_(Q2(1L)) {}             // NOLINT
  Scalar(const Rational& v) : num_(Q2(v)), den_(Q2(1L)) {}  // NOLINT
  Scalar(const Q2& v) : num_(v), den_(Q2(1L)) {}            // NOLINT
  // Throws DivisionByZero when den is the zero polynomial.
  static Scalar fraction(BetaPoly num, BetaPoly den);
  static Scalar beta();
  static Scalar alpha();
  static Scalar sqrt2() { return Scalar(Q2::sqrt2()); }

  const BetaPoly& numerator() const { return num_; }
  const BetaPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero_poly(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // True when the value lies in Q(s), i.e. does not involve beta.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Q2 constant_value() const { return num_.coeff(0); }

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  Scalar pow(long e) const;

  // Substitute beta <- value. Throws PoleAtSpecialization if den(value) = 0.
  Q2 eval(const Rational& beta_value) const;
  // Substitute beta <- value, for value in K. Throws PoleAtSpecialization.
  Scalar substitute(const Scalar& beta_value) const;

  // Canonical text: "(p(al) + q(al)*s)/(r(al))" in terms of al = beta^2 when
  // every beta exponent is even, otherwise in terms of rt = beta. Parentheses
  // and the denominator are dropped when redundant.
  std::string to_string() const;
  // True when the rendering is a single signed monomial (safe to juxtapose).
  bool is_single_term() const;

 private:
  void normalize();

  BetaPoly num_, den_;
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
std::ostream& operator<<(std::ostream& os, const Scalar& x);
std::ostream& operator<<(std::ostream& os, const Q2& x);

// Field-level convenience matching the operation table of the module.
enum class ScalarOp { add, sub, mul, div };
Scalar scalar_arith(const Scalar& x, const Scalar& y, ScalarOp op);
inline Q2 scalar_eval(const Scalar& x, const Rational& beta_value) { return x.eval(beta_value); }

}  // namespace knsuper
