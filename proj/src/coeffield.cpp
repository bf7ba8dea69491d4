#include "knsuper/coeffield.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "knsuper/errors.hpp"

namespace knsuper {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Q2 Q2::inverse() const {
  const Rational n = norm();
  if (sgn(n) == 0) throw DivisionByZero("inverse of zero in Q(sqrt2)");
  return {Rational(a_ / n), Rational(-b_ / n)};
}

Q2& Q2::operator*=(const Q2& o) {
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string to_string(const Q2& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  std::string out;
  if (sgn(x.rational_part()) != 0) out = to_string(x.rational_part()) + " + ";
  return out + to_string(x.sqrt2_part()) + "*s";
}

std::ostream& operator<<(std::ostream& os, const Q2& x) { return os << to_string(x); }

// ---------------------------------------------------------------------------

Scalar Scalar::fraction(BetaPoly num, BetaPoly den) {
  Scalar r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

Scalar Scalar::beta() {
  Scalar r;
  r.num_ = BetaPoly::monomial(Q2(1L), 1);
  return r;
}

Scalar Scalar::alpha() {
  Scalar r;
  r.num_ = BetaPoly::monomial(Q2(1L), 2);
  return r;
}

void Scalar::normalize() {
  if (den_.is_zero_poly()) throw DivisionByZero("division by zero in K");
  if (num_.is_zero_poly()) {
    den_ = BetaPoly(Q2(1L));
    return;
  }
  if (den_.degree() > 0) {
    // Common powers of beta first; when either side is a monomial that is the
    // whole gcd.
    const std::size_t k = std::min(num_.low_order(), den_.low_order());
    if (k > 0) {
      num_ = num_.unshifted(k);
      den_ = den_.unshifted(k);
    }
    if (den_.degree() > 0 && !num_.is_monomial() && !den_.is_monomial()) {
      const BetaPoly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
  }
  const Q2 lead = den_.leading();
  if (!(lead == Q2(1L))) {
    const Q2 inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in K");
  return fraction(den_, num_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
    if (den_.degree() > 0) normalize();
    else if (num_.is_zero_poly()) den_ = BetaPoly(Q2(1L));
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  num_ = num_ * o.num_;
  if (den_.degree() == 0 && o.den_.degree() == 0) return *this;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero in K");
  return *this *= o.inverse();
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1L), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Q2 Scalar::eval(const Rational& beta_value) const {
  const Q2 b(beta_value);
  const Q2 d = den_.eval(b);
  if (knsuper::is_zero(d)) throw PoleAtSpecialization("denominator vanishes at beta = " + knsuper::to_string(beta_value));
  return num_.eval(b) / d;
}

namespace {

Scalar eval_lifted(const BetaPoly& p, const Scalar& x) {
  Scalar acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + Scalar(*it);
  return acc;
}

}  // namespace

Scalar Scalar::substitute(const Scalar& beta_value) const {
  const Scalar d = eval_lifted(den_, beta_value);
  if (d.is_zero()) throw PoleAtSpecialization("denominator vanishes at beta = " + beta_value.to_string());
  return eval_lifted(num_, beta_value) / d;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

struct Term {
  long exponent;  // in units of the chosen variable
  Rational coeff;
};

// Renders sum of c * var^e, highest exponent first.
std::string render_terms(const std::vector<Term>& terms, const char* var) {
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = sgn(t.coeff) < 0;
    const Rational mag = abs(t.coeff);
    std::string mono;
    if (t.exponent == 0) {
      mono = to_string(mag);
    } else {
      if (mag != 1) mono = to_string(mag) + "*";
      mono += var;
      if (t.exponent != 1) mono += "^" + std::to_string(t.exponent);
    }
    if (first) {
      out = negative ? "-" + mono : mono;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += mono;
    }
  }
  return out;
}

std::vector<Term> split(const BetaPoly& p, bool sqrt2_part, long step) {
  std::vector<Term> terms;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const Rational& c = sqrt2_part ? p.coeffs()[k].sqrt2_part() : p.coeffs()[k].rational_part();
    if (sgn(c) != 0) terms.push_back({static_cast<long>(k) / step, c});
  }
  return terms;
}

std::string render_poly(const BetaPoly& p, long step, const char* var) {
  const auto rational = split(p, false, step);
  const auto irrational = split(p, true, step);
  std::string out = render_terms(rational, var);
  if (irrational.empty()) return out.empty() ? "0" : out;
  std::string q;
  if (irrational.size() == 1) {
    Term t = irrational.front();
    const bool negative = sgn(t.coeff) < 0;
    t.coeff = abs(t.coeff);
    std::string mono = render_terms({t}, var);
    mono = mono == "1" ? "s" : mono + "*s";
    if (out.empty()) return negative ? "-" + mono : mono;
    return out + (negative ? " - " : " + ") + mono;
  }
  q = "(" + render_terms(irrational, var) + ")*s";
  return out.empty() ? q : out + " + " + q;
}

bool all_even(const BetaPoly& p) {
  for (std::size_t k = 1; k < p.coeffs().size(); k += 2)
    if (!is_zero(p.coeffs()[k])) return false;
  return true;
}

}  // namespace

std::string Scalar::to_string() const {
  const bool even = all_even(num_) && all_even(den_);
  const long step = even ? 2 : 1;
  const char* var = even ? "al" : "rt";
  const std::string num = render_poly(num_, step, var);
  if (den_.degree() == 0) return num;
  return "(" + num + ")/(" + render_poly(den_, step, var) + ")";
}

bool Scalar::is_single_term() const {
  if (den_.degree() != 0) return false;
  std::size_t count = 0;
  for (const auto& c : num_.coeffs()) count += (sgn(c.rational_part()) != 0) + (sgn(c.sqrt2_part()) != 0);
  return count <= 1;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

Scalar scalar_arith(const Scalar& x, const Scalar& y, ScalarOp op) {
  switch (op) {
    case ScalarOp::add: return x + y;
    case ScalarOp::sub: return x - y;
    case ScalarOp::mul: return x * y;
    case ScalarOp::div: return x / y;
  }
  return {};
}

}  // namespace knsuper
