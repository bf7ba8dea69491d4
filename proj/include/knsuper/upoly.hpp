#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace knsuper {

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

// Dense univariate polynomial over a field F, coefficients stored low to high
// with no trailing zeros. F must be constructible from `long` and provide an
// `is_zero(const F&)` overload reachable by ADL or declared above.
template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(F constant) {
    if (!is_zero(constant)) coeffs_.push_back(std::move(constant));
  }
  explicit UPoly(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly monomial(F c, std::size_t k) {
    if (is_zero(c)) return {};
    std::vector<F> v(k + 1, F(0L));
    v[k] = std::move(c);
    return UPoly(std::move(v));
  }
  // (x - root)^k
  static UPoly linear_power(const F& root, std::size_t k) {
    UPoly result(F(1L));
    const UPoly factor(std::vector<F>{-root, F(1L)});
    for (std::size_t i = 0; i < k; ++i) result = result * factor;
    return result;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero_poly() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<F>& coeffs() const { return coeffs_; }
  F coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : F(0L); }
  const F& leading() const { return coeffs_.back(); }

  // Multiplicity of x as a factor (0 for the zero polynomial).
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && is_zero(coeffs_[k])) ++k;
    return coeffs_.empty() ? 0 : k;
  }
  bool is_monomial() const { return !coeffs_.empty() && low_order() == coeffs_.size() - 1; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    const auto& big = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
    const auto& small = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
    UPoly r = big;
    for (std::size_t i = 0; i < small.coeffs_.size(); ++i) r.coeffs_[i] += small.coeffs_[i];
    r.trim();
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<F> v(a.coeffs_.size() + b.coeffs_.size() - 1, F(0L));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(v));
  }
  UPoly scaled(const F& c) const {
    if (is_zero(c)) return {};
    UPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }
  // Multiply by x^k.
  UPoly shifted(std::size_t k) const {
    if (coeffs_.empty() || k == 0) return *this;
    std::vector<F> v(k, F(0L));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return UPoly(std::move(v));
  }
  // Divide by x^k; the low k coefficients must vanish.
  UPoly unshifted(std::size_t k) const {
    if (k >= coeffs_.size()) return {};
    return UPoly(std::vector<F>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
  }
  // x^deg * p(1/x) for deg = degree().
  UPoly reversed() const {
    return UPoly(std::vector<F>(coeffs_.rbegin(), coeffs_.rend()));
  }

  UPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<F> v;
    v.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * F(static_cast<long>(i)));
    return UPoly(std::move(v));
  }

  F eval(const F& x) const {
    F acc(0L);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Synthetic division by (x - root): returns quotient and remainder p(root).
  std::pair<UPoly, F> divide_linear(const F& root) const {
    if (coeffs_.empty()) return {UPoly(), F(0L)};
    std::vector<F> q(coeffs_.size() - 1, F(0L));
    F carry = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = carry * root + coeffs_[i];
    }
    return {UPoly(std::move(q)), carry};
  }

  // Euclidean division over the field.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    UPoly q, r = *this;
    if (d.coeffs_.empty()) return {q, r};
    const F inv_lead = F(1L) / d.leading();
    std::vector<F> qc(coeffs_.size() >= d.coeffs_.size() ? coeffs_.size() - d.coeffs_.size() + 1 : 0,
                      F(0L));
    while (!r.coeffs_.empty() && r.degree() >= d.degree()) {
      const std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      F factor = r.leading() * inv_lead;
      for (std::size_t i = 0; i < d.coeffs_.size(); ++i) r.coeffs_[i + shift] -= factor * d.coeffs_[i];
      qc[shift] = std::move(factor);
      r.trim();
    }
    q = UPoly(std::move(qc));
    return {q, r};
  }

  UPoly monic() const {
    if (coeffs_.empty()) return {};
    return scaled(F(1L) / leading());
  }

 private:
  void trim() {
    while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<F> coeffs_;
};

// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero_poly()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace knsuper
