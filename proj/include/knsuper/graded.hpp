#pragma once

#include <optional>
#include <string>

#include "knsuper/densities.hpp"
#include "knsuper/errors.hpp"

namespace knsuper {

// Z/2 degree of a homogeneous element: 0 even, 1 odd.
using Parity = int;
inline int parity_sign(Parity a, Parity b) { return (a & b) ? -1 : 1; }

// A pair (even, odd) of densities with fixed weights. Shared by the Lie and
// Jordan superalgebras and their dual spaces, which differ only in weights.
template <int EvenTwice, int OddTwice>
class GradedPair {
 public:
  static constexpr HalfInt even_weight = HalfInt::from_twice(EvenTwice);
  static constexpr HalfInt odd_weight = HalfInt::from_twice(OddTwice);

  explicit GradedPair(const PunctureConfig& cfg)
      : even_(Density::zero(cfg, even_weight)), odd_(Density::zero(cfg, odd_weight)) {}
  GradedPair(Density even, Density odd) : even_(check(std::move(even), even_weight)), odd_(check(std::move(odd), odd_weight)) {}
  static GradedPair from_even(const MeroFun& f) { return {Density(f, even_weight), Density::zero(f.config(), odd_weight)}; }
  static GradedPair from_odd(const MeroFun& f) { return {Density::zero(f.config(), even_weight), Density(f, odd_weight)}; }
  // Places a density of either weight in its slot.
  static GradedPair from_density(const Density& d) {
    if (d.weight() == even_weight) return from_even(d.f());
    if (d.weight() == odd_weight) return from_odd(d.f());
    throw WeightMismatch("density of weight " + d.weight().to_string() + " fits neither component");
  }
  static GradedPair from_basis(const BasisIndex& ix, const PunctureConfig& cfg) { return from_density(basis(ix, cfg)); }

  const Density& even() const { return even_; }
  const Density& odd() const { return odd_; }
  const PunctureConfig& config() const { return even_.config(); }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }
  // Degree of a homogeneous element (zero counts as even); nullopt if mixed.
  std::optional<Parity> parity() const {
    if (odd_.is_zero()) return 0;
    if (even_.is_zero()) return 1;
    return std::nullopt;
  }
  // Throws NonHomogeneousInput.
  Parity homogeneous_parity() const {
    auto p = parity();
    if (!p) throw NonHomogeneousInput("element has nonzero even and odd parts");
    return *p;
  }

  GradedPair operator-() const { return {-even_, -odd_}; }
  friend GradedPair operator+(const GradedPair& x, const GradedPair& y) { return {x.even_ + y.even_, x.odd_ + y.odd_}; }
  friend GradedPair operator-(const GradedPair& x, const GradedPair& y) { return {x.even_ - y.even_, x.odd_ - y.odd_}; }
  friend GradedPair operator*(const Scalar& c, const GradedPair& x) { return {c * x.even_, c * x.odd_}; }
  friend bool operator==(const GradedPair& x, const GradedPair& y) { return x.even_ == y.even_ && x.odd_ == y.odd_; }

  std::string to_string() const { return even_.to_string() + " + " + odd_.to_string(); }

 private:
  static Density check(Density d, HalfInt w) {
    if (d.weight() != w)
      throw WeightMismatch("expected weight " + w.to_string() + ", got " + d.weight().to_string());
    return d;
  }
  Density even_, odd_;
};

}  // namespace knsuper
