#pragma once

// Tensor densities f(z) (dz)^lambda, the Poisson operations on them, the
// residue pairing F_lambda x F_{1-lambda} -> K and the standard bases.

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knsuper/merofun.hpp"

namespace knsuper {

// lambda in Z u (1/2 + Z), stored as 2*lambda.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT(google-explicit-constructor)
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  // Requires is_integer().
  constexpr int as_int() const { return twice_ / 2; }
  Rational value() const { return make_rational(twice_, 2); }
  Scalar scalar() const { return Scalar(value()); }
  std::string to_string() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  int twice_ = 0;
};

inline constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

enum class Family { e, b, V, phi, G, eps, a, Vdual, phidual, Gdual, epsdual, adual, edual, bdual };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);
bool is_dual(Family f);
Family dual_of(Family primal);
Family primal_of(Family dual);
bool has_half_integer_index(Family f);
HalfInt family_weight(Family f);
bool family_valid_for(Family f, PunctureMode mode);

struct BasisIndex {
  Family family;
  HalfInt index;

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
  // "V[2]", "phi*[-5/2]".
  std::string to_string() const;
};

class Density {
 public:
  Density(MeroFun f, HalfInt weight) : f_(std::move(f)), weight_(weight) {}
  static Density zero(const PunctureConfig& cfg, HalfInt weight) { return {MeroFun(cfg), weight}; }

  const MeroFun& f() const { return f_; }
  HalfInt weight() const { return weight_; }
  const PunctureConfig& config() const { return f_.config(); }
  bool is_zero() const { return f_.is_zero(); }

  Density operator-() const { return {-f_, weight_}; }
  // Throws WeightMismatch when weights differ.
  friend Density operator+(const Density& x, const Density& y);
  friend Density operator-(const Density& x, const Density& y);
  friend Density operator*(const Scalar& c, const Density& x) { return {c * x.f_, x.weight_}; }
  friend bool operator==(const Density& x, const Density& y) {
    return x.weight_ == y.weight_ && x.f_ == y.f_;
  }

  // "<merofun> (dz)^{p/2}".
  std::string to_string() const;

 private:
  MeroFun f_;
  HalfInt weight_;
};

// (e dz^l, f dz^m) -> e f dz^(l+m)
Density dens_dot(const Density& x, const Density& y);
// (e dz^l, f dz^m) -> (m e' f - l e f') dz^(l+m+1)
Density dens_poisson(const Density& x, const Density& y);

// Throws InvalidFamilyForConfig or ParityMismatch.
Density basis(Family family, HalfInt index, const PunctureConfig& cfg);
inline Density basis(const BasisIndex& ix, const PunctureConfig& cfg) { return basis(ix.family, ix.index, cfg); }

// <u, v> = (1/2 pi i) int_C u . v for weights summing to 1; throws WeightMismatch.
Scalar kn_pairing(const Density& u, const Density& v);
inline Scalar kn_pairing(const Density& u, const Density& v, const PunctureConfig&) { return kn_pairing(u, v); }

// Which algebra a density belongs to; only matters on two points, where the
// -1/2 densities carry the basis b_i in the Lie superalgebra and a_i in the
// Jordan superalgebra.
enum class Flavor { Lie, Jordan };

// Standard family of the given weight (primal or dual), if any.
std::optional<Family> default_family(HalfInt weight, PunctureMode mode, Flavor flavor = Flavor::Lie);

// Indices of a family with |index| <= window, ascending.
std::vector<HalfInt> window_indices(Family family, int window);

struct Expansion {
  std::vector<std::pair<BasisIndex, Scalar>> coeffs;  // nonzero entries, ascending index
  Density residual;                                   // u minus the resummed expansion

  bool exact() const { return residual.is_zero(); }
  Scalar coeff(const BasisIndex& ix) const;
};

// Coordinates of u in `family` restricted to |index| <= window, read off by
// the pairing against the biorthogonal family. A nonzero residual means u
// leaves the window span.
Expansion expand_in_basis(const Density& u, Family family, int window);
// Same for u on the dual side (weights 2, 3/2, 1) in the standard dual family.
Expansion expand_in_dual_basis(const Density& u, int window, Flavor flavor = Flavor::Lie);
// Grows the window from an a-priori bound until the expansion is exact;
// std::nullopt if the weight has no standard family or no window up to the
// cap reproduces u.
std::optional<Expansion> expand_exact(const Density& u, Flavor flavor = Flavor::Lie, int max_window = 256);

// Degree of X_n is n.
inline int basis_degree_twice(const BasisIndex& ix) { return ix.index.twice(); }

}  // namespace knsuper
