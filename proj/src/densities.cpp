#include "knsuper/densities.hpp"

#include <algorithm>
#include <cstdlib>

#include "knsuper/errors.hpp"

namespace knsuper {

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(as_int());
  return std::to_string(twice_) + "/2";
}

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
  bool dual;
  bool half_index;
  int weight_twice;
  bool two_point;
  bool three_point;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::e, "e", false, false, -2, true, false},
    {Family::b, "b", false, true, -1, true, false},
    {Family::V, "V", false, false, -2, false, true},
    {Family::phi, "phi", false, true, -1, false, true},
    {Family::G, "G", false, false, 0, false, true},
    {Family::eps, "eps", false, false, 0, true, false},
    {Family::a, "a", false, true, -1, true, false},
    {Family::Vdual, "V*", true, false, 4, false, true},
    {Family::phidual, "phi*", true, true, 3, false, true},
    {Family::Gdual, "G*", true, false, 2, false, true},
    {Family::epsdual, "eps*", true, false, 2, true, false},
    {Family::adual, "a*", true, true, 3, true, false},
    {Family::edual, "e*", true, false, 4, true, false},
    {Family::bdual, "b*", true, true, 3, true, false},
};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i;
  throw std::logic_error("unknown family");
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

MeroFun power_of_z(const PunctureConfig& cfg, const Scalar& c, int k) { return MeroFun::monomial(cfg, c, k); }

MeroFun z_times_quadric(const PunctureConfig& cfg, const Scalar& c, bool with_z, int k) {
  MeroFun q = c * MeroFun::quadric_power(cfg, k);
  return with_z ? MeroFun::z(cfg) * q : q;
}

}  // namespace

std::string family_name(Family f) { return info(f).name; }

std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& i : kFamilies)
    if (name == i.name) return i.family;
  return std::nullopt;
}

bool is_dual(Family f) { return info(f).dual; }

Family dual_of(Family primal) {
  switch (primal) {
    case Family::e: return Family::edual;
    case Family::b: return Family::bdual;
    case Family::V: return Family::Vdual;
    case Family::phi: return Family::phidual;
    case Family::G: return Family::Gdual;
    case Family::eps: return Family::epsdual;
    case Family::a: return Family::adual;
    default: throw std::logic_error("dual_of expects a primal family");
  }
}

Family primal_of(Family dual) {
  switch (dual) {
    case Family::edual: return Family::e;
    case Family::bdual: return Family::b;
    case Family::Vdual: return Family::V;
    case Family::phidual: return Family::phi;
    case Family::Gdual: return Family::G;
    case Family::epsdual: return Family::eps;
    case Family::adual: return Family::a;
    default: throw std::logic_error("primal_of expects a dual family");
  }
}

bool has_half_integer_index(Family f) { return info(f).half_index; }
HalfInt family_weight(Family f) { return HalfInt::from_twice(info(f).weight_twice); }

bool family_valid_for(Family f, PunctureMode mode) {
  return mode == PunctureMode::TwoPoint ? info(f).two_point : info(f).three_point;
}

std::string BasisIndex::to_string() const { return family_name(family) + "[" + index.to_string() + "]"; }

// ---------------------------------------------------------------------------

Density operator+(const Density& x, const Density& y) {
  if (x.weight_ != y.weight_)
    throw WeightMismatch("cannot add densities of weights " + x.weight_.to_string() + " and " +
                         y.weight_.to_string());
  return {x.f_ + y.f_, x.weight_};
}

Density operator-(const Density& x, const Density& y) { return x + (-y); }

std::string Density::to_string() const {
  std::string f = f_.to_string();
  if (f.find(' ') != std::string::npos) f = "(" + f + ")";
  return f + " (dz)^{" + weight_.to_string() + "}";
}

Density dens_dot(const Density& x, const Density& y) { return {x.f() * y.f(), x.weight() + y.weight()}; }

Density dens_poisson(const Density& x, const Density& y) {
  const MeroFun t = y.weight().scalar() * (x.f().derivative() * y.f()) -
                    x.weight().scalar() * (x.f() * y.f().derivative());
  return {t, x.weight() + y.weight() + HalfInt(1)};
}

Density basis(Family family, HalfInt index, const PunctureConfig& cfg) {
  const FamilyInfo& fi = info(family);
  if (!family_valid_for(family, cfg.mode()))
    throw InvalidFamilyForConfig("family " + std::string(fi.name) + " does not exist for " + cfg.describe());
  if (fi.half_index == index.is_integer())
    throw ParityMismatch("family " + std::string(fi.name) + " needs " +
                         (fi.half_index ? "a half-odd-integer" : "an integer") + " index, got " +
                         index.to_string());
  const HalfInt weight = HalfInt::from_twice(fi.weight_twice);
  const Scalar s = Scalar::sqrt2();
  const Scalar inv_s = Scalar(Q2(0, make_rational(1, 2)));
  const int t = index.twice();
  // Integer index n = t/2; half index i = t/2 with i + 1/2 = (t+1)/2.
  const int n = t / 2;
  const int ip = (t + 1) / 2;  // i + 1/2 for half indices
  switch (family) {
    case Family::e: return {power_of_z(cfg, 1, n + 1), weight};
    case Family::b: return {power_of_z(cfg, s, ip), weight};
    case Family::eps: return {power_of_z(cfg, 1, n), weight};
    case Family::a: return {power_of_z(cfg, 1, ip), weight};
    case Family::edual: return {power_of_z(cfg, 1, -n - 2), weight};
    case Family::epsdual: return {power_of_z(cfg, 1, -n - 1), weight};
    case Family::adual: return {power_of_z(cfg, 1, -ip - 1), weight};
    case Family::bdual: return {power_of_z(cfg, inv_s, -ip - 1), weight};
    default: break;
  }
  const bool even = n % 2 == 0;
  const int k = floor_div(n, 2);
  // Half index i: either i = 2k + 1/2 (t = 4k + 1) or i = 2k - 1/2 (t = 4k - 1).
  const bool plus_half = ((t - 1) % 4 + 4) % 4 == 0;
  const int kh = plus_half ? floor_div(t - 1, 4) : floor_div(t + 1, 4);
  switch (family) {
    case Family::V:
      return {even ? z_times_quadric(cfg, 1, true, k) : z_times_quadric(cfg, 1, false, k + 1), weight};
    case Family::phi:
      return {z_times_quadric(cfg, s, plus_half, kh), weight};
    case Family::G:
      return {z_times_quadric(cfg, 1, !even, k), weight};
    case Family::Vdual:
      return {even ? z_times_quadric(cfg, 1, false, -k - 1) : z_times_quadric(cfg, 1, true, -k - 2), weight};
    case Family::phidual:
      return {z_times_quadric(cfg, inv_s, !plus_half, -kh - 1), weight};
    case Family::Gdual:
      return {z_times_quadric(cfg, 1, even, -k - 1), weight};
    default: break;
  }
  throw std::logic_error("unhandled family");
}

Scalar kn_pairing(const Density& u, const Density& v) {
  if ((u.weight() + v.weight()) != HalfInt(1))
    throw WeightMismatch("pairing needs weights summing to 1, got " + u.weight().to_string() + " and " +
                         v.weight().to_string());
  return cycle_integral(u.f() * v.f());
}

std::optional<Family> default_family(HalfInt weight, PunctureMode mode, Flavor flavor) {
  const bool three = mode == PunctureMode::ThreePoint;
  switch (weight.twice()) {
    case -2: return three ? Family::V : Family::e;
    case -1: return three ? Family::phi : (flavor == Flavor::Lie ? Family::b : Family::a);
    case 0: return three ? Family::G : Family::eps;
    case 4: return three ? Family::Vdual : Family::edual;
    case 3: return three ? Family::phidual : (flavor == Flavor::Lie ? Family::bdual : Family::adual);
    case 2: return three ? Family::Gdual : Family::epsdual;
    default: return std::nullopt;
  }
}

std::vector<HalfInt> window_indices(Family family, int window) {
  std::vector<HalfInt> out;
  if (has_half_integer_index(family)) {
    for (int t = -2 * window + 1; t <= 2 * window - 1; t += 2) out.push_back(HalfInt::from_twice(t));
  } else {
    for (int n = -window; n <= window; ++n) out.emplace_back(n);
  }
  return out;
}

Scalar Expansion::coeff(const BasisIndex& ix) const {
  for (const auto& [k, c] : coeffs)
    if (k == ix) return c;
  return {};
}

Expansion expand_in_basis(const Density& u, Family family, int window) {
  const PunctureConfig& cfg = u.config();
  if (family_weight(family) != u.weight())
    throw WeightMismatch("density of weight " + u.weight().to_string() + " cannot be expanded in " +
                         family_name(family));
  const Family partner = is_dual(family) ? primal_of(family) : dual_of(family);
  Expansion out{{}, u};
  if (u.is_zero()) return out;
  for (const HalfInt ix : window_indices(family, window)) {
    const Scalar c = kn_pairing(u, basis(partner, ix, cfg));
    if (c.is_zero()) continue;
    out.coeffs.push_back({BasisIndex{family, ix}, c});
    out.residual = out.residual - c * basis(family, ix, cfg);
  }
  return out;
}

Expansion expand_in_dual_basis(const Density& u, int window, Flavor flavor) {
  const auto fam = default_family(u.weight(), u.config().mode(), flavor);
  if (!fam || !is_dual(*fam))
    throw WeightMismatch("no dual basis for weight " + u.weight().to_string());
  return expand_in_basis(u, *fam, window);
}

std::optional<Expansion> expand_exact(const Density& u, Flavor flavor, int max_window) {
  const auto fam = default_family(u.weight(), u.config().mode(), flavor);
  if (!fam) return std::nullopt;
  if (u.is_zero()) return Expansion{{}, u};
  // Degrees of the basis grow by one per index on either side, so the pole
  // order and the order at infinity bound the relevant range.
  int pole = 0;
  for (const auto& p : u.f().poles()) pole = std::max(pole, p.order);
  int window = 2 * std::max(pole, std::abs(u.f().degree_at_infinity())) + 4;
  for (;; window *= 2) {
    window = std::min(window, max_window);
    Expansion e = expand_in_basis(u, *fam, window);
    if (e.exact()) return e;
    if (window >= max_window) return std::nullopt;
  }
}

}  // namespace knsuper
