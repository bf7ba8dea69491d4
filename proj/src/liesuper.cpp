#include "knsuper/liesuper.hpp"

#include <map>

#include "knsuper/errors.hpp"
#include "knsuper/linalg.hpp"

namespace knsuper {

namespace {

const Scalar kHalf = Scalar(make_rational(1, 2));
const Scalar kThreeHalves = Scalar(make_rational(3, 2));

Scalar c_even(const MeroFun& e, const MeroFun& f, const MeroFun& R) {
  if (e.is_zero() || f.is_zero()) return {};
  const MeroFun e1 = e.derivative(), f1 = f.derivative();
  MeroFun integrand = kHalf * (e1.derivative(2) * f - e * f1.derivative(2));
  if (!R.is_zero()) integrand = integrand - R * (e1 * f - e * f1);
  return -cycle_integral(integrand);
}

Scalar c_odd(const MeroFun& phi, const MeroFun& psi, const MeroFun& R) {
  if (phi.is_zero() || psi.is_zero()) return {};
  MeroFun integrand = kHalf * (phi.derivative(2) * psi + phi * psi.derivative(2));
  if (!R.is_zero()) integrand = integrand - kHalf * (R * phi * psi);
  return cycle_integral(integrand);
}

Family lie_family(const PunctureConfig& cfg, bool odd, bool dual) {
  const HalfInt w = odd ? (dual ? half(3) : half(-1)) : (dual ? HalfInt(2) : HalfInt(-1));
  return *default_family(w, cfg.mode(), Flavor::Lie);
}

// Coefficients of the closed forms depend on alpha only through even powers.
Scalar al_pow(const PunctureConfig& cfg, int k) { return cfg.alpha().pow(k); }

Scalar delta(int a, int b) { return Scalar(long(a == b)); }

// Splits a half-odd index i as 2k + 1/2 (plus = true) or 2k - 1/2.
void split_half(HalfInt i, bool& plus, int& k) {
  const int t = i.twice();
  plus = ((t - 1) % 4 + 4) % 4 == 0;
  k = plus ? (t - 1) / 4 : (t + 1) / 4;
}

void require_index(const BasisIndex& ix) {
  if (has_half_integer_index(ix.family) == ix.index.is_integer())
    throw ParityMismatch("malformed index " + ix.to_string());
}

Scalar S(long v) { return Scalar(v); }

}  // namespace

SuperElement sbracket(const SuperElement& x, const SuperElement& y) {
  if (!(x.config() == y.config())) throw IncompatibleConfig("bracket of elements on different configurations");
  Density even = dens_poisson(x.even(), y.even());
  if (!x.odd().is_zero() && !y.odd().is_zero()) even = even + kHalf * dens_dot(x.odd(), y.odd());
  Density odd = dens_poisson(x.even(), y.odd()) - dens_poisson(y.even(), x.odd());
  return {even, odd};
}

bool check_super_skew(const SuperElement& x, const SuperElement& y) {
  const int s = parity_sign(x.homogeneous_parity(), y.homogeneous_parity());
  return sbracket(x, y) == Scalar(long(-s)) * sbracket(y, x);
}

bool check_super_jacobi(const SuperElement& x, const SuperElement& y, const SuperElement& z) {
  const Parity a = x.homogeneous_parity(), b = y.homogeneous_parity(), c = z.homogeneous_parity();
  const SuperElement sum = Scalar(long(parity_sign(a, c))) * sbracket(x, sbracket(y, z)) +
                           Scalar(long(parity_sign(b, a))) * sbracket(y, sbracket(z, x)) +
                           Scalar(long(parity_sign(c, b))) * sbracket(z, sbracket(x, y));
  return sum.is_zero();
}

Scalar cocycle2(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R) {
  return c_even(x.even().f(), y.even().f(), R.R) + c_odd(x.odd().f(), y.odd().f(), R.R);
}

Scalar cocycle2(const SuperElement& x, const SuperElement& y) {
  return cocycle2(x, y, ProjectiveConnection::zero(x.config()));
}

bool check_cocycle_skew(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R) {
  const int s = parity_sign(x.homogeneous_parity(), y.homogeneous_parity());
  return cocycle2(x, y, R) == Scalar(long(-s)) * cocycle2(y, x, R);
}

bool check_cocycle_jacobi(const SuperElement& x, const SuperElement& y, const SuperElement& z,
                          const ProjectiveConnection& R) {
  const Parity a = x.homogeneous_parity(), b = y.homogeneous_parity(), c = z.homogeneous_parity();
  const Scalar sum = Scalar(long(parity_sign(a, c))) * cocycle2(x, sbracket(y, z), R) +
                     Scalar(long(parity_sign(b, a))) * cocycle2(y, sbracket(z, x), R) +
                     Scalar(long(parity_sign(c, b))) * cocycle2(z, sbracket(x, y), R);
  return sum.is_zero();
}

Scalar closed_form_c(const BasisIndex& i, const BasisIndex& j, const PunctureConfig& cfg) {
  require_index(i);
  require_index(j);
  const bool three = cfg.mode() == PunctureMode::ThreePoint;
  const Family even_fam = three ? Family::V : Family::e;
  const Family odd_fam = three ? Family::phi : Family::b;
  for (const auto* ix : {&i, &j})
    if (ix->family != even_fam && ix->family != odd_fam)
      throw InvalidFamilyForConfig("no closed form for " + ix->to_string() + " on " + cfg.describe());
  if (i.family != j.family) return {};

  if (!three) {
    if (i.family == Family::e) {
      const long n = i.index.as_int();
      return Scalar(-(n * n * n - n)) * delta(n, -j.index.as_int());
    }
    const Scalar v = i.index.scalar();
    return Scalar(2L) * (v * v - Scalar(make_rational(1, 4))) * delta(i.index.twice(), -j.index.twice());
  }

  if (i.family == Family::V) {
    const int n = i.index.as_int(), m = j.index.as_int();
    const bool ne = n % 2 == 0, me = m % 2 == 0;
    if (ne != me) return {};
    if (ne) {
      const long k = n / 2, l = m / 2;
      return S(-2 * k * (4 * k * k - 1)) * delta(k + l, 0) -
             S(8 * k * (k - 1) * (2 * k - 1)) * al_pow(cfg, 2) * delta(k + l, 1) -
             S(8 * k * (k - 1) * (k - 2)) * al_pow(cfg, 4) * delta(k + l, 2);
    }
    const long k = (n - 1) / 2, l = (m - 1) / 2;
    return S(-8 * (k + 1) * k * (k - 1)) * al_pow(cfg, 2) * delta(k + l, 0) -
           S(4 * k * (k + 1) * (2 * k + 1)) * delta(k + l, -1);
  }

  bool pi, pj;
  int ki, kj;
  split_half(i.index, pi, ki);
  split_half(j.index, pj, kj);
  if (pi == pj) return {};
  // Symmetric in the two arguments: put the 2k + 1/2 index first.
  const long k = pi ? ki : kj, l = pi ? kj : ki;
  return S(4 * k * (2 * k + 1)) * delta(k + l, 0) + S(8 * k * (k - 1)) * al_pow(cfg, 2) * delta(k + l, 1);
}

bool coboundary_witness_check(const ProjectiveConnection& R, const SuperElement& x, const SuperElement& y) {
  const Scalar diff = cocycle2(x, y, R) - cocycle2(x, y);
  const SuperElement b = sbracket(x, y);
  const Scalar f = -cycle_integral(R.R * b.even().f());
  return diff == f;
}

DualSuperElement onecocycle_L(const SuperElement& x, const ProjectiveConnection& R) {
  const MeroFun& e = x.even().f();
  const MeroFun& phi = x.odd().f();
  MeroFun even = -e.derivative(3);
  MeroFun odd = phi.derivative(2);
  if (!R.R.is_zero()) {
    even = even + Scalar(2L) * (R.R * e.derivative()) + R.R.derivative() * e;
    odd = odd - kHalf * (R.R * phi);
  }
  return {Density(even, HalfInt(2)), Density(odd, half(3))};
}

DualSuperElement onecocycle_L(const SuperElement& x) { return onecocycle_L(x, ProjectiveConnection::zero(x.config())); }

DualSuperElement coad_L(const SuperElement& x, const DualSuperElement& u) {
  if (!(x.config() == u.config())) throw IncompatibleConfig("coadjoint action across configurations");
  const MeroFun& e = x.even().f();
  const MeroFun& phi = x.odd().f();
  const MeroFun& U = u.even().f();
  const MeroFun& W = u.odd().f();
  const MeroFun e1 = e.derivative();
  MeroFun even = Scalar(2L) * (e1 * U) + e * U.derivative();
  MeroFun odd = kThreeHalves * (e1 * W) + e * W.derivative();
  if (!phi.is_zero()) {
    even = even - (kThreeHalves * (phi.derivative() * W) + kHalf * (phi * W.derivative()));
    odd = odd - kHalf * (phi * U);
  }
  return {Density(even, HalfInt(2)), Density(odd, half(3))};
}

Scalar pairing(const DualSuperElement& u, const SuperElement& x) {
  return kn_pairing(u.even(), x.even()) + kn_pairing(u.odd(), x.odd());
}

bool check_onecocycle_L(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R) {
  const int s = parity_sign(x.homogeneous_parity(), y.homogeneous_parity());
  const DualSuperElement lhs = onecocycle_L(sbracket(x, y), R);
  const DualSuperElement rhs =
      coad_L(x, onecocycle_L(y, R)) - Scalar(long(s)) * coad_L(y, onecocycle_L(x, R));
  return lhs == rhs && pairing(onecocycle_L(x, R), y) == cocycle2(x, y, R);
}

bool check_coadjoint_duality_L(const SuperElement& x, const DualSuperElement& u, const SuperElement& y) {
  const int s = parity_sign(x.homogeneous_parity(), u.homogeneous_parity());
  y.homogeneous_parity();
  return pairing(coad_L(x, u), y) == Scalar(long(-s)) * pairing(u, sbracket(x, y));
}

CoeffMap closed_form_C1L(const BasisIndex& ix, const PunctureConfig& cfg) {
  require_index(ix);
  const bool three = cfg.mode() == PunctureMode::ThreePoint;
  CoeffMap out;
  auto put = [&](Family f, HalfInt i, const Scalar& c) { out.push_back({BasisIndex{f, i}, c}); };
  if (!three) {
    if (ix.family == Family::e) {
      const long n = ix.index.as_int();
      put(Family::edual, HalfInt(int(-n)), S(-(n + 1) * n * (n - 1)));
    } else if (ix.family == Family::b) {
      const Scalar v = ix.index.scalar();
      put(Family::bdual, -ix.index, Scalar(2L) * (v * v - Scalar(make_rational(1, 4))));
    } else {
      throw InvalidFamilyForConfig("no closed form for " + ix.to_string() + " on " + cfg.describe());
    }
    return canonical(out);
  }
  const Scalar a2 = al_pow(cfg, 2), a4 = al_pow(cfg, 4);
  if (ix.family == Family::V) {
    const long n = ix.index.as_int();
    const int ni = int(n);
    if (n % 2 == 0) {
      put(Family::Vdual, HalfInt(-ni), S(-n * (n - 1) * (n + 1)));
      put(Family::Vdual, HalfInt(-ni + 2), S(-2 * n * (n - 2) * (n - 1)) * a2);
      put(Family::Vdual, HalfInt(-ni + 4), S(-n * (n - 2) * (n - 4)) * a4);
    } else {
      put(Family::Vdual, HalfInt(-ni), S(-(n + 1) * n * (n - 1)));
      put(Family::Vdual, HalfInt(-ni + 2), S(-(n + 1) * (n - 1) * (n - 3)) * a2);
    }
  } else if (ix.family == Family::phi) {
    bool plus;
    int k;
    split_half(ix.index, plus, k);
    const Scalar i = ix.index.scalar();
    const Scalar h = kHalf;
    // i - 1/2 even exactly when i = 2k + 1/2.
    if (plus) {
      put(Family::phidual, -ix.index, Scalar(2L) * (i + h) * (i - h));
      put(Family::phidual, -ix.index + HalfInt(2), Scalar(2L) * a2 * (i - h) * (i - Scalar(make_rational(5, 2))));
    } else {
      put(Family::phidual, -ix.index, Scalar(2L) * (i + h) * (i - h));
      put(Family::phidual, -ix.index + HalfInt(2), Scalar(2L) * a2 * (i + h) * (i - kThreeHalves));
    }
  } else {
    throw InvalidFamilyForConfig("no closed form for " + ix.to_string() + " on " + cfg.describe());
  }
  return canonical(out);
}

std::vector<BasisIndex> lie_basis(const PunctureConfig& cfg, int window) {
  std::vector<BasisIndex> out;
  for (const bool odd : {false, true}) {
    const Family f = lie_family(cfg, odd, false);
    for (const HalfInt i : window_indices(f, window)) out.push_back({f, i});
  }
  return out;
}

std::vector<BasisIndex> lie_dual_basis(const PunctureConfig& cfg, int window) {
  std::vector<BasisIndex> out;
  for (const bool odd : {false, true}) {
    const Family f = lie_family(cfg, odd, true);
    for (const HalfInt i : window_indices(f, window)) out.push_back({f, i});
  }
  return out;
}

namespace {

template <class Pair>
std::optional<CoeffMap> expand_pair(const Pair& x) {
  CoeffMap out;
  for (const Density* d : {&x.even(), &x.odd()}) {
    auto e = expand_exact(*d, Flavor::Lie);
    if (!e) return std::nullopt;
    out.insert(out.end(), e->coeffs.begin(), e->coeffs.end());
  }
  return canonical(out);
}

}  // namespace

std::optional<CoeffMap> expand(const SuperElement& x) { return expand_pair(x); }
std::optional<CoeffMap> expand(const DualSuperElement& u) { return expand_pair(u); }

std::vector<SuperElement> osp12_generators(const PunctureConfig& cfg) {
  const MeroFun one = MeroFun::constant(cfg, 1), z = MeroFun::z(cfg);
  const Scalar s = Scalar::sqrt2();
  return {SuperElement::from_even(one), SuperElement::from_even(z), SuperElement::from_even(z * z),
          SuperElement::from_odd(s * one), SuperElement::from_odd(s * z)};
}

Osp12Report osp12_vanishing_check(const PunctureConfig& cfg) {
  const auto gens = osp12_generators(cfg);
  const char* names[] = {"dz^-1", "z dz^-1", "z^2 dz^-1", "s dz^-1/2", "s z dz^-1/2"};
  auto in_span = [](const SuperElement& x) {
    const MeroFun& e = x.even().f();
    const MeroFun& p = x.odd().f();
    return e.is_polynomial() && p.is_polynomial() && e.numerator().degree() <= 2 && p.numerator().degree() <= 1;
  };
  Osp12Report r;
  r.closed = true;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      if (!in_span(sbracket(gens[a], gens[b]))) {
        r.closed = false;
        r.failures.push_back(std::string("bracket leaves span: ") + names[a] + ", " + names[b]);
      }
      ++r.pairs;
      const Scalar c = cocycle2(gens[a], gens[b]);
      if (c.is_zero()) ++r.vanishing;
      else r.failures.push_back(std::string("c(") + names[a] + ", " + names[b] + ") = " + c.to_string());
    }
  return r;
}

namespace {

struct Jet {
  BasisIndex ix;
  bool odd;
  MeroFun f, f1, f2, f3;
};

std::vector<Jet> jets(const PunctureConfig& cfg, int window) {
  std::vector<Jet> out;
  for (const BasisIndex& ix : lie_basis(cfg, window)) {
    const MeroFun f = basis(ix, cfg).f();
    const MeroFun f1 = f.derivative(), f2 = f1.derivative();
    out.push_back({ix, has_half_integer_index(ix.family), f, f1, f2, f2.derivative()});
  }
  return out;
}

}  // namespace

StructureTable table_c2(const PunctureConfig& cfg, int window, const ProjectiveConnection* R) {
  StructureTable t;
  t.name = "c2";
  const auto js = jets(cfg, window);
  const bool flat = R == nullptr || R->R.is_zero();
  for (const Jet& x : js)
    for (const Jet& y : js) {
      if (x.odd != y.odd) continue;
      Scalar v;
      if (!x.odd) {
        MeroFun integrand = kHalf * (x.f3 * y.f - x.f * y.f3);
        if (!flat) integrand = integrand - R->R * (x.f1 * y.f - x.f * y.f1);
        v = -cycle_integral(integrand);
      } else {
        MeroFun integrand = kHalf * (x.f2 * y.f + x.f * y.f2);
        if (!flat) integrand = integrand - kHalf * (R->R * x.f * y.f);
        v = cycle_integral(integrand);
      }
      if (!v.is_zero()) t.pairs.push_back({x.ix, y.ix, v});
    }
  return t;
}

StructureTable table_C1_L(const PunctureConfig& cfg, int window) {
  StructureTable t;
  t.name = "C1L";
  for (const BasisIndex& ix : lie_basis(cfg, window)) {
    auto e = expand(onecocycle_L(SuperElement::from_basis(ix, cfg)));
    if (!e) throw ResidualNonzero("C(" + ix.to_string() + ") has no finite dual expansion");
    t.maps.push_back({ix, *e});
  }
  return t;
}

std::vector<std::string> compare_c2_with_closed_form(const StructureTable& t, const PunctureConfig& cfg, int window) {
  std::vector<std::string> bad;
  const auto b = lie_basis(cfg, window);
  for (const BasisIndex& x : b)
    for (const BasisIndex& y : b) {
      const Scalar got = t.value(x, y), want = closed_form_c(x, y, cfg);
      if (!(got == want))
        bad.push_back("c(" + x.to_string() + ", " + y.to_string() + ") = " + got.to_string() + ", closed form " +
                      want.to_string());
    }
  return bad;
}

std::vector<std::string> compare_C1L_with_closed_form(const StructureTable& t, const PunctureConfig& cfg) {
  std::vector<std::string> bad;
  for (const auto& e : t.maps) {
    const CoeffMap want = closed_form_C1L(e.arg, cfg);
    if (!same_coeffs(e.coeffs, want))
      bad.push_back("C(" + e.arg.to_string() + ") = " + render_coeffs(e.coeffs) + ", closed form " +
                    render_coeffs(want));
  }
  return bad;
}

std::set<int> c2_support_twice(const StructureTable& t) {
  std::set<int> out;
  for (const auto& e : t.pairs)
    if (!e.value.is_zero()) out.insert((e.left.index + e.right.index).twice());
  return out;
}

NontrivialityReport window_nontriviality(const PunctureConfig& cfg, int pair_window, int functional_window) {
  struct Eq {
    CoeffMap bracket;
    Scalar value;
  };
  std::vector<Eq> eqs;
  std::map<BasisIndex, std::size_t> all;
  const auto b = lie_basis(cfg, pair_window);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) {
      const SuperElement x = SuperElement::from_basis(b[i], cfg), y = SuperElement::from_basis(b[j], cfg);
      auto br = expand(sbracket(x, y));
      if (!br) throw ResidualNonzero("bracket without finite expansion");
      for (const auto& [k, c] : *br) all.emplace(k, 0);
      eqs.push_back({*br, cocycle2(x, y)});
    }
  std::size_t n = 0;
  for (auto& [k, idx] : all) idx = n++;

  auto solve = [&](bool restricted, std::size_t& unknowns) {
    std::map<BasisIndex, std::size_t> var;
    if (restricted) {
      for (const BasisIndex& k : lie_basis(cfg, functional_window)) var.emplace(k, var.size());
    } else {
      var = all;
    }
    unknowns = var.size();
    LinearSystem<Scalar> sys(var.size());
    for (const Eq& e : eqs) {
      LinearSystem<Scalar>::Row row;
      for (const auto& [k, c] : e.bracket) {
        auto it = var.find(k);
        if (it != var.end()) row[it->second] = c;
      }
      sys.add(std::move(row), e.value);
    }
    return sys.consistent();
  };
  NontrivialityReport r;
  r.equations = eqs.size();
  r.feasible = solve(true, r.unknowns);
  std::size_t ignored = 0;
  r.feasible_unrestricted = solve(false, ignored);
  return r;
}

}  // namespace knsuper
