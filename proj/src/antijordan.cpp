#include "knsuper/antijordan.hpp"

#include <cstdlib>

#include "knsuper/errors.hpp"
#include "knsuper/linalg.hpp"

namespace knsuper {

namespace {

const Scalar kHalf = Scalar(make_rational(1, 2));

Family jordan_family(const PunctureConfig& cfg, bool odd, bool dual) {
  const HalfInt w = odd ? (dual ? half(3) : half(-1)) : (dual ? HalfInt(1) : HalfInt(0));
  return *default_family(w, cfg.mode(), Flavor::Jordan);
}

std::string label(const JordanElement& x) {
  if (auto e = expand(x)) return render_coeffs(*e);
  return x.to_string();
}

}  // namespace

JordanElement jproduct(const JordanElement& x, const JordanElement& y) {
  if (!(x.config() == y.config())) throw IncompatibleConfig("product of elements on different configurations");
  const MeroFun& e = x.even().f();
  const MeroFun& f = y.even().f();
  const MeroFun& phi = x.odd().f();
  const MeroFun& psi = y.odd().f();
  MeroFun even = e * f;
  if (!phi.is_zero() && !psi.is_zero()) even = even + kHalf * (phi * psi.derivative() - phi.derivative() * psi);
  const MeroFun odd = kHalf * (e * psi + f * phi);
  return {Density(even, HalfInt(0)), Density(odd, half(-1))};
}

bool check_supercommutative(const JordanElement& x, const JordanElement& y) {
  const int s = parity_sign(x.homogeneous_parity(), y.homogeneous_parity());
  return jproduct(x, y) == Scalar(long(s)) * jproduct(y, x);
}

bool check_even_associative(const JordanElement& x, const JordanElement& y, const JordanElement& z) {
  return jproduct(jproduct(x, y), z) == jproduct(x, jproduct(y, z));
}

bool check_odd_derivation(const JordanElement& x, const JordanElement& y, const JordanElement& a) {
  const int s = x.homogeneous_parity() ? -1 : 1;
  y.homogeneous_parity();
  return jproduct(jproduct(x, y), a) ==
         jproduct(jproduct(x, a), y) + Scalar(long(s)) * jproduct(x, jproduct(y, a));
}

AxiomReport check_antialgebra_axioms(const std::vector<std::array<JordanElement, 3>>& sample) {
  AxiomReport r;
  auto fail = [&](const char* what, const JordanElement& x, const JordanElement& y, const JordanElement* z) {
    std::string msg = std::string(what) + " fails on (" + label(x) + ", " + label(y);
    if (z) msg += ", " + label(*z);
    r.failures.push_back(msg + ")");
  };
  for (const auto& [x, y, z] : sample) {
    const Parity px = x.homogeneous_parity(), py = y.homogeneous_parity(), pz = z.homogeneous_parity();
    ++r.checks;
    if (!check_supercommutative(x, y)) fail("supercommutativity", x, y, nullptr);
    if (px == 0 && py == 0 && pz == 0) {
      ++r.checks;
      if (!check_even_associative(x, y, z)) fail("associativity", x, y, &z);
    }
    if (pz == 1) {
      ++r.checks;
      if (!check_odd_derivation(x, y, z)) fail("odd derivation", x, y, &z);
    }
  }
  return r;
}

std::vector<BasisIndex> jordan_basis(const PunctureConfig& cfg, int window) {
  std::vector<BasisIndex> out;
  for (const bool odd : {false, true}) {
    const Family f = jordan_family(cfg, odd, false);
    for (const HalfInt i : window_indices(f, window)) out.push_back({f, i});
  }
  return out;
}

std::vector<BasisIndex> jordan_dual_basis(const PunctureConfig& cfg, int window) {
  std::vector<BasisIndex> out;
  for (const bool odd : {false, true}) {
    const Family f = jordan_family(cfg, odd, true);
    for (const HalfInt i : window_indices(f, window)) out.push_back({f, i});
  }
  return out;
}

namespace {

template <class Pair>
std::optional<CoeffMap> expand_jordan(const Pair& x) {
  CoeffMap out;
  for (const Density* d : {&x.even(), &x.odd()}) {
    auto e = expand_exact(*d, Flavor::Jordan);
    if (!e) return std::nullopt;
    out.insert(out.end(), e->coeffs.begin(), e->coeffs.end());
  }
  return canonical(out);
}

}  // namespace

std::optional<CoeffMap> expand(const JordanElement& x) { return expand_jordan(x); }
std::optional<CoeffMap> expand(const DualJordanElement& u) { return expand_jordan(u); }

CoeffMap ak1_product(const BasisIndex& x, const BasisIndex& y) {
  for (const auto* v : {&x, &y})
    if ((v->family != Family::eps && v->family != Family::a) || has_half_integer_index(v->family) == v->index.is_integer())
      throw UnknownGenerator("not an AK(1) basis label: " + v->to_string());
  if (x.family == Family::eps && y.family == Family::eps) return {{{Family::eps, x.index + y.index}, Scalar(1L)}};
  if (x.family == Family::a && y.family == Family::a)
    return canonical({{{Family::eps, x.index + y.index}, kHalf * (y.index.scalar() - x.index.scalar())}});
  return {{{Family::a, x.index + y.index}, kHalf}};
}

JordanElement iota(const BasisIndex& x, const PunctureConfig& cfg) {
  if (cfg.mode() != PunctureMode::ThreePoint) throw IncompatibleConfig("the embedding targets three points");
  const Scalar& al = cfg.alpha();
  auto G = [&](int n) { return JordanElement::from_basis({Family::G, n}, cfg); };
  auto phi = [&](int twice) { return JordanElement::from_basis({Family::phi, half(twice)}, cfg); };
  if (x.family == Family::eps && x.index.is_integer()) {
    switch (x.index.as_int()) {
      case -1: return G(0) + Scalar(2L) * al * G(-1) + Scalar(2L) * al * al * G(-2);
      case 0: return G(0);
      case 1: return G(0) - Scalar(2L) * al * G(-1) + Scalar(2L) * al * al * G(-2);
      default: break;
    }
  }
  if (x.family == Family::a && (x.index == half(-1) || x.index == half(1))) {
    const Scalar c = Scalar(1L) / (Scalar(2L) * cfg.beta());
    const Scalar sign = x.index == half(-1) ? Scalar(1L) : Scalar(-1L);
    return c * (phi(1) + sign * al * phi(-1));
  }
  throw UnknownGenerator("iota is given only on eps[-1], eps[0], eps[1], a[-1/2], a[1/2]; got " + x.to_string());
}

JordanElement iota_extended(const BasisIndex& x, const PunctureConfig& cfg) {
  if (cfg.mode() != PunctureMode::ThreePoint) throw IncompatibleConfig("the embedding targets three points");
  const Scalar& al = cfg.alpha();
  if (x.family == Family::eps && x.index.is_integer()) {
    const int n = x.index.as_int();
    return JordanElement::from_even(MeroFun::linear_power(cfg, al, n) * MeroFun::linear_power(cfg, -al, -n));
  }
  if (x.family == Family::a && !x.index.is_integer()) {
    const int ip = (x.index.twice() + 1) / 2;
    const Scalar c = Scalar::sqrt2() / (Scalar(2L) * cfg.beta());
    return JordanElement::from_odd(c * (MeroFun::linear_power(cfg, al, ip) * MeroFun::linear_power(cfg, -al, 1 - ip)));
  }
  throw UnknownGenerator("not an AK(1) basis label: " + x.to_string());
}

JordanElement iota_extended(const CoeffMap& x, const PunctureConfig& cfg) {
  JordanElement out(cfg);
  for (const auto& [k, c] : x) out = out + c * iota_extended(k, cfg);
  return out;
}

DualJordanElement onecocycle_J(const JordanElement& x, const ProjectiveConnection& R) {
  MeroFun even = -x.even().f().derivative();
  MeroFun odd = x.odd().f().derivative(2);
  if (!R.R.is_zero()) odd = odd - kHalf * (R.R * x.odd().f());
  return {Density(even, HalfInt(1)), Density(odd, half(3))};
}

DualJordanElement onecocycle_J(const JordanElement& x) { return onecocycle_J(x, ProjectiveConnection::zero(x.config())); }

DualJordanElement coad_J(const JordanElement& x, const DualJordanElement& u) {
  if (!(x.config() == u.config())) throw IncompatibleConfig("coadjoint action across configurations");
  const MeroFun& e = x.even().f();
  const MeroFun& phi = x.odd().f();
  const MeroFun& U = u.even().f();
  const MeroFun& W = u.odd().f();
  MeroFun even = e * U;
  MeroFun odd = kHalf * (e * W);
  if (!phi.is_zero()) {
    even = even - kHalf * (phi * W);
    odd = odd - (kHalf * (phi * U.derivative()) + phi.derivative() * U);
  }
  return {Density(even, HalfInt(1)), Density(odd, half(3))};
}

Scalar pairing(const DualJordanElement& u, const JordanElement& x) {
  return kn_pairing(u.even(), x.even()) + kn_pairing(u.odd(), x.odd());
}

bool check_onecocycle_J(const JordanElement& x, const JordanElement& y, const ProjectiveConnection& R) {
  const int s = parity_sign(x.homogeneous_parity(), y.homogeneous_parity());
  return onecocycle_J(jproduct(x, y), R) ==
         coad_J(x, onecocycle_J(y, R)) + Scalar(long(s)) * coad_J(y, onecocycle_J(x, R));
}

bool check_coadjoint_duality_J(const JordanElement& x, const DualJordanElement& u, const JordanElement& y) {
  const int s = parity_sign(x.homogeneous_parity(), u.homogeneous_parity());
  y.homogeneous_parity();
  return pairing(coad_J(x, u), y) == Scalar(long(s)) * pairing(u, jproduct(x, y));
}

CoeffMap closed_form_C1J(const BasisIndex& ix, const PunctureConfig& cfg) {
  if (has_half_integer_index(ix.family) == ix.index.is_integer()) throw ParityMismatch("malformed index " + ix.to_string());
  if (ix.family == Family::phi) return closed_form_C1L(ix, cfg);
  CoeffMap out;
  if (cfg.mode() == PunctureMode::TwoPoint) {
    if (ix.family == Family::eps) {
      out.push_back({{Family::epsdual, -ix.index}, Scalar(long(-ix.index.as_int()))});
    } else if (ix.family == Family::a) {
      const Scalar i = ix.index.scalar();
      out.push_back({{Family::adual, -ix.index}, (i - kHalf) * (i + kHalf)});
    } else {
      throw InvalidFamilyForConfig("no closed form for " + ix.to_string() + " on " + cfg.describe());
    }
    return canonical(out);
  }
  if (ix.family != Family::G) throw InvalidFamilyForConfig("no closed form for " + ix.to_string() + " on " + cfg.describe());
  const int n = ix.index.as_int();
  out.push_back({{Family::Gdual, -n}, Scalar(long(-n))});
  if (n % 2 != 0) out.push_back({{Family::Gdual, -n + 2}, Scalar(long(-(n - 1))) * cfg.alpha().pow(2)});
  return canonical(out);
}

StructureTable table_C1_J(const PunctureConfig& cfg, int window) {
  StructureTable t;
  t.name = "C1J";
  for (const BasisIndex& ix : jordan_basis(cfg, window)) {
    auto e = expand(onecocycle_J(JordanElement::from_basis(ix, cfg)));
    if (!e) throw ResidualNonzero("C(" + ix.to_string() + ") has no finite dual expansion");
    t.maps.push_back({ix, *e});
  }
  return t;
}

std::vector<std::string> compare_C1J_with_closed_form(const StructureTable& t, const PunctureConfig& cfg) {
  std::vector<std::string> bad;
  for (const auto& e : t.maps) {
    const CoeffMap want = closed_form_C1J(e.arg, cfg);
    if (!same_coeffs(e.coeffs, want))
      bad.push_back("C(" + e.arg.to_string() + ") = " + render_coeffs(e.coeffs) + ", closed form " +
                    render_coeffs(want));
  }
  return bad;
}

// ---------------------------------------------------------------------------

Scalar CocycleUnknowns::lambda_at(int n, int r) const {
  auto it = lambda.find({HalfInt(n), HalfInt(r)});
  if (it == lambda.end()) throw UnderdeterminedInterior("lambda_" + std::to_string(n) + "^" + std::to_string(r) + " is not fixed in this window");
  return it->second;
}

Scalar CocycleUnknowns::mu_at(HalfInt i, HalfInt k) const {
  auto it = mu.find({i, k});
  if (it == mu.end()) throw UnderdeterminedInterior("mu_" + i.to_string() + "^" + k.to_string() + " is not fixed in this window");
  return it->second;
}

std::vector<std::string> CocycleUnknowns::mismatches_with_closed_form() const {
  std::vector<std::string> bad;
  for (const auto& [nr, v] : lambda) {
    const int n = nr.first.as_int(), r = nr.second.as_int();
    const Scalar want = r == -n ? Scalar(long(-n)) : Scalar();
    if (!(v == want))
      bad.push_back("lambda_" + nr.first.to_string() + "^" + nr.second.to_string() + " = " + v.to_string());
  }
  for (const auto& [ik, v] : mu) {
    const Scalar k = ik.second.scalar();
    const Scalar want = ik.second == -ik.first ? k * k - Scalar(make_rational(1, 4)) : Scalar();
    if (!(v == want))
      bad.push_back("mu_" + ik.first.to_string() + "^" + ik.second.to_string() + " = " + v.to_string());
  }
  return bad;
}

nlohmann::json CocycleUnknowns::to_json() const {
  nlohmann::json l = nlohmann::json::array(), m = nlohmann::json::array();
  for (const auto& [nr, v] : lambda)
    if (!v.is_zero()) l.push_back({{"n", nr.first.as_int()}, {"r", nr.second.as_int()}, {"value", v.to_string()}});
  for (const auto& [ik, v] : mu)
    if (!v.is_zero()) m.push_back({{"i", ik.first.to_string()}, {"k", ik.second.to_string()}, {"value", v.to_string()}});
  return {{"window", window}, {"interior", interior}, {"lambda", l}, {"mu", m}};
}

CocycleUnknowns unique_solver(int W) {
  if (W < 2) throw ConfigError("unique_solver needs W >= 2");
  const int n_int = 2 * W + 1, n_half = 2 * W;
  // lambda_n^r at (n + W) * n_int + (r + W); mu_i^k after that, indexed by
  // (2i + 2W - 1)/2 for half-odd i.
  auto in_int = [&](int x) { return std::abs(x) <= W; };
  auto in_half = [&](int twice) { return std::abs(twice) <= 2 * W - 1; };
  auto L = [&](int n, int r) { return std::size_t((n + W) * n_int + (r + W)); };
  auto M = [&](int ti, int tk) {
    return std::size_t(n_int * n_int + ((ti + 2 * W - 1) / 2) * n_half + (tk + 2 * W - 1) / 2);
  };
  const std::size_t nvars = std::size_t(n_int * n_int + n_half * n_half);
  LinearSystem<Rational> sys(nvars);
  std::size_t equations = 0;
  auto add = [&](std::initializer_list<std::pair<std::size_t, Rational>> terms, Rational rhs = 0) {
    LinearSystem<Rational>::Row row;
    for (const auto& [v, c] : terms) row[v] += c;
    sys.add(std::move(row), std::move(rhs));
    ++equations;
  };

  // A term is a lambda or mu unknown with a coefficient. Terms that vanish on
  // K3 (lambda_0^r, mu_{+-1/2}^k) are zero for every upper index, so they drop
  // out even when that index leaves the window; a relation is kept when all
  // its remaining terms are in the window.
  struct Term {
    bool is_mu;
    int a, b;  // (n, r) or twice (i, k)
    Rational c;
  };
  auto relation = [&](std::initializer_list<Term> terms) {
    LinearSystem<Rational>::Row row;
    for (const Term& t : terms) {
      if (t.is_mu ? std::abs(t.a) == 1 : t.a == 0) continue;
      if (t.is_mu ? !(in_half(t.a) && in_half(t.b)) : !(in_int(t.a) && in_int(t.b))) return;
      row[t.is_mu ? M(t.a, t.b) : L(t.a, t.b)] += t.c;
    }
    sys.add(std::move(row), 0);
    ++equations;
  };

  const int span = 3 * W;
  for (int n = -W; n <= W; ++n)
    for (int m = -W; m <= W; ++m)
      for (int r = -span; r <= span; ++r)
        relation({{false, n + m, r, 1}, {false, m, r + n, -1}, {false, n, r + m, -1}});

  for (int n = -W; n <= W; ++n)
    for (int ti = -2 * W + 1; ti <= 2 * W - 1; ti += 2)
      for (int tk = -2 * span + 1; tk <= 2 * span - 1; tk += 2) {
        const Rational k_minus_i = make_rational(tk - ti, 2);
        relation({{true, ti + 2 * n, tk, 1}, {true, ti, tk + 2 * n, -1}, {false, n, (ti + tk) / 2, -k_minus_i}});
      }

  for (int ti = -2 * W + 1; ti <= 2 * W - 1; ti += 2)
    for (int tj = -2 * W + 1; tj <= 2 * W - 1; tj += 2)
      for (int r = -span; r <= span; ++r) {
        const Rational j_minus_i = make_rational(tj - ti, 2);
        relation({{false, (ti + tj) / 2, r, j_minus_i}, {true, tj, 2 * r + ti, 1}, {true, ti, 2 * r + tj, -1}});
      }

  for (int r = -W; r <= W; ++r) add({{L(0, r), 1}});
  for (int tk = -2 * W + 1; tk <= 2 * W - 1; tk += 2) {
    add({{M(1, tk), 1}});
    add({{M(-1, tk), 1}});
  }
  add({{L(1, -1), 1}}, -1);

  if (!sys.consistent()) throw UnderdeterminedInterior("the truncated cocycle system is inconsistent");

  CocycleUnknowns out;
  out.window = W;
  out.interior = W - 2;
  out.unknowns = nvars;
  out.equations = equations;
  out.rank = sys.rank();
  const int I = W - 2;
  std::vector<std::string> free;
  for (int n = -W; n <= W; ++n)
    for (int r = -W; r <= W; ++r) {
      const bool interior = std::abs(n) <= I && std::abs(r) <= I;
      if (auto v = sys.determined(L(n, r))) out.lambda[{HalfInt(n), HalfInt(r)}] = Scalar(*v);
      else if (interior) free.push_back("lambda_" + std::to_string(n) + "^" + std::to_string(r));
    }
  for (int ti = -2 * W + 1; ti <= 2 * W - 1; ti += 2)
    for (int tk = -2 * W + 1; tk <= 2 * W - 1; tk += 2) {
      const bool interior = std::abs(ti) <= 2 * I - 1 && std::abs(tk) <= 2 * I - 1;
      if (auto v = sys.determined(M(ti, tk))) out.mu[{half(ti), half(tk)}] = Scalar(*v);
      else if (interior) free.push_back("mu_" + half(ti).to_string() + "^" + half(tk).to_string());
    }
  if (!free.empty())
    throw UnderdeterminedInterior(std::to_string(free.size()) + " interior unknowns stay free, first " + free.front());
  return out;
}

}  // namespace knsuper
