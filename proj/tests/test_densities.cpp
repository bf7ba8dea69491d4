#include <doctest.h>

#include <random>

#include "knsuper/densities.hpp"
#include "knsuper/errors.hpp"
#include "random_util.hpp"

using namespace knsuper;

namespace {

const PunctureConfig three = PunctureConfig::three_point();
const PunctureConfig two = PunctureConfig::two_point();
const Scalar al = Scalar::alpha();
const Scalar s = Scalar::sqrt2();

MeroFun zf(const PunctureConfig& c) { return MeroFun::z(c); }
MeroFun cst(const PunctureConfig& c, const Scalar& x) { return MeroFun::constant(c, x); }

// (z - al)^k (z + al)^k written out factor by factor.
MeroFun quadric_by_factors(int k) {
  return MeroFun::linear_power(three, al, k) * MeroFun::linear_power(three, -al, k);
}

// Literal transcription of the k-parametrized bases.
MeroFun V_lit(int n) {
  if (n % 2 == 0) return zf(three) * quadric_by_factors(n / 2);
  return quadric_by_factors((n - 1) / 2 + 1);
}

Density vf(const MeroFun& f) { return {f, HalfInt(-1)}; }

}  // namespace

TEST_CASE("half integers") {
  CHECK(half(5).to_string() == "5/2");
  CHECK(half(-1).to_string() == "-1/2");
  CHECK(HalfInt(3).to_string() == "3");
  CHECK(half(1) + half(1) == HalfInt(1));
  CHECK(half(-3) < half(-1));
}

TEST_CASE("dot and Poisson products") {
  const Density x = vf(zf(two));
  CHECK(dens_dot(x, x) == Density(zf(two) * zf(two), HalfInt(-2)));

  const Density p = dens_dot(basis(Family::phi, half(1), three), basis(Family::phi, half(-1), three));
  CHECK(p == Density(Scalar(2L) * zf(three), HalfInt(-1)));

  const Density R{MeroFun::quadric_power(three, -1), HalfInt(2)};
  const Density e = vf(zf(three));
  CHECK(dens_dot(R, e).weight() == HalfInt(1));
  CHECK(dens_dot(R, e).f() == R.f() * e.f());

  // Witt: {e_0, e_1} = e_1.
  CHECK(dens_poisson(basis(Family::e, 0, two), basis(Family::e, 1, two)) == basis(Family::e, 1, two));
  for (int n = -4; n <= 4; ++n)
    for (int m = -4; m <= 4; ++m)
      CHECK(dens_poisson(basis(Family::e, n, two), basis(Family::e, m, two)) ==
            Scalar(long(m - n)) * basis(Family::e, n + m, two));
  // [e_n, b_i] = (i - n/2) b_{i+n}.
  for (int n = -3; n <= 3; ++n)
    for (int t = -7; t <= 7; t += 2) {
      const HalfInt i = half(t);
      const Scalar c = i.scalar() - Scalar(make_rational(n, 2));
      CHECK(dens_poisson(basis(Family::e, n, two), basis(Family::b, i, two)) ==
            c * basis(Family::b, i + HalfInt(n), two));
    }
  const Density f = vf(zf(three) * zf(three) + cst(three, al));
  CHECK(dens_poisson(f, f).is_zero());
  CHECK(dens_poisson(Density(zf(three), HalfInt(2)), Density(zf(three), HalfInt(-1))).weight() == HalfInt(2));
}

TEST_CASE("basis constructors") {
  CHECK(basis(Family::V, -1, three) == vf(cst(three, 1)));
  CHECK(basis(Family::G, 3, three) == Density(zf(three) * quadric_by_factors(1), HalfInt(0)));
  CHECK(basis(Family::a, half(1), two) == Density(zf(two), half(-1)));
  for (int n = -8; n <= 8; ++n) CHECK(basis(Family::V, n, three) == vf(V_lit(n)));
  // phi_{2k+1/2} = s z q^k, phi_{2k-1/2} = s q^k
  for (int k = -4; k <= 4; ++k) {
    CHECK(basis(Family::phi, half(4 * k + 1), three) ==
          Density(s * (zf(three) * quadric_by_factors(k)), half(-1)));
    CHECK(basis(Family::phi, half(4 * k - 1), three) == Density(s * quadric_by_factors(k), half(-1)));
    CHECK(basis(Family::phidual, half(4 * k - 1), three) ==
          Density((s / Scalar(2L)) * (zf(three) * quadric_by_factors(-k - 1)), half(3)));
    CHECK(basis(Family::Vdual, 2 * k + 1, three) ==
          Density(zf(three) * quadric_by_factors(-k - 2), HalfInt(2)));
  }
  CHECK(basis(Family::b, half(3), two) == Density(s * zf(two) * zf(two), half(-1)));
  CHECK(basis(Family::epsdual, 2, two) == Density(MeroFun::monomial(two, 1, -3), HalfInt(1)));

  CHECK_THROWS_AS(basis(Family::V, half(1), three), ParityMismatch);
  CHECK_THROWS_AS(basis(Family::phi, 1, three), ParityMismatch);
  CHECK_THROWS_AS(basis(Family::V, 0, two), InvalidFamilyForConfig);
  CHECK_THROWS_AS(basis(Family::eps, 0, three), InvalidFamilyForConfig);

  CHECK(BasisIndex{Family::phidual, half(-5)}.to_string() == "phi*[-5/2]");
  CHECK(family_from_name("V*") == Family::Vdual);
  CHECK(!family_from_name("W").has_value());
  CHECK(basis(Family::V, 0, three).to_string() == "z (dz)^{-1}");
}

TEST_CASE("pairing examples") {
  CHECK(kn_pairing(basis(Family::Vdual, 0, three), basis(Family::V, 0, three)) == Scalar(1L));
  CHECK(kn_pairing(basis(Family::phidual, half(-1), three), basis(Family::phi, half(1), three)).is_zero());
  // Independent route: z/(z^2 - al^2) has residue 1/2 at each in-point.
  const MeroFun g = zf(three) * quadric_by_factors(-1);
  CHECK(residue_at(g, al) == Scalar(make_rational(1, 2)));
  CHECK(residue_at(g, -al) == Scalar(make_rational(1, 2)));
  for (int n = -5; n <= 5; ++n)
    for (int m = -5; m <= 5; ++m)
      CHECK(kn_pairing(basis(Family::epsdual, n, two), basis(Family::eps, m, two)) == Scalar(long(n == m)));
  CHECK_THROWS_AS(kn_pairing(basis(Family::V, 0, three), basis(Family::V, 0, three)), WeightMismatch);
}

TEST_CASE("biorthogonality within |n|, |m| <= 8") {
  struct Case {
    Family fam;
    const PunctureConfig* cfg;
  };
  const PunctureConfig numeric = PunctureConfig::three_point(Rational(3, 2));
  for (const Case c : {Case{Family::V, &three}, Case{Family::phi, &three}, Case{Family::G, &three},
                       Case{Family::V, &numeric}, Case{Family::phi, &numeric}, Case{Family::eps, &two},
                       Case{Family::a, &two}, Case{Family::e, &two}, Case{Family::b, &two}}) {
    const auto ixs = window_indices(c.fam, 8);
    for (const HalfInt n : ixs) {
      const Density dual = basis(dual_of(c.fam), n, *c.cfg);
      for (const HalfInt m : ixs) {
        const Scalar v = kn_pairing(dual, basis(c.fam, m, *c.cfg));
        if (n == m) CHECK_MESSAGE(v == Scalar(1L), family_name(c.fam), " ", n.to_string());
        else CHECK_MESSAGE(v.is_zero(), family_name(c.fam), " ", n.to_string(), " ", m.to_string());
      }
    }
  }
}

TEST_CASE("expansions") {
  const Density u{Scalar(-6L) * cst(three, 1), HalfInt(2)};
  const Expansion e = expand_in_dual_basis(u, 6);
  REQUIRE(e.coeffs.size() == 1);
  CHECK(e.coeffs[0].first == BasisIndex{Family::Vdual, -2});
  CHECK(e.coeffs[0].second == Scalar(-6L));
  CHECK(e.exact());

  CHECK(expand_in_dual_basis(Density::zero(three, HalfInt(2)), 4).coeffs.empty());

  const Density w = basis(Family::epsdual, 3, two) + Scalar(2L) * basis(Family::epsdual, -1, two);
  const Expansion ew = expand_in_dual_basis(w, 4);
  REQUIRE(ew.coeffs.size() == 2);
  CHECK(ew.coeff({Family::epsdual, 3}) == Scalar(1L));
  CHECK(ew.coeff({Family::epsdual, -1}) == Scalar(2L));
  CHECK(ew.exact());

  // Out-of-window content surfaces as a residual.
  const Expansion leak = expand_in_basis(basis(Family::V, 7, three), Family::V, 4);
  CHECK(!leak.exact());
  CHECK(leak.residual == basis(Family::V, 7, three));

  // Automatic windows reproduce random densities exactly.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const MeroFun f = testing::random_merofun(rng, three, three.in_points(), 3);
    for (const HalfInt wt : {HalfInt(-1), half(-1), HalfInt(0), HalfInt(1), half(3), HalfInt(2)}) {
      const Density d{f, wt};
      const auto ex = expand_exact(d);
      REQUIRE(ex.has_value());
      Density back = Density::zero(three, wt);
      for (const auto& [ix, c] : ex->coeffs) back = back + c * basis(ix, three);
      CHECK(back == d);
    }
  }
  CHECK(!expand_exact(Density(zf(three), HalfInt(5))).has_value());
}

TEST_CASE("Jacobi on vector fields, associativity of the dot product") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ix(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const Density x = basis(Family::V, ix(rng), three), y = basis(Family::V, ix(rng), three),
                  z = basis(Family::V, ix(rng), three);
    const Density j = dens_poisson(x, dens_poisson(y, z)) + dens_poisson(y, dens_poisson(z, x)) +
                      dens_poisson(z, dens_poisson(x, y));
    CHECK(j.is_zero());
    const Density a{testing::random_merofun(rng, three, three.in_points(), 2), HalfInt(0)};
    const Density b = basis(Family::G, ix(rng), three), c = basis(Family::G, ix(rng), three);
    CHECK(dens_dot(dens_dot(a, b), c) == dens_dot(a, dens_dot(b, c)));
    CHECK(dens_dot(a, b) == dens_dot(b, a));
  }
}

TEST_CASE("almost-graded locality of products") {
  enum class Op { dot, poisson };
  struct Pairing {
    Family x, y;
    Op op;
  };
  int spread = 0;
  for (const Pairing p : {Pairing{Family::V, Family::V, Op::poisson}, Pairing{Family::V, Family::phi, Op::poisson},
                          Pairing{Family::phi, Family::phi, Op::dot}, Pairing{Family::G, Family::G, Op::dot},
                          Pairing{Family::G, Family::phi, Op::dot}, Pairing{Family::V, Family::G, Op::dot}}) {
    for (const HalfInt n : window_indices(p.x, 5))
      for (const HalfInt m : window_indices(p.y, 5)) {
        const Density u = basis(p.x, n, three), v = basis(p.y, m, three);
        const Density w = p.op == Op::dot ? dens_dot(u, v) : dens_poisson(u, v);
        const auto ex = expand_exact(w);
        REQUIRE(ex.has_value());
        for (const auto& [k, c] : ex->coeffs) {
          const int d = k.index.twice() - (n + m).twice();
          spread = std::max(spread, std::abs(d) / 2);
        }
      }
  }
  CHECK(spread <= 2);
}
