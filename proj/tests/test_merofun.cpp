#include <doctest.h>

#include <random>

#include "knsuper/errors.hpp"
#include "knsuper/merofun.hpp"
#include "random_util.hpp"

using namespace knsuper;

namespace {

const PunctureConfig three = PunctureConfig::three_point();
const PunctureConfig two = PunctureConfig::two_point();
const Scalar al = Scalar::alpha();

MeroFun zf(const PunctureConfig& c = three) { return MeroFun::z(c); }
MeroFun cst(const Scalar& x, const PunctureConfig& c = three) { return MeroFun::constant(c, x); }

// Oracle: literal limit formula. g = (z - z0)^p f = N / Q, and
// g^(k) = N_k / Q^(k+1) with N_{k+1} = N_k' Q - (k+1) N_k Q'.
Scalar residue_by_quotient_rule(const MeroFun& f, const Scalar& z0) {
  const int p = f.pole_order(z0);
  if (p == 0) return {};
  ZPoly q(Scalar(1L));
  for (const auto& pole : f.poles())
    if (!(pole.point == z0)) q = q * ZPoly::linear_power(pole.point, pole.order);
  ZPoly n = f.numerator();
  const ZPoly dq = q.derivative();
  Scalar factorial(1L);
  for (int k = 0; k < p - 1; ++k) {
    n = n.derivative() * q - n * dq.scaled(Scalar(static_cast<long>(k + 1)));
    factorial *= Scalar(static_cast<long>(k + 1));
  }
  return n.eval(z0) / (q.eval(z0).pow(p) * factorial);
}

// Oracle: behaviour at infinity by Euclidean division N = q D + r; only a
// remainder of degree deg D - 1 contributes a 1/z term.
Scalar residue_at_infinity_by_division(const MeroFun& f) {
  ZPoly d(Scalar(1L));
  for (const auto& pole : f.poles()) d = d * ZPoly::linear_power(pole.point, pole.order);
  const ZPoly r = f.numerator().divmod(d).second;
  if (r.is_zero_poly() || r.degree() != d.degree() - 1) return {};
  return -(r.leading() / d.leading());
}

}  // namespace

TEST_CASE("arithmetic in reduced form") {
  CHECK(zf() * zf() == MeroFun::monomial(three, Scalar(1L), 2));
  const MeroFun inv_minus = MeroFun::linear_power(three, al, -1);
  const MeroFun inv_plus = MeroFun::linear_power(three, -al, -1);
  const MeroFun sum = inv_minus + inv_plus;
  CHECK(sum == cst(2L) * zf() * MeroFun::quadric_power(three, -1));
  CHECK(sum.to_string() == "(2*z)/((z-al)*(z+al))");
  CHECK(MeroFun::quadric_power(three, 1) * MeroFun::quadric_power(three, -1) == cst(1L));
  CHECK((MeroFun::quadric_power(three, 2) * MeroFun::quadric_power(three, -1)).is_polynomial());
  CHECK_THROWS_AS(zf(three) + zf(two), IncompatibleConfig);
  CHECK_THROWS_AS(MeroFun::linear_power(three, Scalar(1L), -1), StrayPole);
}

TEST_CASE("derivative") {
  CHECK(zf().pow(3).derivative() == cst(3L) * zf().pow(2));
  const MeroFun q = MeroFun::quadric_power(three, -1);
  CHECK(q.derivative() == cst(-2L) * zf() * MeroFun::quadric_power(three, -2));
  CHECK(cst(1L).derivative().is_zero());
}

TEST_CASE("negative powers factor over the punctures") {
  const MeroFun q = MeroFun::quadric_power(three, 1);
  CHECK(q.pow(-2) == MeroFun::quadric_power(three, -2));
  CHECK_THROWS_AS((zf() * zf() + cst(1L)).pow(-1), StrayPole);
  CHECK(zf(two).pow(-3) == MeroFun::monomial(two, Scalar(1L), -3));
}

TEST_CASE("residues at finite points") {
  CHECK(residue_at(MeroFun::monomial(two, Scalar(1L), -3), Scalar()).is_zero());
  // (1 - z^2 alpha^2)^(-1) / z^3 at 0 gives alpha^2.
  const MeroFun a_inv = MeroFun::linear_power(two, al.inverse(), -1, MeroFun::Mode::Oracle);
  const MeroFun b_inv = MeroFun::linear_power(two, -al.inverse(), -1, MeroFun::Mode::Oracle);
  const MeroFun g = cst(-(al * al).inverse(), two) * a_inv * b_inv * MeroFun::monomial(two, Scalar(1L), -3);
  CHECK(residue_at(g, Scalar()) == al * al);
  CHECK(residue_at(MeroFun::quadric_power(three, -1), al) == (Scalar(2L) * al).inverse());
  CHECK(residue_at(zf(), al).is_zero());
}

TEST_CASE("residue at infinity") {
  CHECK(residue_at_infinity(MeroFun::monomial(two, Scalar(1L), -1)) == Scalar(-1L));
  CHECK(residue_at_infinity(zf(two)).is_zero());
  CHECK(residue_at_infinity(cst(5L, two)).is_zero());
}

TEST_CASE("cycle integrals") {
  CHECK(cycle_integral(zf() * MeroFun::quadric_power(three, -1)) == Scalar(1L));
  CHECK(cycle_integral(zf() * zf() * MeroFun::quadric_power(three, -1)).is_zero());
  CHECK(cycle_integral(MeroFun::monomial(two, Scalar(1L), -1)) == Scalar(1L));
  const MeroFun stray = MeroFun::linear_power(three, Scalar(1L), -1, MeroFun::Mode::Oracle);
  CHECK_THROWS_AS(cycle_integral(stray), StrayPole);
}

TEST_CASE("residue oracles agree on random functions") {
  std::mt19937_64 rng(3);
  const Scalar extra = make_rational(3, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const MeroFun f = knsuper::testing::random_merofun(rng, three, {al, -al, extra}, 4,
                                                       MeroFun::Mode::Oracle);
    for (const Scalar& p : {al, -al, extra}) CHECK(residue_at(f, p) == residue_by_quotient_rule(f, p));
    CHECK(residue_at_infinity(f) == residue_at_infinity_by_division(f));
  }
}

TEST_CASE("global residue theorem and exact forms") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const MeroFun f = knsuper::testing::random_merofun(rng, three, {al, -al}, 4);
    const MeroFun g = knsuper::testing::random_merofun(rng, three, {al, -al}, 3);
    CHECK(residue_at(f, al) + residue_at(f, -al) + residue_at_infinity(f) == Scalar());
    CHECK(cycle_integral(f) == -residue_at_infinity(f));
    const MeroFun df = f.derivative();
    CHECK(residue_at(df, al).is_zero());
    CHECK(residue_at(df, -al).is_zero());
    CHECK(residue_at_infinity(df).is_zero());
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
  }
  for (int trial = 0; trial < 30; ++trial) {
    const MeroFun f = knsuper::testing::random_merofun(rng, two, {Scalar()}, 5);
    CHECK(residue_at(f, Scalar()) + residue_at_infinity(f) == Scalar());
    CHECK(cycle_integral(f) == -residue_at_infinity(f));
  }
}
