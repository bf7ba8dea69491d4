#include <doctest.h>

#include <random>

#include "knsuper/errors.hpp"
#include "knsuper/liesuper.hpp"
#include "random_util.hpp"

using namespace knsuper;

namespace {

const PunctureConfig three = PunctureConfig::three_point();
const PunctureConfig two = PunctureConfig::two_point();
const Scalar al = Scalar::alpha();

SuperElement X(Family f, HalfInt i, const PunctureConfig& cfg = three) {
  return SuperElement::from_basis({f, i}, cfg);
}
SuperElement V(int n) { return X(Family::V, n); }
SuperElement phi(int twice) { return X(Family::phi, half(twice)); }
SuperElement e(int n) { return X(Family::e, n, two); }
SuperElement b(int twice) { return X(Family::b, half(twice), two); }

ProjectiveConnection conn(const MeroFun& f) { return {f}; }

std::vector<ProjectiveConnection> test_connections() {
  const MeroFun q = MeroFun::quadric_power(three, -1);
  return {ProjectiveConnection::zero(three), conn(MeroFun::constant(three, 1)), conn(q),
          conn(MeroFun::z(three) * q)};
}

}  // namespace

TEST_CASE("bracket") {
  CHECK(sbracket(e(1), e(-1)) == Scalar(-2L) * e(0));
  CHECK(sbracket(b(1), b(-1)) == e(0));
  for (int t = -5; t <= 5; t += 2)
    for (int u = -5; u <= 5; u += 2) CHECK(sbracket(b(t), b(u)) == e((t + u) / 2));
  // (-1) (z^2 - al^2) + z (2z) = z^2 + al^2
  const MeroFun z = MeroFun::z(three);
  CHECK(sbracket(V(0), V(1)) == SuperElement::from_even(z * z + MeroFun::constant(three, al * al)));
  CHECK(sbracket(V(0), V(1)) == V(1) + Scalar(2L) * (al * al) * V(-1));
  CHECK_THROWS_AS(sbracket(V(0), e(0)), IncompatibleConfig);
}

TEST_CASE("superalgebra axioms") {
  CHECK(check_super_skew(e(2), e(3)));
  CHECK(check_super_skew(b(1), b(1)));
  CHECK(check_super_jacobi(V(2), phi(3), phi(-1)));
  CHECK_THROWS_AS(check_super_skew(V(0) + phi(1), V(1)), NonHomogeneousInput);
  const auto basis3 = lie_basis(three, 3);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, basis3.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = SuperElement::from_basis(basis3[pick(rng)], three);
    const auto y = SuperElement::from_basis(basis3[pick(rng)], three);
    const auto w = SuperElement::from_basis(basis3[pick(rng)], three);
    CHECK(check_super_skew(x, y));
    CHECK(check_super_jacobi(x, y, w));
  }
}

TEST_CASE("2-cocycle values") {
  CHECK(cocycle2(V(2), V(-2)) == Scalar(-6L));
  CHECK(cocycle2(phi(5), phi(-5)) == Scalar(12L));
  CHECK(cocycle2(V(0), phi(1)).is_zero());
  for (long n = -6; n <= 6; ++n) {
    // e'''f - e f''' for e = z^{n+1}, f = z^{1-n} is ((n+1)n(n-1) - (1-n)(-n)(-n-1)) z^{-1}.
    const long lhs = (n + 1) * n * (n - 1) - (1 - n) * (-n) * (-n - 1);
    CHECK(cocycle2(e(int(n)), e(int(-n))) == Scalar(-lhs / 2));
    CHECK(cocycle2(e(int(n)), e(int(-n))) == Scalar(-(n * n * n - n)));
  }
  CHECK(cocycle2(b(3), b(-3)) == Scalar(4L));

  const BasisIndex V4{Family::V, 4}, Vm2{Family::V, -2}, V5{Family::V, 5}, Vm3{Family::V, -3};
  CHECK(closed_form_c(V4, Vm2, three) == Scalar(-48L) * al * al);
  CHECK(closed_form_c({Family::phi, half(9)}, {Family::phi, half(-5)}, three) == Scalar(16L) * al * al);
  CHECK(closed_form_c(V5, Vm3, three) == Scalar(-48L) * al * al);
  CHECK(closed_form_c({Family::V, 0}, {Family::V, 1}, three).is_zero());
  CHECK_THROWS_AS(closed_form_c({Family::V, half(1)}, V4, three), ParityMismatch);
  CHECK_THROWS_AS(closed_form_c({Family::G, 1}, V4, three), InvalidFamilyForConfig);
}

TEST_CASE("cocycle table equals the closed forms, window 6") {
  for (const PunctureConfig* cfg : {&three, &two}) {
    const StructureTable t = table_c2(*cfg, 6);
    const auto bad = compare_c2_with_closed_form(t, *cfg, 6);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
    const auto support = c2_support_twice(t);
    if (cfg == &three) {
      for (int s : support) CHECK((s == -4 || s == 0 || s == 2 || s == 4 || s == 8));
    } else {
      CHECK(support == std::set<int>{0});
    }
  }
  const StructureTable t = table_c2(three, 2);
  CHECK(t.value({Family::V, 2}, {Family::V, -2}) == Scalar(-6L));
  CHECK(t.value({Family::V, 0}, {Family::V, 1}).is_zero());
  // The symbolic table specializes to the numeric one.
  const PunctureConfig num = PunctureConfig::three_point(Rational(3, 2));
  const StructureTable tn = table_c2(num, 3), ts = table_c2(three, 3);
  for (const auto& x : lie_basis(three, 3))
    for (const auto& y : lie_basis(three, 3))
      CHECK(Scalar(ts.value(x, y).eval(Rational(3, 2))) == tn.value(x, y));
}

TEST_CASE("cocycle identities for several connections") {
  const auto basis4 = lie_basis(three, 4);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, basis4.size() - 1);
  for (const auto& R : test_connections()) {
    for (int trial = 0; trial < 12; ++trial) {
      const auto x = SuperElement::from_basis(basis4[pick(rng)], three);
      const auto y = SuperElement::from_basis(basis4[pick(rng)], three);
      const auto w = SuperElement::from_basis(basis4[pick(rng)], three);
      CHECK(check_cocycle_skew(x, y, R));
      CHECK(check_cocycle_jacobi(x, y, w, R));
      CHECK(coboundary_witness_check(R, x, y));
    }
  }
  CHECK(coboundary_witness_check(conn(MeroFun::quadric_power(three, -1)), V(2), V(-2)));
  CHECK(coboundary_witness_check(conn(MeroFun::constant(three, 1)), phi(1), phi(-1)));
  // A non-flat connection really shifts the cocycle.
  CHECK(cocycle2(phi(1), phi(-5), conn(MeroFun::constant(three, 1))) - cocycle2(phi(1), phi(-5)) == Scalar(-1L));
}

TEST_CASE("dual-valued 1-cocycle") {
  CHECK(same_coeffs(*expand(onecocycle_L(V(2))), {{{Family::Vdual, -2}, Scalar(-6L)}}));
  CHECK(same_coeffs(*expand(onecocycle_L(V(4))),
                    {{{Family::Vdual, -4}, Scalar(-60L)}, {{Family::Vdual, -2}, Scalar(-48L) * al * al}}));
  CHECK(onecocycle_L(e(1)).is_zero());

  const StructureTable t = table_C1_L(three, 8);
  const auto bad = compare_C1L_with_closed_form(t, three);
  CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
  const auto bad2 = compare_C1L_with_closed_form(table_C1_L(two, 6), two);
  CHECK_MESSAGE(bad2.empty(), (bad2.empty() ? "" : bad2.front()));

  CHECK(check_onecocycle_L(V(2), V(-2), ProjectiveConnection::zero(three)));
  CHECK(pairing(onecocycle_L(V(2)), V(-2)) == Scalar(-6L));
  CHECK(check_onecocycle_L(phi(1), V(0), ProjectiveConnection::zero(three)));
  CHECK(check_onecocycle_L(b(3), b(-3), ProjectiveConnection::zero(two)));
  CHECK(pairing(onecocycle_L(b(3)), b(-3)) == Scalar(4L));

  const auto basis4 = lie_basis(three, 4);
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::size_t> pick(0, basis4.size() - 1);
  for (const auto& R : test_connections())
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = SuperElement::from_basis(basis4[pick(rng)], three);
      const auto y = SuperElement::from_basis(basis4[pick(rng)], three);
      CHECK(check_onecocycle_L(x, y, R));
    }
}

TEST_CASE("coadjoint action") {
  const MeroFun one = MeroFun::constant(two, 1);
  const DualSuperElement u = DualSuperElement::from_even(one);
  CHECK(coad_L(e(0), u) == DualSuperElement::from_even(Scalar(2L) * one));
  // -(3/2 phi' w + 1/2 phi w') with phi = s z, w = 1.
  const DualSuperElement w = DualSuperElement::from_odd(one);
  CHECK(coad_L(b(1), w) == DualSuperElement::from_even(Scalar(make_rational(-3, 2)) * Scalar::sqrt2() * one));
  CHECK(coad_L(V(3), DualSuperElement(three)).is_zero());

  const auto basis3 = lie_basis(three, 3);
  const auto duals3 = lie_dual_basis(three, 3);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, basis3.size() - 1), pickd(0, duals3.size() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = SuperElement::from_basis(basis3[pick(rng)], three);
    const auto y = SuperElement::from_basis(basis3[pick(rng)], three);
    const auto d = DualSuperElement::from_basis(duals3[pickd(rng)], three);
    CHECK(check_coadjoint_duality_L(x, d, y));
  }
}

TEST_CASE("osp(1|2) copy") {
  for (const PunctureConfig* cfg : {&three, &two}) {
    const Osp12Report r = osp12_vanishing_check(*cfg);
    CHECK(r.closed);
    CHECK(r.pairs == 15);
    CHECK(r.vanishing == 15);
  }
  const auto g = osp12_generators(three);
  CHECK(cocycle2(g[2], g[0]).is_zero());
  CHECK(cocycle2(g[3], g[4]).is_zero());
}

TEST_CASE("window-bounded non-triviality") {
  const NontrivialityReport r = window_nontriviality(three, 4, 6);
  CHECK(!r.feasible);
  CHECK(!r.feasible_unrestricted);
  CHECK(r.unknowns == 13 + 12);
  CHECK(!window_nontriviality(two, 3, 6).feasible);
}

TEST_CASE("table serialization") {
  const StructureTable t = table_c2(three, 2);
  const auto j = t.to_json();
  REQUIRE(j.is_array());
  bool found = false;
  for (const auto& row : j)
    if (row["left"] == "V[2]" && row["right"] == "V[-2]") found = row["value"] == "-6";
  CHECK(found);
  const auto m = table_C1_L(three, 4).to_json();
  bool found4 = false;
  for (const auto& row : m)
    if (row["arg"] == "V[4]") found4 = row["coeffs"]["V*[-4]"] == "-60" && row["coeffs"]["V*[-2]"] == "-48*al^2";
  CHECK(found4);
  CHECK(t.to_csv().rfind("left,right,value\n", 0) == 0);
  CHECK(render_coeffs(*expand(onecocycle_L(V(4)))) == "-60*V*[-4] - 48*al^2*V*[-2]");
}
