#include <doctest.h>

#include "knsuper/abstract.hpp"
#include "knsuper/errors.hpp"

using namespace knsuper;

namespace {

const Scalar half_s = Scalar(make_rational(1, 2));

std::size_t idx(const AbstractAlgebra& A, const std::string& label) {
  auto i = A.index_of(label);
  REQUIRE(i);
  return *i;
}

}  // namespace

TEST_CASE("K3 table") {
  const AbstractAlgebra K = AbstractAlgebra::K3();
  CHECK(K.dim() == 3);
  CHECK(K.even_dim() == 1);
  CHECK(K.complete());
  CHECK(vec_equal(*K.product(1, 2), {{0, half_s}}));
  CHECK(vec_equal(*K.product(2, 1), {{0, -half_s}}));
  const TableCheck r = check_antialgebra_table(K);
  CHECK(r.ok());
  CHECK(r.skipped == 0);
  const auto j = K.to_json();
  CHECK(j["basis"].size() == 3);
  CHECK(j["undefined"].empty());
  bool found = false;
  for (const auto& row : j["products"])
    if (row["left"] == "a" && row["right"] == "b") found = row["result"]["eps"] == "1/2";
  CHECK(found);
}

TEST_CASE("AK(1) truncation") {
  const AbstractAlgebra A = AbstractAlgebra::AK1(3);
  CHECK(A.dim() == 7 + 6);
  CHECK(!A.complete());
  // eps_2 a_{3/2} = 1/2 a_{7/2} leaves the window.
  CHECK(!A.product(idx(A, "eps[2]"), idx(A, "a[3/2]")));
  // a_i a_i = 0 is known even when eps_{2i} is outside.
  CHECK(A.product(idx(A, "a[5/2]"), idx(A, "a[5/2]")));
  CHECK(vec_equal(*A.product(idx(A, "a[-1/2]"), idx(A, "a[1/2]")), {{idx(A, "eps[0]"), half_s}}));
  const TableCheck r = check_antialgebra_table(A);
  CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.failures.front()));
  CHECK(r.checked > 0);
  CHECK(r.skipped > 0);
  CHECK_THROWS_AS(AbstractAlgebra::AK1(0), ConfigError);
}

TEST_CASE("osp(1|2) table") {
  const AbstractAlgebra g = AbstractAlgebra::osp12();
  CHECK(g.even_dim() == 3);
  CHECK(g.odd_dim() == 2);
  const TableCheck r = check_lie_table(g);
  CHECK(r.ok());
  CHECK(r.checked == 25 + 125);
  CHECK(vec_equal(*g.product(idx(g, "e[1]"), idx(g, "b[-1/2]")), {{idx(g, "b[1/2]"), Scalar(-1L)}}));
  CHECK(vec_equal(*g.product(idx(g, "b[-1/2]"), idx(g, "b[1/2]")), {{idx(g, "e[0]"), Scalar(1L)}}));
}

TEST_CASE("adjoint superalgebra of K3") {
  const AbstractAlgebra K = AbstractAlgebra::K3();
  const AbstractAlgebra G = adjoint_superalgebra(K);
  CHECK(G.even_dim() == 3);
  CHECK(G.odd_dim() == 2);
  CHECK(G.complete());
  const TableCheck r = check_lie_table(G);
  CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.failures.front()));
  CHECK(r.skipped == 0);

  const std::size_t a = idx(G, "a"), b = idx(G, "b"), aa = idx(G, "a.a");
  // [a, b] is the class of a(x)b.
  const auto ab = G.product(a, b);
  REQUIRE(ab);
  CHECK(ab->size() == 1);
  CHECK(G.labels()[ab->begin()->first] == "a.b");
  // [a.a, b] = 2 a.(a.b) = 1/2 a
  CHECK(vec_equal(*G.product(aa, b), {{a, half_s}}));

  const auto w = find_osp12_witness(G);
  REQUIRE(w);
  CHECK(check_isomorphism(AbstractAlgebra::osp12(), G, w->images).empty());
  CHECK(w->describe(G).size() == 5);
  CHECK_THROWS_AS(adjoint_superalgebra(AbstractAlgebra::AK1(3)), NotFiniteDimensional);
}

TEST_CASE("adjoint superalgebra of a truncated AK(1)") {
  const AbstractAlgebra G = adjoint_superalgebra(AbstractAlgebra::AK1(3), true);
  CHECK(G.odd_dim() == 6);
  const TableCheck r = check_lie_table(G);
  CHECK(r.checked > 0);
  CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.failures.front()));
}

TEST_CASE("derivations of K3") {
  const AbstractAlgebra K = AbstractAlgebra::K3();
  const Derivations d = derivations(K);
  CHECK(d.even.size() == 3);
  CHECK(d.odd.size() == 2);
  for (const auto& D : d.even) CHECK(is_derivation(K, D, 0));
  for (const auto& D : d.odd) CHECK(is_derivation(K, D, 1));
  for (std::size_t o : {std::size_t(1), std::size_t(2)}) {
    const LinearMap R = right_multiplication(K, AbstractAlgebra::unit(o));
    CHECK(is_derivation(K, R, 1));
    CHECK(coordinates_in(d.odd, R, K.dim()));
    CHECK(!coordinates_in(d.even, R, K.dim()));
  }
  // Right multiplication by eps is not a derivation: eps.eps = eps but 2 eps != eps.
  CHECK(!is_derivation(K, right_multiplication(K, AbstractAlgebra::unit(0)), 0));
  const TableCheck r = check_lie_table(d.algebra);
  CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.failures.front()));
  const auto w = find_osp12_witness(d.algebra);
  REQUIRE(w);
  CHECK(check_isomorphism(AbstractAlgebra::osp12(), d.algebra, w->images).empty());
  CHECK_THROWS_AS(derivations(AbstractAlgebra::AK1(2)), NotFiniteDimensional);
}

TEST_CASE("witness checks reject wrong maps") {
  const AbstractAlgebra g = AbstractAlgebra::osp12();
  std::vector<Vec> id;
  for (std::size_t i = 0; i < 5; ++i) id.push_back(AbstractAlgebra::unit(i));
  CHECK(check_isomorphism(g, g, id).empty());
  auto bad = id;
  bad[4] = vec_scale(bad[4], Scalar(2L));
  CHECK(!check_isomorphism(g, g, bad).empty());
  auto dependent = id;
  dependent[0] = dependent[1];
  CHECK(!check_isomorphism(g, g, dependent).empty());
  // A 5-dimensional Lie superalgebra of the wrong shape has no witness.
  AbstractAlgebra abelian("abelian", AbstractAlgebra::Kind::Lie, {"x", "y", "z", "p", "q"}, {0, 0, 0, 1, 1});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) abelian.set(i, j, {});
  CHECK(!find_osp12_witness(abelian));
}
