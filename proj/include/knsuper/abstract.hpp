#pragma once

// Finite-dimensional superalgebras given by structure constants over K:
// Jordan superalgebras such as K3 and truncations of AK(1), and Lie
// superalgebras built from them (adjoint superalgebra, derivations).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "knsuper/coeffield.hpp"
#include "knsuper/graded.hpp"

namespace knsuper {

using Vec = std::map<std::size_t, Scalar>;

Vec vec_add(Vec a, const Vec& b, const Scalar& c = Scalar(1L));
Vec vec_scale(const Vec& a, const Scalar& c);
bool vec_is_zero(const Vec& a);
bool vec_equal(const Vec& a, const Vec& b);

class AbstractAlgebra {
 public:
  enum class Kind { Jordan, Lie };

  AbstractAlgebra(std::string name, Kind kind, std::vector<std::string> labels, std::vector<Parity> parities);

  static AbstractAlgebra K3();
  // eps_n, a_i with |n|, |i| <= window; products leaving the window are undefined.
  static AbstractAlgebra AK1(int window);
  // e_{-1}, e_0, e_1, b_{-1/2}, b_{1/2} with [e_n,e_m] = (m-n) e_{n+m},
  // [e_n,b_i] = (i - n/2) b_{i+n}, [b_i,b_j] = e_{i+j}.
  static AbstractAlgebra osp12();

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  std::size_t dim() const { return labels_.size(); }
  std::size_t even_dim() const;
  std::size_t odd_dim() const { return dim() - even_dim(); }
  const std::vector<std::string>& labels() const { return labels_; }
  Parity parity(std::size_t i) const { return parities_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  // False when some products are unknown (truncated presentations).
  bool complete() const;

  void set(std::size_t i, std::size_t j, Vec v);
  const std::optional<Vec>& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  // Bilinear extension; nullopt if an undefined product is needed.
  std::optional<Vec> mul(const Vec& x, const Vec& y) const;
  static Vec unit(std::size_t i) { return Vec{{i, Scalar(1L)}}; }
  // Parity of a homogeneous vector (zero counts as even).
  Parity parity_of(const Vec& v) const;

  std::string render(const Vec& v) const;
  nlohmann::json to_json() const;

 private:
  std::string name_;
  Kind kind_;
  std::vector<std::string> labels_;
  std::vector<Parity> parities_;
  std::vector<std::optional<Vec>> table_;
};

struct TableCheck {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // needed an undefined product
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Lie kind: super skew-symmetry and super Jacobi on all basis pairs/triples.
TableCheck check_lie_table(const AbstractAlgebra& g);
// Jordan kind: supercommutativity, associativity of the even part and right
// multiplication by odd elements being an odd derivation.
TableCheck check_antialgebra_table(const AbstractAlgebra& A);

// G_A = A_1 + (A_1 (x) A_1)/S, S spanned by a(x)b - b(x)a and
// (a.al)(x)b - a(x)(b.al). Brackets [a,b] = a.b (as a class),
// [a.b, c] = a.(b.c) + b.(a.c), [a.b, c.d] = 2 a.(b.c).d + 2 b.(a.d).c.
// Throws NotFiniteDimensional for incomplete A unless allow_partial, in which
// case relations and brackets needing unknown products are dropped.
AbstractAlgebra adjoint_superalgebra(const AbstractAlgebra& A, bool allow_partial = false);

// Linear endomorphisms as images of the basis.
using LinearMap = std::vector<Vec>;

// D(xy) = D(x) y + (-1)^{Dx} x D(y).
bool is_derivation(const AbstractAlgebra& A, const LinearMap& D, Parity p);
LinearMap right_multiplication(const AbstractAlgebra& A, const Vec& a);

struct Derivations {
  std::vector<LinearMap> even, odd;
  // Bracket D E - (-1)^{DE} E D in the basis even..., odd....
  AbstractAlgebra algebra{"Der", AbstractAlgebra::Kind::Lie, {}, {}};
};
// Throws NotFiniteDimensional for incomplete A.
Derivations derivations(const AbstractAlgebra& A);
// Coordinates of D in a family of maps, if it lies in their span.
std::optional<std::vector<Scalar>> coordinates_in(const std::vector<LinearMap>& family, const LinearMap& D,
                                                  std::size_t dim);

// Phi: osp12() -> G, given by the images of its basis.
struct WitnessMap {
  std::vector<Vec> images;
  std::vector<std::string> describe(const AbstractAlgebra& G) const;
};
// Structure-constant mismatches of images as a homomorphism src -> dst, plus a
// failure when the images are linearly dependent.
std::vector<std::string> check_isomorphism(const AbstractAlgebra& src, const AbstractAlgebra& dst,
                                           const std::vector<Vec>& images);
// Sets Phi(b_{-1/2}) = p for candidate odd p, solves the linear conditions
// [[p,p],q] = p and [[p,q],p] = -p/2 for q = Phi(b_{1/2}), defines the even
// images by brackets and keeps the first candidate that is an isomorphism.
std::optional<WitnessMap> find_osp12_witness(const AbstractAlgebra& G);

}  // namespace knsuper
