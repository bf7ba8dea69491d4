#pragma once

// The Jordan superalgebra (Lie antialgebra) J = F_0 + F_{-1/2} of the
// punctured sphere: product, axioms, the embedding of AK(1) on three points,
// the dual-valued 1-cocycle and its uniqueness on two points.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "knsuper/densities.hpp"
#include "knsuper/graded.hpp"
#include "knsuper/liesuper.hpp"
#include "knsuper/tables.hpp"

namespace knsuper {

using JordanElement = GradedPair<0, -1>;     // eps + psi dz^-1/2
using DualJordanElement = GradedPair<2, 3>;  // u dz + w dz^3/2

// e.f = ef, e.psi = 1/2 e psi, phi.psi = -1/2 phi' psi + 1/2 phi psi'.
JordanElement jproduct(const JordanElement& x, const JordanElement& y);

bool check_supercommutative(const JordanElement& x, const JordanElement& y);
// (x.y).z = x.(y.z); required only when all three are even.
bool check_even_associative(const JordanElement& x, const JordanElement& y, const JordanElement& z);
// (x.y).a = (x.a).y + (-1)^x x.(y.a) for odd a.
bool check_odd_derivation(const JordanElement& x, const JordanElement& y, const JordanElement& a);

struct AxiomReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Every applicable axiom on each triple; throws NonHomogeneousInput.
AxiomReport check_antialgebra_axioms(const std::vector<std::array<JordanElement, 3>>& sample);

std::vector<BasisIndex> jordan_basis(const PunctureConfig& cfg, int window);
std::vector<BasisIndex> jordan_dual_basis(const PunctureConfig& cfg, int window);
std::optional<CoeffMap> expand(const JordanElement& x);
std::optional<CoeffMap> expand(const DualJordanElement& u);

// AK(1) structure constants: eps_n eps_m = eps_{n+m}, eps_n a_i = 1/2 a_{i+n},
// a_i a_j = 1/2 (j - i) eps_{i+j}. Labels use families eps and a.
CoeffMap ak1_product(const BasisIndex& x, const BasisIndex& y);

// The embedding of eps_{-1}, eps_0, eps_1, a_{-1/2}, a_{1/2} into
// J on three points; throws UnknownGenerator for other labels and
// IncompatibleConfig unless cfg is three-point.
JordanElement iota(const BasisIndex& x, const PunctureConfig& cfg);
// Extension to all of AK(1): eps_n -> ((z-al)/(z+al))^n,
// a_i -> s/(2 rt) (z-al)^{i+1/2} (z+al)^{1/2-i}.
JordanElement iota_extended(const BasisIndex& x, const PunctureConfig& cfg);
JordanElement iota_extended(const CoeffMap& x, const PunctureConfig& cfg);

// C(eps) = -eps' dz, C(psi) = (psi'' - 1/2 R psi) dz^3/2.
DualJordanElement onecocycle_J(const JordanElement& x, const ProjectiveConnection& R);
DualJordanElement onecocycle_J(const JordanElement& x);

// rho*_eps (u + w) = eps u + 1/2 eps w, rho*_phi (u + w) = -1/2 phi w - (1/2 phi u' + phi' u).
DualJordanElement coad_J(const JordanElement& x, const DualJordanElement& u);
Scalar pairing(const DualJordanElement& u, const JordanElement& x);
// C(x.y) = rho_x C(y) + (-1)^{xy} rho_y C(x).
bool check_onecocycle_J(const JordanElement& x, const JordanElement& y, const ProjectiveConnection& R);
// <rho*_x u, y> = (-1)^{xu} <u, x.y>.
bool check_coadjoint_duality_J(const JordanElement& x, const DualJordanElement& u, const JordanElement& y);

CoeffMap closed_form_C1J(const BasisIndex& i, const PunctureConfig& cfg);
StructureTable table_C1_J(const PunctureConfig& cfg, int window);
std::vector<std::string> compare_C1J_with_closed_form(const StructureTable& t, const PunctureConfig& cfg);

// Coefficients of C(eps_n) = sum lambda_n^r eps*_r and
// C(a_i) = sum mu_i^k a*_k on two points.
struct CocycleUnknowns {
  int window = 0;
  int interior = 0;
  // (n, r) -> lambda_n^r and (i, k) -> mu_i^k for every unknown the system
  // fixes; this covers the whole interior window |indices| <= W - 2.
  std::map<std::pair<HalfInt, HalfInt>, Scalar> lambda, mu;
  std::size_t unknowns = 0, equations = 0, rank = 0;

  // Throw UnderdeterminedInterior for unknowns the window leaves free.
  Scalar lambda_at(int n, int r) const;
  Scalar mu_at(HalfInt i, HalfInt k) const;
  // Fixed entries equal -n delta_{r,-n} and (k^2 - 1/4) delta_{k,-i}.
  std::vector<std::string> mismatches_with_closed_form() const;
  nlohmann::json to_json() const;
};

// Linear system of the 1-cocycle condition for AK(1) on the unknowns with
// |indices| <= W, keeping only relations whose indices all lie in the window,
// plus C = 0 on eps_0, a_{+-1/2} and the normalization lambda_1^{-1} = -1.
// Since C vanishes on eps_0, a_{+-1/2} for every upper index, such terms are
// dropped before the window test.
// Throws UnderdeterminedInterior when some unknown with |indices| <= W - 2
// is left free, ConfigError for W < 2.
CocycleUnknowns unique_solver(int W);

}  // namespace knsuper
