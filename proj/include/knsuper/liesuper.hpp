#pragma once

// The Lie superalgebra L = Vect(A) + F_{-1/2} of the punctured sphere, its
// 2-cocycle, the dual-valued 1-cocycle and the coadjoint action on
// F_2 + F_{3/2}.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knsuper/densities.hpp"
#include "knsuper/graded.hpp"
#include "knsuper/tables.hpp"

namespace knsuper {

using SuperElement = GradedPair<-2, -1>;     // e dz^-1 + psi dz^-1/2
using DualSuperElement = GradedPair<4, 3>;   // u dz^2 + w dz^3/2

// R dz^2; zero is the flat connection of the standard chart.
struct ProjectiveConnection {
  MeroFun R;
  static ProjectiveConnection zero(const PunctureConfig& cfg) { return {MeroFun(cfg)}; }
};

// [e,f] = -e'f + ef', [e,psi] = -1/2 e'psi + e psi', [phi,psi] = 1/2 phi psi.
SuperElement sbracket(const SuperElement& x, const SuperElement& y);
bool check_super_skew(const SuperElement& x, const SuperElement& y);
bool check_super_jacobi(const SuperElement& x, const SuperElement& y, const SuperElement& z);

// Even-even: -int [1/2 (e'''f - e f''') - R (e'f - e f')];
// odd-odd: int [1/2 (phi''psi + phi psi'') - 1/2 R phi psi]; mixed terms vanish.
Scalar cocycle2(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R);
Scalar cocycle2(const SuperElement& x, const SuperElement& y);

// c(x, y) = -(-1)^{xy} c(y, x) and the cyclic super-Jacobi sum of c(x, [y, z]).
bool check_cocycle_skew(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R);
bool check_cocycle_jacobi(const SuperElement& x, const SuperElement& y, const SuperElement& z,
                          const ProjectiveConnection& R);

// Closed forms of c with R = 0 on basis pairs. ThreePoint: families V and
// phi; TwoPoint: e and b. Throws InvalidFamilyForConfig for other families
// and ParityMismatch for malformed indices.
Scalar closed_form_c(const BasisIndex& i, const BasisIndex& j, const PunctureConfig& cfg);

// c_R(x, y) - c_0(x, y) == f([x, y]) with f(Z) = -int R Z_even.
bool coboundary_witness_check(const ProjectiveConnection& R, const SuperElement& x, const SuperElement& y);

// C(e) = -(e''' - 2R e' - R' e) dz^2, C(phi) = (phi'' - 1/2 R phi) dz^3/2.
DualSuperElement onecocycle_L(const SuperElement& x, const ProjectiveConnection& R);
DualSuperElement onecocycle_L(const SuperElement& x);

DualSuperElement coad_L(const SuperElement& x, const DualSuperElement& u);
// <u, x> = <u_even, x_even> + <u_odd, x_odd>.
Scalar pairing(const DualSuperElement& u, const SuperElement& x);

// C([x,y]) = ad*_x C(y) - (-1)^{xy} ad*_y C(x) and <C(x), y> = c(x, y).
bool check_onecocycle_L(const SuperElement& x, const SuperElement& y, const ProjectiveConnection& R);
// <ad*_x u, y> = -(-1)^{xu} <u, [x, y]>.
bool check_coadjoint_duality_L(const SuperElement& x, const DualSuperElement& u, const SuperElement& y);

// Closed forms of C with R = 0, in the standard dual basis.
CoeffMap closed_form_C1L(const BasisIndex& i, const PunctureConfig& cfg);

// Standard basis of L (or of its dual) with |index| <= window.
std::vector<BasisIndex> lie_basis(const PunctureConfig& cfg, int window);
std::vector<BasisIndex> lie_dual_basis(const PunctureConfig& cfg, int window);

// Coordinates in lie_basis / lie_dual_basis; nullopt if not a finite combination
// within the automatic window cap.
std::optional<CoeffMap> expand(const SuperElement& x);
std::optional<CoeffMap> expand(const DualSuperElement& u);

struct Osp12Report {
  bool closed = false;
  int pairs = 0;
  int vanishing = 0;
  std::vector<std::string> failures;
  bool ok() const { return closed && vanishing == pairs; }
};
// The copy spanned by dz^-1, z dz^-1, z^2 dz^-1, s dz^-1/2, s z dz^-1/2.
std::vector<SuperElement> osp12_generators(const PunctureConfig& cfg);
Osp12Report osp12_vanishing_check(const PunctureConfig& cfg);

StructureTable table_c2(const PunctureConfig& cfg, int window, const ProjectiveConnection* R = nullptr);
StructureTable table_C1_L(const PunctureConfig& cfg, int window);
// Entries of a computed table that disagree with the closed forms.
std::vector<std::string> compare_c2_with_closed_form(const StructureTable& t, const PunctureConfig& cfg, int window);
std::vector<std::string> compare_C1L_with_closed_form(const StructureTable& t, const PunctureConfig& cfg);

// Set of p + q over nonzero entries c(X_p, X_q), in units of 1/2.
std::set<int> c2_support_twice(const StructureTable& t);

// Is there f, supported on basis coefficients with |index| <= functional_window,
// with c(x, y) = f([x, y]) for all basis pairs with |index| <= pair_window?
struct NontrivialityReport {
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  bool feasible = true;
  // Same system with f allowed on every basis element that occurs.
  bool feasible_unrestricted = true;
};
NontrivialityReport window_nontriviality(const PunctureConfig& cfg, int pair_window, int functional_window);

}  // namespace knsuper
