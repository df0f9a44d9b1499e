#pragma once

#include <string>
#include <vector>

#include "heckemod/endosolve.hpp"
#include "heckemod/nilhecke.hpp"

namespace heckemod {

// One free unknown per double coset, carried at its minimal representative;
// every other entry is the recorded W_P-twist applied to that unknown.
struct CosetUnknowns {
  std::vector<int> dc;            // class -> double coset id
  std::vector<WeylElt> twist;     // class -> element of W_P with entry = twist(c_dc)
  std::vector<int> unknown_rep;   // double coset -> minimal rep class index
};

CosetUnknowns invariance_constraints(const CosetSystem& cs);

// w(c_unknown) as an opaque atom of an equation term.
struct EqAtom {
  int unknown;       // double coset id
  std::string word;  // canonical word of w ("e" for identity)
  WeylElt w;
};

struct EqTerm {
  Poly coef;  // polynomial coefficient (1 in the un-cleared system)
  std::vector<EqAtom> atoms;
};

struct Equation {
  int cls;         // the class u of this identity
  bool redundant;  // a W_P-translate of the double-coset minimal class identity
  std::vector<EqTerm> lhs;
  EqTerm rhs;
};

// x_gamma | b_{cls_a} - b_{cls_b}, gamma a positive root.
struct DivisibilityCondition {
  int root_idx;
  int cls_a, cls_b;
};

struct EquationSystem {
  bool cleared;
  std::vector<Equation> equations;
  std::vector<DivisibilityCondition> divisibilities;
};

// The convolution idempotent identities, one per class, unknowns
// substituted per invariance_constraints.
EquationSystem convolution_idempotent_system(const CosetSystem& cs, const CharacterLattice& lat);

// Denominator-cleared form: sum over wv = u of w(x_P) b_w w(b_v) = x_Pi b_u,
// plus the deduplicated divisibility conditions.
EquationSystem cleared_system(const CosetSystem& cs, const CharacterLattice& lat);

std::string equation_string(const Equation& eq, const CharacterLattice& lat, bool cleared);
std::string divisibility_string(const DivisibilityCondition& d, const CosetSystem& cs,
                                const CharacterLattice& lat);
std::vector<std::string> system_strings(const EquationSystem& sys, const CosetSystem& cs,
                                        const CharacterLattice& lat, bool include_redundant);

// Substitute concrete polynomial values for the unknowns and evaluate
// LHS - RHS of one equation.
Poly equation_residual(const Equation& eq, const CharacterLattice& lat,
                       const std::vector<Poly>& unknown_values);

// GKM-style membership test on fixed-point functions over S.
struct MembershipFailure {
  int cls;           // w in W^P (class index)
  int alpha_idx;     // the root alpha (positive, outside Sigma_P)
  int moved_root;    // w(alpha)
  int other_cls;     // class of s_{w(alpha)} w
};

struct MembershipResult {
  bool pass;
  std::vector<MembershipFailure> failures;
};

// Checks x_{w(alpha)} | b_w - b_{s_{w(alpha)} w} for every w in W^P and
// positive alpha outside Sigma_P. With narrower = true only the pairs with
// w(alpha) inside Sigma_P are checked (always satisfied for polynomial b).
MembershipResult membership_check(const CosetSystem& cs, const CharacterLattice& lat,
                                  const FixedPointFunction& b, bool narrower = false);

// Basis of the degree-0 permutation-module endomorphisms (one per double
// coset, constant coefficients), emitted as Schubert-basis matrices.
std::vector<EndoMatrix> perm_module_endos(const CosetSystem& cs, const CharacterLattice& lat);

// Change of basis: a module element in Schubert coordinates as a
// fixed-point function, and back (exact division; must lie in the module).
FixedPointFunction to_fixed_points(const CosetSystem& cs, const CharacterLattice& lat,
                                   const std::vector<FixedPointFunction>& xi,
                                   const ModuleElement& e);
ModuleElement from_fixed_points(const CosetSystem& cs, const CharacterLattice& lat,
                                const std::vector<FixedPointFunction>& xi,
                                const FixedPointFunction& f);

}  // namespace heckemod
