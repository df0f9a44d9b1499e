#pragma once

#include <map>
#include <vector>

#include "heckemod/lattice.hpp"
#include "heckemod/rootsys.hpp"

namespace heckemod {

// Element of the Schubert-basis module: sum of coefficient polynomials
// against the basis classes indexed by W^P. Missing index = zero.
struct ModuleElement {
  std::map<int, Poly> coeffs;

  void add(int rep, const Poly& f) {
    if (f.is_zero()) return;
    auto it = coeffs.find(rep);
    if (it == coeffs.end()) {
      coeffs.emplace(rep, f);
    } else {
      it->second = it->second + f;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
  bool is_zero() const { return coeffs.empty(); }
  Poly coeff(int rep) const {
    auto it = coeffs.find(rep);
    return it == coeffs.end() ? Poly() : it->second;
  }
  friend bool operator==(const ModuleElement& a, const ModuleElement& b) {
    return a.coeffs == b.coeffs;
  }
};

// X_j acting on a module element: commute X_j past each coefficient
// (X_j * a = s_j(a) X_j + Delta_j(a)), then apply the basis rule
// X_j . xi_v = xi_{s_j v} when the length goes up inside W^P, 0 otherwise.
ModuleElement x_act(const CosetSystem& cs, const CharacterLattice& lat, int j,
                    const ModuleElement& e);

// A function W/W_P -> S in coordinates over the minimal representatives.
using FixedPointFunction = std::vector<Poly>;

// (w . f)(u) = w(f(w^{-1} u)).
FixedPointFunction weyl_act(const CosetSystem& cs, const CharacterLattice& lat, const WeylElt& w,
                            const FixedPointFunction& f);

// Chern-root products for the additive law: x over all roots of Sigma,
// all roots of Sigma_P, and their exact quotient.
struct TorsionProducts {
  Poly x_pi;
  Poly x_p;
  Poly x_pi_over_p;
};
TorsionProducts torsion_products(const CosetSystem& cs, const CharacterLattice& lat);

// [pt] as a fixed-point function: x_{Pi/P} at the identity class.
FixedPointFunction point_class(const CosetSystem& cs, const CharacterLattice& lat);

// The classical normalization (product over negative roots outside Sigma_P
// only, degree = dim G/P). The Schubert change of basis is integral for
// this one, so it anchors the fixed-point basis.
FixedPointFunction point_class_classical(const CosetSystem& cs, const CharacterLattice& lat);

// X_j on fixed-point functions inside the module: entrywise
// (f_u - s_j f_{s_j u}) / alpha_j; division must be exact (asserted),
// which holds for elements of the module.
FixedPointFunction demazure_act_fixed(const CosetSystem& cs, const CharacterLattice& lat, int j,
                                      const FixedPointFunction& f);

// All Schubert classes in fixed-point coordinates: column w is xi_w,
// built from [pt] along the weak-order Hasse diagram. Agreement over
// multiple incoming edges is asserted.
std::vector<FixedPointFunction> schubert_fixed_point_basis(const CosetSystem& cs,
                                                           const CharacterLattice& lat);

}  // namespace heckemod
