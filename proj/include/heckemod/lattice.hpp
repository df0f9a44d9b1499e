#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "heckemod/poly.hpp"
#include "heckemod/rootsys.hpp"

namespace heckemod {

// A chosen basis of the character lattice T*: coordinates of the simple
// roots plus the coroot pairings of the basis elements. These two tables
// determine the W-action on S = Sym(T*) and the divided differences.
class CharacterLattice {
 public:
  // simple_root_coords[i] = coordinates of alpha_{i+1} in the basis;
  // coroot_pairings[i][b] = <basis_b, alpha_{i+1}^vee>.
  CharacterLattice(const RootSystem& rs, std::vector<std::string> labels,
                   std::vector<std::vector<Coeff>> simple_root_coords,
                   std::vector<std::vector<Coeff>> coroot_pairings);
  CharacterLattice(CharacterLattice&&) noexcept;
  CharacterLattice& operator=(CharacterLattice&&) noexcept;
  ~CharacterLattice();

  const RootSystem& root_system() const { return *rs_; }
  int dim() const { return int(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Poly& simple_root(int i) const { return alphas_[i - 1]; }  // 1-based
  Coeff pairing(int i, int basis_var) const { return pairings_[i - 1][basis_var]; }
  const std::vector<std::vector<Coeff>>& simple_root_coords() const { return coords_; }

  // s_i as linear substitution images of the basis variables.
  const std::vector<Poly>& reflection_images(int i) const { return refl_[i - 1]; }

  // Any root (by index in the root system) as a linear form; x_{-a} = -x_a.
  Poly root_form(int root_idx) const;

  std::string to_string(const Poly& f) const { return poly_to_string(f, labels_); }
  Poly parse(const std::string& s) const { return poly_parse(s, labels_); }

  // Monomial basis of the homogeneous component S^d, leading term first.
  const std::vector<Mono>& monomial_basis(int d) const;
  int monomial_index(int d, Mono m) const;

  // Integer matrix of Delta_i (resp. s_i) from S^d to S^{d-1} (resp. S^d),
  // columns indexed by monomial_basis(d). Cached; safe for concurrent reads.
  const std::vector<std::vector<Coeff>>& demazure_matrix(int i, int d) const;
  const std::vector<std::vector<Coeff>>& reflection_matrix(int i, int d) const;

 private:
  const RootSystem* rs_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Coeff>> coords_;
  std::vector<std::vector<Coeff>> pairings_;
  std::vector<Poly> alphas_;
  std::vector<std::vector<Poly>> refl_;

  // Lazily built operator matrices; concurrent readers, exclusive insertion.
  struct Cache;
  mutable std::unique_ptr<Cache> cache_;

  void validate() const;
};

// W-action and divided differences on S.
Poly reflect_simple(const CharacterLattice& lat, int i, const Poly& f);
Poly reflect(const CharacterLattice& lat, const WeylElt& w, const Poly& f);
// Delta_i(f) = (f - s_i f) / alpha_i, exact over Z.
Poly demazure(const CharacterLattice& lat, int i, const Poly& f);
// Composite word, leftmost subscript outermost: word {3,2,1} is D3(D2(D1(f))).
Poly demazure_word(const CharacterLattice& lat, const std::vector<int>& word, const Poly& f);

// Built-in lattice presets.
CharacterLattice root_lattice(const RootSystem& rs);
// A3 with basis {a1, a2, w2}, alpha_3 = 2*w2 - a1 - 2*a2.
CharacterLattice a3_omega2_lattice(const RootSystem& rs);
// D4 with basis {a1, a2, a3, w1}, alpha_4 = 2*w1 - 2*a1 - 2*a2 - a3.
CharacterLattice d4_so8_lattice(const RootSystem& rs);
// D4 with basis {a2, a3, a4, w4}, alpha_1 = 2*w4 - 2*a2 - a3 - 2*a4.
CharacterLattice d4_hspin8_lattice(const RootSystem& rs);

}  // namespace heckemod
