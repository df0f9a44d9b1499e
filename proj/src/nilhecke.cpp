#include "heckemod/nilhecke.hpp"

#include <stdexcept>

namespace heckemod {

ModuleElement x_act(const CosetSystem& cs, const CharacterLattice& lat, int j,
                    const ModuleElement& e) {
  const RootSystem& rs = cs.root_system();
  ModuleElement out;
  WeylElt sj = WeylElt::simple(rs, j);
  for (const auto& [rep, a] : e.coeffs) {
    // Remainder term lands on the same basis class.
    out.add(rep, demazure(lat, j, a));
    WeylElt moved = sj * cs.rep(rep);
    if (moved.length(rs) > cs.length(rep) && cs.is_min_rep(moved)) {
      int target = cs.rep_index(moved);
      if (target < 0) throw std::logic_error("weak order step left W^P unexpectedly");
      out.add(target, reflect_simple(lat, j, a));
    }
  }
  return out;
}

FixedPointFunction weyl_act(const CosetSystem& cs, const CharacterLattice& lat, const WeylElt& w,
                            const FixedPointFunction& f) {
  WeylElt winv = w.inverse();
  FixedPointFunction out(cs.size());
  for (int u = 0; u < cs.size(); ++u) {
    int src = cs.class_index(winv * cs.rep(u));
    if (!f[src].is_zero()) out[u] = reflect(lat, w, f[src]);
  }
  return out;
}

TorsionProducts torsion_products(const CosetSystem& cs, const CharacterLattice& lat) {
  const RootSystem& rs = cs.root_system();
  // Roots of Sigma_P = W_P-orbit of the parabolic simple roots; equivalently
  // the roots whose reflection lies in W_P. Detect by coordinates supported
  // on parabolic nodes (standard for a standard parabolic subsystem).
  auto in_sigma_p = [&](int idx) {
    const auto& coords = rs.root(idx);
    for (int i = 0; i < rs.rank(); ++i)
      if (coords[i] != 0 && !cs.in_parabolic(i + 1)) return false;
    return true;
  };
  TorsionProducts t;
  t.x_pi = Poly::constant(1);
  t.x_p = Poly::constant(1);
  t.x_pi_over_p = Poly::constant(1);
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    Poly form = lat.root_form(idx);
    t.x_pi = t.x_pi * form;
    if (in_sigma_p(idx))
      t.x_p = t.x_p * form;
    else
      t.x_pi_over_p = t.x_pi_over_p * form;
  }
  return t;
}

FixedPointFunction point_class(const CosetSystem& cs, const CharacterLattice& lat) {
  FixedPointFunction f(cs.size());
  f[0] = torsion_products(cs, lat).x_pi_over_p;
  return f;
}

FixedPointFunction point_class_classical(const CosetSystem& cs, const CharacterLattice& lat) {
  const RootSystem& rs = cs.root_system();
  auto in_sigma_p = [&](int idx) {
    const auto& coords = rs.root(idx);
    for (int i = 0; i < rs.rank(); ++i)
      if (coords[i] != 0 && !cs.in_parabolic(i + 1)) return false;
    return true;
  };
  Poly prod = Poly::constant(1);
  for (int idx = rs.num_positive(); idx < rs.num_roots(); ++idx)
    if (!in_sigma_p(idx)) prod = prod * lat.root_form(idx);
  FixedPointFunction f(cs.size());
  f[0] = prod;
  return f;
}

FixedPointFunction demazure_act_fixed(const CosetSystem& cs, const CharacterLattice& lat, int j,
                                      const FixedPointFunction& f) {
  const RootSystem& rs = cs.root_system();
  WeylElt sj = WeylElt::simple(rs, j);
  FixedPointFunction out(cs.size());
  for (int u = 0; u < cs.size(); ++u) {
    int swapped = cs.class_index(sj * cs.rep(u));
    Poly num = f[u] - reflect_simple(lat, j, f[swapped]);
    if (!num.is_zero()) out[u] = divide_exact(num, lat.simple_root(j));
  }
  return out;
}

std::vector<FixedPointFunction> schubert_fixed_point_basis(const CosetSystem& cs,
                                                           const CharacterLattice& lat) {
  std::vector<FixedPointFunction> xi(cs.size());
  std::vector<bool> have(cs.size(), false);
  xi[0] = point_class_classical(cs, lat);
  have[0] = true;
  // Hasse edges are listed from BFS order, so sources precede targets.
  for (const auto& edge : cs.hasse_edges()) {
    if (!have[edge.from]) throw std::logic_error("hasse edges out of order");
    FixedPointFunction next = demazure_act_fixed(cs, lat, edge.j, xi[edge.from]);
    if (!have[edge.to]) {
      xi[edge.to] = std::move(next);
      have[edge.to] = true;
    } else if (xi[edge.to] != next) {
      throw std::logic_error("Schubert class disagreement across reduced paths");
    }
  }
  for (bool h : have)
    if (!h) throw std::logic_error("unreached Schubert class");
  return xi;
}

}  // namespace heckemod
