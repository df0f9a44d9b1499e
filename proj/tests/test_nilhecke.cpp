#include "heckemod/nilhecke.hpp"

#include <random>

#include "doctest.h"
#include "heckemod/localized.hpp"

using namespace heckemod;

namespace {

Poly random_homog(std::mt19937_64& rng, const CharacterLattice& lat, int d) {
  std::uniform_int_distribution<int> coef(-2, 2);
  Poly p;
  for (Mono m : lat.monomial_basis(d)) {
    int c = coef(rng);
    if (c) p.add_term(m, c);
  }
  return p;
}

}  // namespace

TEST_CASE("x_act follows the weak order rule") {
  RootSystem rs('A', 3);
  CosetSystem cs(rs, {1, 3});
  CharacterLattice lat = a3_omega2_lattice(rs);

  ModuleElement xi1;
  xi1.add(0, Poly::constant(1));
  // Klein: X_2 sends the identity class to the class of s_2.
  ModuleElement up = x_act(cs, lat, 2, xi1);
  CHECK(up.coeffs.size() == 1);
  CHECK(up.coeff(cs.class_index(WeylElt::simple(rs, 2))) == Poly::constant(1));
  // s_j inside W_P kills the identity class.
  CHECK(x_act(cs, lat, 1, xi1).is_zero());
  CHECK(x_act(cs, lat, 3, xi1).is_zero());
}

TEST_CASE("x_act expands the commutation rule") {
  // X_j . (alpha_j xi_1) = -alpha_j xi_{s_j} + 2 xi_1 when s_j is outside W_P.
  RootSystem rs('A', 2);
  CosetSystem cs(rs, {2});
  CharacterLattice lat = root_lattice(rs);
  ModuleElement e;
  e.add(0, lat.simple_root(1));
  ModuleElement got = x_act(cs, lat, 1, e);
  CHECK(got.coeff(0) == Poly::constant(2));
  CHECK(got.coeff(1) == -lat.simple_root(1));
}

TEST_CASE("x_act is nilpotent") {
  RootSystem rs('D', 4);
  CosetSystem cs(rs, {2, 3, 4});
  CharacterLattice lat = root_lattice(rs);
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 10; ++iter) {
    ModuleElement e;
    for (int v = 0; v < cs.size(); ++v) e.add(v, random_homog(rng, lat, 2));
    for (int j = 1; j <= 4; ++j) CHECK(x_act(cs, lat, j, x_act(cs, lat, j, e)).is_zero());
  }
}

TEST_CASE("x_act degree bookkeeping") {
  RootSystem rs('A', 3);
  CosetSystem cs(rs, {2, 3});
  CharacterLattice lat = root_lattice(rs);
  std::mt19937_64 rng(17);
  ModuleElement e;
  e.add(1, random_homog(rng, lat, 3));
  ModuleElement out = x_act(cs, lat, 1, e);
  for (auto& [rep, c] : out.coeffs) {
    if (rep == 1) CHECK(c.degree() == 2);  // Delta part
    else {
      CHECK(cs.length(rep) == cs.length(1) + 1);
      CHECK(c.degree() == 3);  // reflected part
    }
  }
}

TEST_CASE("weyl_act examples and action axiom") {
  RootSystem rs('A', 2);
  CosetSystem cs(rs, {2});
  CharacterLattice lat = root_lattice(rs);
  FixedPointFunction f(cs.size());
  f[0] = lat.simple_root(2);  // beta at the identity class
  WeylElt s1 = WeylElt::simple(rs, 1);

  FixedPointFunction id_act = weyl_act(cs, lat, WeylElt::identity(rs), f);
  CHECK(id_act == f);

  FixedPointFunction g = weyl_act(cs, lat, s1, f);
  int s1cls = cs.class_index(s1);
  CHECK(g[s1cls] == lat.simple_root(1) + lat.simple_root(2));
  CHECK(g[0].is_zero());

  std::mt19937_64 rng(23);
  auto elems = enumerate_subgroup(rs, {1, 2});
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  for (int iter = 0; iter < 20; ++iter) {
    FixedPointFunction h(cs.size());
    for (int u = 0; u < cs.size(); ++u) h[u] = random_homog(rng, lat, 2);
    WeylElt v = elems[pick(rng)], w = elems[pick(rng)];
    CHECK(weyl_act(cs, lat, v * w, h) == weyl_act(cs, lat, v, weyl_act(cs, lat, w, h)));
  }
}

TEST_CASE("point class and torsion products") {
  RootSystem rs('A', 2);
  CosetSystem cs(rs, {2});
  CharacterLattice lat = root_lattice(rs);
  TorsionProducts tp = torsion_products(cs, lat);
  Poly a = lat.simple_root(1), b = lat.simple_root(2);
  CHECK(tp.x_pi_over_p == a * a * (a + b) * (a + b));
  CHECK(tp.x_p == -(b * b));
  CHECK(tp.x_pi == tp.x_p * tp.x_pi_over_p);
  FixedPointFunction pt = point_class(cs, lat);
  CHECK(pt[0] == tp.x_pi_over_p);
  for (int u = 1; u < cs.size(); ++u) CHECK(pt[u].is_zero());

  // Full parabolic: empty product.
  CosetSystem full(rs, {1, 2});
  CHECK(point_class(full, lat)[0] == Poly::constant(1));
}

TEST_CASE("x_pi factorization for every preset") {
  RootSystem a3('A', 3), d4('D', 4);
  struct Case {
    const RootSystem* rs;
    std::vector<int> par;
    CharacterLattice lat;
  };
  std::vector<Case> cases;
  cases.push_back({&a3, {1, 3}, a3_omega2_lattice(a3)});
  cases.push_back({&d4, {2, 3, 4}, root_lattice(d4)});
  cases.push_back({&d4, {2, 3, 4}, d4_so8_lattice(d4)});
  cases.push_back({&d4, {2, 3, 4}, d4_hspin8_lattice(d4)});
  for (auto& c : cases) {
    CosetSystem cs(*c.rs, c.par);
    TorsionProducts tp = torsion_products(cs, c.lat);
    CHECK(tp.x_pi == tp.x_p * tp.x_pi_over_p);
    int outside = 0;
    for (int r = 0; r < c.rs->num_roots(); ++r) {
      bool inp = true;
      for (int i = 0; i < c.rs->rank(); ++i)
        if (c.rs->root(r)[i] != 0 && !cs.in_parabolic(i + 1)) inp = false;
      if (!inp) ++outside;
    }
    CHECK(tp.x_pi_over_p.degree() == outside);
  }
}

TEST_CASE("delta action identity on fixed point functions") {
  // weyl_act(s_j, f) = f - alpha_j * (X_j f) for f in the module.
  RootSystem rs('A', 3);
  CosetSystem cs(rs, {1, 3});
  CharacterLattice lat = a3_omega2_lattice(rs);
  auto xi = schubert_fixed_point_basis(cs, lat);
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 10; ++iter) {
    FixedPointFunction f(cs.size());
    for (int w = 0; w < cs.size(); ++w) {
      Poly c = random_homog(rng, lat, 1);
      for (int u = 0; u < cs.size(); ++u) f[u] = f[u] + c * xi[w][u];
    }
    for (int j = 1; j <= 3; ++j) {
      FixedPointFunction xf = demazure_act_fixed(cs, lat, j, f);
      FixedPointFunction lhs = weyl_act(cs, lat, WeylElt::simple(rs, j), f);
      FixedPointFunction rhs(cs.size());
      for (int u = 0; u < cs.size(); ++u) rhs[u] = f[u] - lat.simple_root(j) * xf[u];
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("schubert basis starts at the point class and is triangular") {
  RootSystem rs('D', 4);
  CosetSystem cs(rs, {2, 3, 4});
  CharacterLattice lat = root_lattice(rs);
  auto xi = schubert_fixed_point_basis(cs, lat);
  CHECK(xi[0] == point_class_classical(cs, lat));
  // Support lies in the lower Bruhat interval: zero at any class of length
  // >= l(w) other than w itself, nonzero at w.
  for (int w = 0; w < cs.size(); ++w) {
    CHECK(!xi[w][w].is_zero());
    for (int u = 0; u < cs.size(); ++u)
      if (u != w && cs.length(u) >= cs.length(w)) CHECK(xi[w][u].is_zero());
  }
}
