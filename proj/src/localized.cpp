#include "heckemod/localized.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace heckemod {

CosetUnknowns invariance_constraints(const CosetSystem& cs) {
  const RootSystem& rs = cs.root_system();
  CosetUnknowns out;
  out.dc.resize(cs.size());
  out.twist.assign(cs.size(), WeylElt::identity(rs));
  out.unknown_rep.resize(cs.num_double_cosets());
  for (int d = 0; d < cs.num_double_cosets(); ++d) {
    int start = cs.double_coset_min_rep(d);
    out.unknown_rep[d] = start;
    std::vector<char> seen(cs.size(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    out.dc[start] = d;
    out.twist[start] = WeylElt::identity(rs);
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (int j : cs.parabolic()) {
        WeylElt sj = WeylElt::simple(rs, j);
        int cls = cs.class_index(sj * cs.rep(cur));
        if (!seen[cls]) {
          seen[cls] = 1;
          out.dc[cls] = d;
          out.twist[cls] = sj * out.twist[cur];
          queue.push_back(cls);
        }
      }
    }
  }
  return out;
}

namespace {

EqAtom make_atom(const CosetSystem& cs, int unknown, const WeylElt& w) {
  EqAtom a;
  a.unknown = unknown;
  a.w = w;
  a.word = word_string(w.word(cs.root_system()));
  return a;
}

std::string atom_sort_word(const EqAtom& a) { return a.word == "e" ? "" : a.word; }

bool atom_less(const EqAtom& a, const EqAtom& b) {
  if (a.unknown != b.unknown) return a.unknown < b.unknown;
  std::string wa = atom_sort_word(a), wb = atom_sort_word(b);
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

bool term_less(const EqTerm& a, const EqTerm& b) {
  if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
  for (size_t i = 0; i < a.atoms.size(); ++i) {
    if (a.atoms[i].unknown != b.atoms[i].unknown) return a.atoms[i].unknown < b.atoms[i].unknown;
    std::string wa = atom_sort_word(a.atoms[i]), wb = atom_sort_word(b.atoms[i]);
    if (wa != wb) return wa.size() != wb.size() ? wa.size() < wb.size() : wa < wb;
  }
  return false;
}

EquationSystem build_system(const CosetSystem& cs, const CharacterLattice& lat, bool cleared) {
  const RootSystem& rs = cs.root_system();
  CosetUnknowns un = invariance_constraints(cs);
  auto table = cs.mult_table();
  TorsionProducts tp = torsion_products(cs, lat);

  EquationSystem sys;
  sys.cleared = cleared;
  for (int u = 0; u < cs.size(); ++u) {
    Equation eq;
    eq.cls = u;
    eq.redundant = un.unknown_rep[un.dc[u]] != u;
    for (int i = 0; i < cs.size(); ++i)
      for (int k = 0; k < cs.size(); ++k) {
        if (table[i][k] != u) continue;
        EqTerm term;
        term.coef = cleared ? reflect(lat, cs.rep(i), tp.x_p) : Poly::constant(1);
        term.atoms.push_back(make_atom(cs, un.dc[i], un.twist[i]));
        term.atoms.push_back(make_atom(cs, un.dc[k], cs.rep(i) * un.twist[k]));
        std::sort(term.atoms.begin(), term.atoms.end(), atom_less);
        eq.lhs.push_back(std::move(term));
      }
    std::sort(eq.lhs.begin(), eq.lhs.end(), term_less);
    eq.rhs.coef = cleared ? tp.x_pi : Poly::constant(1);
    eq.rhs.atoms.push_back(make_atom(cs, un.dc[u], un.twist[u]));
    sys.equations.push_back(std::move(eq));
  }

  if (cleared) {
    // Deduplicated membership divisibilities: orbits of (w, alpha) under
    // left W_P-translation. Conditions with equal classes, or with w(alpha)
    // inside Sigma_P (where the difference is g - reflection(g) by the
    // invariance substitutions), hold identically and are skipped.
    auto in_sigma_p = [&](int idx) {
      for (int i = 0; i < rs.rank(); ++i)
        if (rs.root(idx)[i] != 0 && !cs.in_parabolic(i + 1)) return false;
      return true;
    };
    std::set<std::tuple<int, int, int>> canon;
    for (int u = 0; u < cs.size(); ++u) {
      for (int a = 0; a < rs.num_positive(); ++a) {
        if (in_sigma_p(a)) continue;
        auto triple_for = [&](const WeylElt& w) -> std::optional<std::tuple<int, int, int>> {
          int moved = w.act(a);
          if (!rs.is_positive(moved)) moved = rs.negate(moved);
          if (in_sigma_p(moved)) return std::nullopt;
          int ca = cs.class_index(w);
          int cb = cs.class_index(w * root_reflection(rs, a));
          if (ca == cb) return std::nullopt;
          return std::tuple<int, int, int>(moved, std::min(ca, cb), std::max(ca, cb));
        };
        auto base = triple_for(cs.rep(u));
        if (!base) continue;
        auto best = *base;
        for (const WeylElt& v : cs.parabolic_elements()) {
          auto t = triple_for(v * cs.rep(u));
          if (t) best = std::min(best, *t);
        }
        canon.insert(best);
      }
    }
    for (auto& [root_idx, ca, cb] : canon) sys.divisibilities.push_back({root_idx, ca, cb});
  }
  return sys;
}

std::string unknown_name(int unknown, bool cleared) {
  return (cleared ? "ct" : "c") + std::to_string(unknown);
}

std::string atom_string(const EqAtom& a, bool cleared) {
  std::string base = unknown_name(a.unknown, cleared);
  if (a.word == "e") return base;
  std::string w;
  for (char c : a.word) {
    w += "s";
    w += c;
  }
  return w + "(" + base + ")";
}

std::string term_string(const EqTerm& t, const CharacterLattice& lat, bool cleared) {
  // Group repeated atoms into powers for readability.
  std::ostringstream os;
  bool coef_one = t.coef == Poly::constant(1);
  if (!coef_one) os << "(" << lat.to_string(t.coef) << ")";
  bool first = coef_one;
  for (size_t i = 0; i < t.atoms.size();) {
    size_t j = i;
    while (j < t.atoms.size() && t.atoms[j].unknown == t.atoms[i].unknown &&
           t.atoms[j].word == t.atoms[i].word)
      ++j;
    if (!first) os << "*";
    os << atom_string(t.atoms[i], cleared);
    if (j - i > 1) os << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

}  // namespace

EquationSystem convolution_idempotent_system(const CosetSystem& cs, const CharacterLattice& lat) {
  return build_system(cs, lat, false);
}

EquationSystem cleared_system(const CosetSystem& cs, const CharacterLattice& lat) {
  return build_system(cs, lat, true);
}

std::string equation_string(const Equation& eq, const CharacterLattice& lat, bool cleared) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : eq.lhs) {
    if (!first) os << " + ";
    os << term_string(t, lat, cleared);
    first = false;
  }
  if (first) os << "0";
  os << " = " << term_string(eq.rhs, lat, cleared);
  return os.str();
}

std::string divisibility_string(const DivisibilityCondition& d, const CosetSystem& cs,
                                const CharacterLattice& lat) {
  // The cleared entries at the two classes, named like the equations print
  // them via the invariance twists.
  CosetUnknowns un = invariance_constraints(cs);
  auto entry = [&](int cls) {
    return atom_string(make_atom(cs, un.dc[cls], un.twist[cls]), true);
  };
  std::ostringstream os;
  os << lat.to_string(lat.root_form(d.root_idx)) << " | " << entry(d.cls_a) << " - "
     << entry(d.cls_b);
  return os.str();
}

std::vector<std::string> system_strings(const EquationSystem& sys, const CosetSystem& cs,
                                        const CharacterLattice& lat, bool include_redundant) {
  std::vector<std::string> out;
  for (const auto& eq : sys.equations) {
    if (eq.redundant && !include_redundant) continue;
    out.push_back(equation_string(eq, lat, sys.cleared));
  }
  for (const auto& d : sys.divisibilities) out.push_back(divisibility_string(d, cs, lat));
  return out;
}

Poly equation_residual(const Equation& eq, const CharacterLattice& lat,
                       const std::vector<Poly>& unknown_values) {
  auto eval_term = [&](const EqTerm& t) {
    Poly acc = t.coef;
    for (const auto& a : t.atoms) acc = acc * reflect(lat, a.w, unknown_values[a.unknown]);
    return acc;
  };
  Poly lhs;
  for (const auto& t : eq.lhs) lhs = lhs + eval_term(t);
  return lhs - eval_term(eq.rhs);
}

namespace {

bool try_divide(const Poly& f, const Poly& g, Poly* q) {
  try {
    Poly result = divide_exact(f, g);
    if (q) *q = result;
    return true;
  } catch (const std::logic_error&) {
    return false;
  }
}

}  // namespace

MembershipResult membership_check(const CosetSystem& cs, const CharacterLattice& lat,
                                  const FixedPointFunction& b, bool narrower) {
  const RootSystem& rs = cs.root_system();
  MembershipResult res;
  res.pass = true;
  auto in_sigma_p = [&](int idx) {
    for (int i = 0; i < rs.rank(); ++i)
      if (rs.root(idx)[i] != 0 && !cs.in_parabolic(i + 1)) return false;
    return true;
  };
  for (int u = 0; u < cs.size(); ++u) {
    for (int a = 0; a < rs.num_positive(); ++a) {
      if (in_sigma_p(a)) continue;
      int moved = cs.rep(u).act(a);
      if (narrower && !in_sigma_p(moved)) continue;
      int other = cs.class_index(cs.rep(u) * root_reflection(rs, a));
      Poly diff = b[u] - b[other];
      if (diff.is_zero()) continue;
      if (!try_divide(diff, lat.root_form(moved), nullptr)) {
        res.pass = false;
        res.failures.push_back({u, a, moved, other});
      }
    }
  }
  return res;
}

FixedPointFunction to_fixed_points(const CosetSystem& cs, const CharacterLattice& lat,
                                   const std::vector<FixedPointFunction>& xi,
                                   const ModuleElement& e) {
  FixedPointFunction f(cs.size());
  for (const auto& [w, c] : e.coeffs)
    for (int u = 0; u < cs.size(); ++u)
      if (!xi[w][u].is_zero()) f[u] = f[u] + c * xi[w][u];
  return f;
}

ModuleElement from_fixed_points(const CosetSystem& cs, const CharacterLattice& lat,
                                const std::vector<FixedPointFunction>& xi,
                                const FixedPointFunction& f) {
  // xi_w is supported on the lower Bruhat interval of w (classes of length
  // at most l(w), only w itself at that length) with xi_w(w) != 0, so
  // back-substitution from the top class down is exact.
  for (int w = 0; w < cs.size(); ++w) {
    if (xi[w][w].is_zero()) throw std::logic_error("Schubert class vanishes at its own class");
    for (int u = 0; u < cs.size(); ++u)
      if (u != w && cs.length(u) >= cs.length(w) && !xi[w][u].is_zero())
        throw std::logic_error("Schubert class support exceeds the lower interval");
  }
  FixedPointFunction rem = f;
  ModuleElement out;
  for (int w = cs.size() - 1; w >= 0; --w) {
    if (rem[w].is_zero()) continue;
    Poly a = divide_exact(rem[w], xi[w][w]);
    out.add(w, a);
    for (int u = 0; u < cs.size(); ++u)
      if (!xi[w][u].is_zero()) rem[u] = rem[u] - a * xi[w][u];
  }
  for (const auto& r : rem)
    if (!r.is_zero()) throw std::logic_error("fixed-point function outside the Schubert span");
  return out;
}

std::vector<EndoMatrix> perm_module_endos(const CosetSystem& cs, const CharacterLattice& lat) {
  auto xi = schubert_fixed_point_basis(cs, lat);
  auto table = cs.mult_table();
  std::vector<EndoMatrix> out;
  for (int d = 0; d < cs.num_double_cosets(); ++d) {
    // f-coordinate matrix: column u of the endomorphism sends f_u to
    // sum over coset members k of f_{class(rep_u * rep_k)}.
    std::vector<std::vector<Coeff>> fmat(cs.size(), std::vector<Coeff>(cs.size(), 0));
    for (int u = 0; u < cs.size(); ++u)
      for (int k : cs.double_coset_members(d)) fmat[table[u][k]][u] += 1;
    EndoMatrix mat(cs.size(), std::vector<Poly>(cs.size()));
    for (int w = 0; w < cs.size(); ++w) {
      FixedPointFunction target(cs.size());
      for (int x = 0; x < cs.size(); ++x) {
        Poly acc;
        for (int u = 0; u < cs.size(); ++u)
          if (fmat[x][u] != 0 && !xi[w][u].is_zero()) acc = acc + fmat[x][u] * xi[w][u];
        target[x] = acc;
      }
      ModuleElement col = from_fixed_points(cs, lat, xi, target);
      for (const auto& [v, c] : col.coeffs) mat[v][w] = c;
    }
    out.push_back(std::move(mat));
  }
  return out;
}

}  // namespace heckemod
