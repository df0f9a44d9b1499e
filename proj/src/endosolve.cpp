#include "heckemod/endosolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace heckemod {

namespace {

// Number of Delta atoms in a word (each drops the degree by one).
[[maybe_unused]] int delta_count(const std::vector<OpAtom>& word) {
  int n = 0;
  for (const auto& a : word)
    if (!a.refl) ++n;
  return n;
}

// Drop leading reflections acting on degree-0 results, collapse s_j s_j,
// kill Delta_j Delta_j, and use s_j Delta_j = Delta_j. Keeps printed
// expressions in the shape the recurrent formulas produce by hand.
void simplify_term(SymTerm& t, const CosetSystem& cs) {
  auto& w = t.word;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].refl && w[i + 1].refl && w[i].idx == w[i + 1].idx) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
      if (!w[i].refl && !w[i + 1].refl && w[i].idx == w[i + 1].idx) {
        t.coef = 0;
        return;
      }
      if (w[i].refl && !w[i + 1].refl && w[i].idx == w[i + 1].idx) {
        w.erase(w.begin() + i);
        changed = true;
        break;
      }
    }
    // Leading reflections on a constant are the identity.
    int deg = cs.length(t.param);
    if (!w.empty() && w.front().refl) {
      int after = 0;
      for (size_t i = 1; i < w.size(); ++i)
        if (!w[i].refl) ++after;
      if (deg - after == 0) {
        w.erase(w.begin());
        changed = true;
      }
    }
  }
}

SymExpr normalized(SymExpr e, const CosetSystem& cs) {
  for (auto& t : e) simplify_term(t, cs);
  std::map<std::pair<std::vector<OpAtom>, int>, Coeff> acc;
  for (auto& t : e) {
    if (t.coef == 0) continue;
    auto key = std::make_pair(t.word, t.param);
    acc[key] = chk_add(acc.count(key) ? acc[key] : 0, t.coef);
  }
  SymExpr out;
  for (auto& [key, c] : acc)
    if (c != 0) out.push_back({c, key.first, key.second});
  // Deterministic order: by parameter, then shorter words, then atoms.
  std::sort(out.begin(), out.end(), [](const SymTerm& a, const SymTerm& b) {
    if (a.param != b.param) return a.param < b.param;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  return out;
}

}  // namespace

SymExpr sym_apply_delta(const SymExpr& e, int j) {
  SymExpr out = e;
  for (auto& t : out) t.word.insert(t.word.begin(), OpAtom{false, j});
  return out;
}

SymExpr sym_apply_reflect(const CosetSystem& cs, const SymExpr& e, int j) {
  SymExpr out = e;
  for (auto& t : out) t.word.insert(t.word.begin(), OpAtom{true, j});
  return normalized(out, cs);
}

SymExpr sym_add(const SymExpr& a, const SymExpr& b) {
  SymExpr out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

SymExpr sym_scale(Coeff c, const SymExpr& e) {
  SymExpr out = e;
  for (auto& t : out) t.coef = chk_mul(t.coef, c);
  return out;
}

std::string sym_expr_string(const SymExpr& e, const CosetSystem& cs) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e) {
    Coeff c = t.coef;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (c != 1) os << c << "*";
    // Print maximal runs of Delta atoms as D[i,j,...].
    size_t i = 0;
    while (i < t.word.size()) {
      if (t.word[i].refl) {
        os << "s[" << t.word[i].idx << "]";
        ++i;
      } else {
        os << "D[";
        bool inner_first = true;
        while (i < t.word.size() && !t.word[i].refl) {
          if (!inner_first) os << ",";
          os << t.word[i].idx;
          inner_first = false;
          ++i;
        }
        os << "]";
      }
      os << "";
    }
    os << (t.word.empty() ? "" : "(") << "a[" << cs.rep_word(t.param) << "]"
       << (t.word.empty() ? "" : ")");
  }
  return os.str();
}

Poly sym_eval(const SymExpr& e, const CosetSystem& cs, const CharacterLattice& lat,
              const std::vector<Poly>& column, long long p) {
  Poly acc;
  for (const auto& t : e) {
    Poly v = column[t.param];
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      if (it->refl)
        v = reflect_simple(lat, it->idx, v);
      else
        v = demazure(lat, it->idx, v);
    }
    acc = acc + t.coef * v;
  }
  if (p) acc = acc.reduced_mod(p);
  return acc;
}

std::vector<Poly> FirstColumnSpace::instance(const std::vector<std::uint32_t>& lambda) const {
  if (int(lambda.size()) != dimension()) throw std::invalid_argument("lambda dimension mismatch");
  std::vector<Poly> col(cs->size());
  for (int i = 0; i < dimension(); ++i) {
    if (lambda[i] == 0) continue;
    for (int v = 0; v < cs->size(); ++v) col[v] = col[v] + Coeff(lambda[i]) * basis[i][v];
  }
  if (prime)
    for (auto& f : col) f = f.reduced_mod(prime);
  return col;
}

FirstColumnSpace first_column_space(const CosetSystem& cs, const CharacterLattice& lat,
                                    long long prime) {
  FirstColumnSpace fc;
  fc.cs = &cs;
  fc.lat = &lat;
  fc.prime = prime;

  const RootSystem& rs = cs.root_system();

  // Symbolic side: a rep is expressible when some parabolic j moves it up
  // inside W^P; then a_v = -Delta_j(a_{s_j v}) with the smallest such j.
  std::vector<int> up_via(cs.size(), -1), up_target(cs.size(), -1);
  for (int v = 0; v < cs.size(); ++v) {
    for (int j : cs.parabolic()) {
      WeylElt moved = WeylElt::simple(rs, j) * cs.rep(v);
      if (moved.length(rs) == cs.length(v) + 1 && cs.is_min_rep(moved)) {
        up_via[v] = j;
        up_target[v] = cs.rep_index(moved);
        break;
      }
    }
    if (up_via[v] < 0) fc.free_reps.push_back(v);
  }
  fc.column_sym.resize(cs.size());
  std::vector<char> done(cs.size(), 0);
  std::function<const SymExpr&(int)> expand = [&](int v) -> const SymExpr& {
    if (!done[v]) {
      if (up_via[v] < 0) {
        fc.column_sym[v] = SymExpr{{1, {}, v}};
      } else {
        fc.column_sym[v] = sym_scale(-1, sym_apply_delta(expand(up_target[v]), up_via[v]));
      }
      done[v] = 1;
    }
    return fc.column_sym[v];
  };
  for (int v = 0; v < cs.size(); ++v) expand(v);

  // Numeric side: one unknown per (rep, monomial of degree l(rep)).
  std::vector<int> offset(cs.size() + 1, 0);
  for (int v = 0; v < cs.size(); ++v)
    offset[v + 1] = offset[v] + int(lat.monomial_basis(cs.length(v)).size());
  int unknowns = offset[cs.size()];

  std::vector<std::vector<Coeff>> rows;
  for (int v = 0; v < cs.size(); ++v) {
    int lv = cs.length(v);
    if (lv == 0) continue;  // Delta of a constant is zero: no constraints
    for (int j : cs.parabolic()) {
      const auto& dm = lat.demazure_matrix(j, lv);
      WeylElt moved = WeylElt::simple(rs, j) * cs.rep(v);
      int target = -1;
      if (moved.length(rs) < lv) {
        target = cs.rep_index(moved);
        if (target < 0)
          throw std::logic_error("decreasing step left W^P; configuration unsupported");
      }
      int out_dim = int(lat.monomial_basis(lv - 1).size());
      for (int r = 0; r < out_dim; ++r) {
        std::vector<Coeff> row(unknowns, 0);
        for (int c = 0; c < int(dm[r].size()); ++c) row[offset[v] + c] = dm[r][c];
        if (target >= 0) row[offset[target] + r] = chk_add(row[offset[target] + r], 1);
        rows.push_back(std::move(row));
      }
    }
  }

  // No constraints at all (empty parabolic): the kernel is everything.
  if (rows.empty()) rows.push_back(std::vector<Coeff>(unknowns, 0));

  auto column_from = [&](auto&& flat) {
    std::vector<Poly> col(cs.size());
    for (int v = 0; v < cs.size(); ++v) {
      const auto& basis_v = lat.monomial_basis(cs.length(v));
      Poly f;
      for (int c = 0; c < int(basis_v.size()); ++c) {
        Coeff val = Coeff(flat[offset[v] + c]);
        if (val) f.add_term(basis_v[c], val);
      }
      col[v] = f;
    }
    return col;
  };

  if (prime) {
    for (auto& vec : kernel_mod_p(prime, rows)) fc.basis.push_back(column_from(vec));
  } else {
    for (auto& vec : kernel_over_z(rows)) fc.basis.push_back(column_from(vec));
  }
  return fc;
}

EndoMatrix propagate_matrix(const CosetSystem& cs, const CharacterLattice& lat,
                            const std::vector<Poly>& first_column, long long p) {
  const RootSystem& rs = cs.root_system();
  int n = cs.size();
  EndoMatrix a(n, std::vector<Poly>(n));
  std::vector<char> have(n, 0);
  for (int v = 0; v < n; ++v) a[v][0] = p ? first_column[v].reduced_mod(p) : first_column[v];
  have[0] = 1;
  for (const auto& edge : cs.hasse_edges()) {
    if (!have[edge.from]) throw std::logic_error("hasse edges out of order");
    int j = edge.j;
    std::vector<Poly> col(n);
    for (int v = 0; v < n; ++v) {
      WeylElt moved = WeylElt::simple(rs, j) * cs.rep(v);
      Poly val = demazure(lat, j, a[v][edge.from]);
      if (moved.length(rs) < cs.length(v)) {
        int sv = cs.rep_index(moved);
        if (sv < 0) throw std::logic_error("decreasing step left W^P during propagation");
        val = val + reflect_simple(lat, j, a[sv][edge.from]);
      }
      if (p) val = val.reduced_mod(p);
      col[v] = val;
    }
    if (!have[edge.to]) {
      for (int v = 0; v < n; ++v) a[v][edge.to] = col[v];
      have[edge.to] = 1;
    } else {
      for (int v = 0; v < n; ++v)
        if (a[v][edge.to] != col[v])
          throw std::logic_error("propagation disagrees across two reduced paths at column " +
                                 cs.rep_word(edge.to));
    }
  }
  // Triangularity and degree invariants.
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      const Poly& f = a[v][w];
      if (f.is_zero()) continue;
      int d = cs.length(v) - cs.length(w);
      if (d < 0) throw std::logic_error("propagated matrix is not length-lower-triangular");
      if (!f.is_homogeneous() || f.degree() != d)
        throw std::logic_error("propagated entry has wrong degree");
    }
  return a;
}

std::vector<std::vector<SymExpr>> propagate_symbolic(const FirstColumnSpace& fc) {
  const CosetSystem& cs = *fc.cs;
  const RootSystem& rs = cs.root_system();
  int n = cs.size();
  std::vector<std::vector<SymExpr>> a(n, std::vector<SymExpr>(n));
  std::vector<char> have(n, 0);
  for (int v = 0; v < n; ++v) a[v][0] = fc.column_sym[v];
  have[0] = 1;
  for (const auto& edge : cs.hasse_edges()) {
    if (have[edge.to]) continue;  // agreement is asserted numerically
    int j = edge.j;
    for (int v = 0; v < n; ++v) {
      WeylElt moved = WeylElt::simple(rs, j) * cs.rep(v);
      SymExpr val = sym_apply_delta(a[v][edge.from], j);
      if (moved.length(rs) < cs.length(v)) {
        int sv = cs.rep_index(moved);
        val = sym_add(val, sym_apply_reflect(cs, a[sv][edge.from], j));
      }
      a[v][edge.to] = normalized(val, cs);
    }
    have[edge.to] = 1;
  }
  return a;
}

EndoMatrix matrix_multiply(const EndoMatrix& a, const EndoMatrix& b, long long p) {
  int n = int(a.size());
  EndoMatrix r(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly acc;
      for (int k = 0; k < n; ++k) {
        if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
        acc = acc + a[i][k] * b[k][j];
      }
      r[i][j] = p ? acc.reduced_mod(p) : acc;
    }
  return r;
}

ModuleElement apply_matrix(const EndoMatrix& m, const ModuleElement& e, long long p) {
  ModuleElement out;
  for (const auto& [w, c] : e.coeffs)
    for (int v = 0; v < int(m.size()); ++v) {
      if (m[v][w].is_zero()) continue;
      Poly t = c * m[v][w];
      out.add(v, p ? t.reduced_mod(p) : t);
    }
  if (p) {
    ModuleElement red;
    for (auto& [v, c] : out.coeffs) red.add(v, c.reduced_mod(p));
    return red;
  }
  return out;
}

bool is_identity_matrix(const EndoMatrix& m) {
  for (int i = 0; i < int(m.size()); ++i)
    for (int j = 0; j < int(m.size()); ++j) {
      if (i == j && m[i][j] != Poly::constant(1)) return false;
      if (i != j && !m[i][j].is_zero()) return false;
    }
  return true;
}

bool is_zero_matrix(const EndoMatrix& m) {
  for (const auto& row : m)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  return true;
}

GFpMat op_word_matrix(const CharacterLattice& lat, const std::vector<OpAtom>& word, int d,
                      long long p) {
  // Apply rightmost atom first; degree drops on each Delta.
  int deg = d;
  GFpMat acc(p, int(lat.monomial_basis(d).size()), int(lat.monomial_basis(d).size()));
  for (int i = 0; i < acc.rows(); ++i) acc.set(i, i, 1);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->refl) {
      GFpMat m = GFpMat::from_int(p, lat.reflection_matrix(it->idx, deg));
      acc = m.multiplied(acc);
    } else {
      if (deg == 0) {
        // Delta of constants is zero.
        return GFpMat(p, 0, int(lat.monomial_basis(d).size()));
      }
      GFpMat m = GFpMat::from_int(p, lat.demazure_matrix(it->idx, deg));
      acc = m.multiplied(acc);
      --deg;
    }
  }
  return acc;
}

namespace {

// Reduce a set of coordinate rows to an independent basis mod p.
std::vector<std::vector<Coeff>> rref_rows(long long p, std::vector<std::vector<Coeff>> rows) {
  if (rows.empty()) return rows;
  std::vector<std::vector<Coeff>> out;
  if (p == 2) {
    GF2Mat m = GF2Mat::from_int(rows);
    m.rref();
    for (int r = 0; r < m.rows(); ++r) {
      std::vector<Coeff> row(m.cols(), 0);
      bool nz = false;
      for (int c = 0; c < m.cols(); ++c) {
        row[c] = m.get(r, c);
        nz = nz || row[c];
      }
      if (nz) out.push_back(std::move(row));
    }
  } else {
    GFpMat m = GFpMat::from_int(p, rows);
    m.rref();
    for (int r = 0; r < m.rows(); ++r) {
      std::vector<Coeff> row(m.cols(), 0);
      bool nz = false;
      for (int c = 0; c < m.cols(); ++c) {
        row[c] = m.get(r, c);
        nz = nz || row[c];
      }
      if (nz) out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace

int op_word_image_dim(const CharacterLattice& lat, const std::vector<OpAtom>& word, int d,
                      long long p) {
  int deg = d;
  // Image basis as coordinate rows in S^deg; starts as the full space
  // (implicitly) and materializes after the first application.
  std::vector<std::vector<Coeff>> basis;
  bool full_space = true;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (!it->refl && deg == 0) return 0;
    const auto& mat =
        it->refl ? lat.reflection_matrix(it->idx, deg) : lat.demazure_matrix(it->idx, deg);
    int out_dim = int(mat.size());
    if (out_dim == 0) return 0;
    std::vector<std::vector<Coeff>> next;
    if (full_space) {
      // Rows = columns of the operator matrix.
      int cols = int(mat[0].size());
      next.assign(cols, std::vector<Coeff>(out_dim, 0));
      for (int r = 0; r < out_dim; ++r)
        for (int c = 0; c < cols; ++c) next[c][r] = mat[r][c];
      full_space = false;
    } else {
      for (const auto& v : basis) {
        std::vector<Coeff> img(out_dim, 0);
        for (int r = 0; r < out_dim; ++r) {
          long long acc = 0;
          for (int c = 0; c < int(v.size()); ++c)
            if (mat[r][c] && v[c]) acc = (acc + mat[r][c] % p * v[c]) % p;
          img[r] = (acc % p + p) % p;
        }
        next.push_back(std::move(img));
      }
    }
    basis = rref_rows(p, std::move(next));
    if (basis.empty()) return 0;
    if (!it->refl) --deg;
  }
  if (full_space) return int(lat.monomial_basis(d).size());
  return int(basis.size());
}

std::vector<Poly> homogeneous_image(const CharacterLattice& lat, const std::vector<int>& word,
                                    int d, long long p) {
  if (d < int(word.size())) return {};
  std::vector<OpAtom> atoms;
  for (int j : word) atoms.push_back({false, j});
  GFpMat m = op_word_matrix(lat, atoms, d, p);
  if (m.rows() == 0) return {};
  int out_deg = d - int(word.size());
  std::vector<Poly> out;
  for (auto& row : m.column_space_rref()) {
    Poly f;
    const auto& basis = lat.monomial_basis(out_deg);
    for (int c = 0; c < int(basis.size()); ++c)
      if (row[c]) f.add_term(basis[c], Coeff(row[c]));
    out.push_back(f);
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void join(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

CongruenceReport diagonal_congruence(const CosetSystem& cs, const CharacterLattice& lat,
                                     long long p) {
  CongruenceReport rep;
  rep.prime = p;
  rep.non_simply_laced_warning = !cs.root_system().simply_laced();
  int n = cs.size();

  FirstColumnSpace fc = first_column_space(cs, lat, p);
  int dim = fc.dimension();
  rep.solution_dim = dim;

  // Propagate each basis column; collect scalar functionals for the
  // diagonal and the same-length off-diagonal entries.
  std::vector<EndoMatrix> mats;
  mats.reserve(dim);
  for (int i = 0; i < dim; ++i) mats.push_back(propagate_matrix(cs, lat, fc.basis[i], p));

  auto scalar_functional = [&](int v, int w) {
    std::vector<std::uint32_t> f(dim);
    for (int i = 0; i < dim; ++i) {
      Coeff c = mats[i][v][w].constant_term() % p;
      if (c < 0) c += p;
      f[i] = std::uint32_t(c);
    }
    return f;
  };
  auto sub = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::uint32_t((a[i] + p - b[i]) % p);
    return r;
  };

  // Same-length groups.
  std::map<int, std::vector<int>> by_length;
  for (int v = 0; v < n; ++v) by_length[cs.length(v)].push_back(v);

  // Learned functionals that vanish on every idempotent (F_2 block rule).
  std::vector<std::vector<std::uint32_t>> learned;
  auto known_zero = [&](const std::vector<std::uint32_t>& f) {
    return in_span_mod_p(p, learned, f);
  };
  if (p == 2) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [len, group] : by_length) {
        if (group.size() < 2) continue;
        for (int v : group) {
          std::vector<std::uint32_t> total(dim, 0);
          bool expressible = true, any = false;
          for (int u : group) {
            if (u == v) continue;
            auto tvu = scalar_functional(v, u);
            auto tuv = scalar_functional(u, v);
            if (known_zero(tvu) || known_zero(tuv)) continue;
            if (known_zero(sub(tvu, tuv))) {
              for (int i = 0; i < dim; ++i) total[i] = std::uint32_t((total[i] + tvu[i]) % p);
              any = true;
            } else {
              expressible = false;
              break;
            }
          }
          if (expressible && any && !known_zero(total)) {
            learned.push_back(total);
            changed = true;
          }
        }
      }
    }
  }

  // Symbolic differences per Hasse edge, with full-component image witnesses.
  auto sym = propagate_symbolic(fc);
  UnionFind uf(n);
  for (const auto& edge : cs.hasse_edges()) {
    CongruencePair pair;
    pair.rep_lo = edge.from;
    pair.rep_hi = edge.to;
    pair.edge_j = edge.j;
    SymExpr diff = sym_apply_delta(sym[edge.to][edge.from], edge.j);
    for (const auto& t : diff) {
      CongruenceSummand s;
      s.coef = t.coef;
      s.word = t.word;
      s.param = t.param;
      s.full_image_dim = op_word_image_dim(lat, t.word, cs.length(t.param), p);
      s.full_image_zero = s.full_image_dim == 0;
      pair.summands.push_back(std::move(s));
    }
    auto d = sub(scalar_functional(edge.to, edge.to), scalar_functional(edge.from, edge.from));
    bool zero = std::all_of(d.begin(), d.end(), [](std::uint32_t x) { return x == 0; });
    if (zero) {
      pair.merged = true;
      pair.merged_by = "linear";
    } else if (known_zero(d)) {
      pair.merged = true;
      pair.merged_by = "idempotent-block";
    } else {
      pair.merged = false;
    }
    if (pair.merged) uf.join(edge.from, edge.to);
    rep.pairs.push_back(std::move(pair));
  }

  // Off-diagonal congruence notes for same-length pairs.
  for (auto& [len, group] : by_length) {
    if (group.size() < 2) continue;
    for (size_t x = 0; x < group.size(); ++x)
      for (size_t y = 0; y < group.size(); ++y) {
        if (x == y) continue;
        auto t = scalar_functional(group[x], group[y]);
        OffDiagonalNote note;
        note.rep_a = group[x];
        note.rep_b = group[y];
        bool zero = std::all_of(t.begin(), t.end(), [](std::uint32_t v) { return v == 0; });
        note.status = zero               ? "zero-on-space"
                      : known_zero(t)    ? "forced-zero-for-idempotents"
                                         : "nonzero";
        rep.off_diagonal.push_back(note);
      }
  }

  // Classes and Poincare polynomials.
  std::map<int, int> class_id;
  rep.class_of.resize(n);
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    if (!class_id.count(root)) {
      class_id[root] = int(rep.classes.size());
      rep.classes.push_back({});
    }
    rep.class_of[v] = class_id[root];
    rep.classes[rep.class_of[v]].push_back(v);
  }
  for (auto& members : rep.classes) {
    std::sort(members.begin(), members.end());
    int lo = cs.length(members.front());
    int hi = cs.length(members.back());
    std::vector<Coeff> coeffs(hi - lo + 1, 0);
    for (int v : members) ++coeffs[cs.length(v) - lo];
    rep.poincare_offset.push_back(lo);
    rep.poincare.push_back(std::move(coeffs));
  }
  rep.verdict = rep.classes.size() == 1
                    ? "irreducible"
                    : "at-most-" + std::to_string(rep.classes.size()) + "-blocks";
  return rep;
}

OracleResult idempotent_oracle(const CosetSystem& cs, const CharacterLattice& lat, long long p,
                               int dim_cap) {
  OracleResult res;
  FirstColumnSpace fc = first_column_space(cs, lat, p);
  int dim = fc.dimension();
  res.required_dim = dim;
  double log_points = dim * std::log2(double(p));
  if (dim > dim_cap || log_points > 22.0) {
    res.refused = true;
    res.message = "parameter space dimension " + std::to_string(dim) + " over F_" +
                  std::to_string(p) + " exceeds the enumeration cap (" +
                  std::to_string(dim_cap) + ")";
    return res;
  }

  // Propagation is linear in the parameters and squaring is bilinear, so
  // the whole enumeration runs on flattened coefficient vectors: one basis
  // matrix per parameter and one product per parameter pair, precomputed.
  int n = cs.size();
  std::vector<std::vector<int>> offset(n, std::vector<int>(n, -1));
  int total = 0;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (cs.length(v) >= cs.length(w)) {
        offset[v][w] = total;
        total += int(lat.monomial_basis(cs.length(v) - cs.length(w)).size());
      }
  auto flatten = [&](const EndoMatrix& m) {
    std::vector<std::uint32_t> flat(total, 0);
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (m[v][w].is_zero()) continue;
        int d = cs.length(v) - cs.length(w);
        for (auto& [mono, c] : m[v][w].terms()) {
          Coeff cc = c % p;
          if (cc < 0) cc += p;
          flat[offset[v][w] + lat.monomial_index(d, mono)] = std::uint32_t(cc);
        }
      }
    return flat;
  };
  auto unflatten = [&](const std::vector<std::uint32_t>& flat) {
    EndoMatrix m(n, std::vector<Poly>(n));
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (offset[v][w] < 0) continue;
        int d = cs.length(v) - cs.length(w);
        const auto& basis = lat.monomial_basis(d);
        Poly f;
        for (int k = 0; k < int(basis.size()); ++k)
          if (flat[offset[v][w] + k]) f.add_term(basis[k], Coeff(flat[offset[v][w] + k]));
        m[v][w] = f;
      }
    return m;
  };

  std::vector<EndoMatrix> base;
  std::vector<std::vector<std::uint32_t>> flat_base;
  for (int i = 0; i < dim; ++i) {
    base.push_back(propagate_matrix(cs, lat, fc.basis[i], p));
    flat_base.push_back(flatten(base.back()));
  }
  std::vector<std::vector<std::vector<std::uint32_t>>> flat_prod(dim);
  for (int i = 0; i < dim; ++i) {
    flat_prod[i].resize(dim);
    for (int j = 0; j < dim; ++j)
      flat_prod[i][j] = flatten(matrix_multiply(base[i], base[j], p));
  }

  std::vector<std::uint32_t> lambda(dim, 0);
  std::vector<std::uint32_t> mat(total), sq(total);
  while (true) {
    std::fill(mat.begin(), mat.end(), 0);
    std::fill(sq.begin(), sq.end(), 0);
    for (int i = 0; i < dim; ++i) {
      if (!lambda[i]) continue;
      std::uint64_t li = lambda[i];
      for (int k = 0; k < total; ++k) mat[k] = std::uint32_t((mat[k] + li * flat_base[i][k]) % p);
      for (int j = 0; j < dim; ++j) {
        if (!lambda[j]) continue;
        std::uint64_t c = li * lambda[j] % p;
        if (!c) continue;
        const auto& pij = flat_prod[i][j];
        for (int k = 0; k < total; ++k) sq[k] = std::uint32_t((sq[k] + c * pij[k]) % p);
      }
    }
    if (mat == sq) {
      OracleResult::Item item;
      item.lambda = lambda;
      item.matrix = unflatten(mat);
      item.trivial = is_zero_matrix(item.matrix) || is_identity_matrix(item.matrix);
      res.idempotents.push_back(std::move(item));
    }
    int pos = 0;
    while (pos < dim) {
      if (++lambda[pos] < p) break;
      lambda[pos] = 0;
      ++pos;
    }
    if (pos == dim) break;
  }
  return res;
}

}  // namespace heckemod
