#include "heckemod/endosolve.hpp"

#include <memory>
#include <random>

#include "doctest.h"
#include "heckemod/presets.hpp"

using namespace heckemod;

namespace {

std::vector<std::uint32_t> random_lambda(std::mt19937_64& rng, int dim, long long p) {
  std::uniform_int_distribution<long long> pick(0, p - 1);
  std::vector<std::uint32_t> l(dim);
  for (auto& v : l) v = std::uint32_t(pick(rng));
  return l;
}

ModuleElement column_of(const EndoMatrix& m, int w) {
  ModuleElement e;
  for (int v = 0; v < int(m.size()); ++v) e.add(v, m[v][w]);
  return e;
}

ModuleElement reduce(const ModuleElement& e, long long p) {
  ModuleElement out;
  for (auto& [v, c] : e.coeffs) out.add(v, c.reduced_mod(p));
  return out;
}

bool homomorphism_sound(const CosetSystem& cs, const CharacterLattice& lat, const EndoMatrix& m,
                        long long p) {
  for (int j = 1; j <= cs.root_system().rank(); ++j)
    for (int w = 0; w < cs.size(); ++w) {
      ModuleElement lhs = x_act(cs, lat, j, column_of(m, w));
      ModuleElement xiw;
      xiw.add(w, Poly::constant(1));
      ModuleElement rhs = apply_matrix(m, x_act(cs, lat, j, xiw), p);
      if (reduce(lhs, p) != reduce(rhs, p)) return false;
    }
  return true;
}

// Shared fixture per preset case.
struct Fixture {
  std::unique_ptr<RootSystem> rs;
  std::unique_ptr<CharacterLattice> lat;
  std::unique_ptr<CosetSystem> cs;
  Fixture(char t, int n, std::vector<int> par, const std::string& lattice) {
    rs = std::make_unique<RootSystem>(t, n);
    lat = std::make_unique<CharacterLattice>(make_lattice(*rs, lattice));
    cs = std::make_unique<CosetSystem>(*rs, par);
  }
};

}  // namespace

TEST_CASE("first column: projective space relations") {
  // Free data a_e and the top entry; every intermediate column entry is
  // c_{i,0} = (-1)^{n-i} D_{i+1,..,n}(c_{n,0}).
  int n = 4;
  Fixture f('A', n, {2, 3, 4}, "root");
  FirstColumnSpace fc = first_column_space(*f.cs, *f.lat, 0);
  REQUIRE(fc.free_reps == std::vector<int>{0, n});
  for (int i = 1; i < n; ++i) {
    const SymExpr& e = fc.column_sym[i];
    REQUIRE(e.size() == 1);
    CHECK(e[0].param == n);
    CHECK(e[0].coef == ((n - i) % 2 ? -1 : 1));
    std::vector<OpAtom> expect;
    for (int j = i + 1; j <= n; ++j) expect.push_back({false, j});
    CHECK(e[0].word == expect);
  }
  // Numerically: the relation holds on every solution basis vector.
  FirstColumnSpace fc2 = first_column_space(*f.cs, *f.lat, 2);
  for (const auto& col : fc2.basis)
    for (int i = 1; i < n; ++i) {
      Poly expect = col[n];
      for (int j = n; j > i; --j) expect = -1 * demazure(*f.lat, j, expect);
      CHECK(expect.reduced_mod(2) == col[i]);
    }
}

TEST_CASE("first column: Klein relations and free symbols") {
  Fixture f('A', 3, {1, 3}, "a3-omega2");
  FirstColumnSpace fc = first_column_space(*f.cs, *f.lat, 0);
  // Free data {a_e, a_132, a_2132}.
  std::vector<std::string> free_words;
  for (int v : fc.free_reps) free_words.push_back(f.cs->rep_word(v));
  CHECK(free_words == std::vector<std::string>{"e", "132", "2132"});
  CHECK(sym_expr_string(fc.column_sym[f.cs->size() - 2], *f.cs) == "a[132]");
  // a_12 = -D3(a_132), a_32 = -D1(a_132), a_2 = D[1,3](a_132).
  CHECK(sym_expr_string(fc.column_sym[2], *f.cs) == "-D[3](a[132])");
  CHECK(sym_expr_string(fc.column_sym[3], *f.cs) == "-D[1](a[132])");
  CHECK(sym_expr_string(fc.column_sym[1], *f.cs) == "D[1,3](a[132])");
  // Numeric check of the stated Corollary relations over Z.
  for (const auto& col : fc.basis) {
    CHECK(demazure(*f.lat, 3, col[4]) == -col[2]);
    CHECK(demazure(*f.lat, 1, col[4]) == -col[3]);
    CHECK(demazure(*f.lat, 1, col[2]) == -col[1]);
    CHECK(demazure(*f.lat, 3, col[3]) == -col[1]);
    CHECK(demazure(*f.lat, 1, col[1]).is_zero());
    CHECK(demazure(*f.lat, 3, col[1]).is_zero());
    CHECK(demazure(*f.lat, 1, col[5]).is_zero());
    CHECK(demazure(*f.lat, 3, col[5]).is_zero());
  }
}

TEST_CASE("first column: empty parabolic leaves every entry free") {
  Fixture f('A', 2, {}, "root");
  FirstColumnSpace fc = first_column_space(*f.cs, *f.lat, 0);
  CHECK(int(fc.free_reps.size()) == f.cs->size());
  int unknowns = 0;
  for (int v = 0; v < f.cs->size(); ++v)
    unknowns += int(f.lat->monomial_basis(f.cs->length(v)).size());
  CHECK(fc.dimension() == unknowns);
}

TEST_CASE("symbolic propagation goldens") {
  // Klein: a_{2,2} = a_e + D[2,1,3](a_132).
  Fixture klein('A', 3, {1, 3}, "a3-omega2");
  FirstColumnSpace fck = first_column_space(*klein.cs, *klein.lat, 0);
  auto symk = propagate_symbolic(fck);
  CHECK(sym_expr_string(symk[1][1], *klein.cs) == "a[e] + D[2,1,3](a[132])");

  // D4: a_{1,1} = a_e + D[1,2,3,4,2](a_top5) where top5 is the length-5 rep.
  Fixture d4('D', 4, {2, 3, 4}, "root");
  FirstColumnSpace fcd = first_column_space(*d4.cs, *d4.lat, 0);
  auto symd = propagate_symbolic(fcd);
  int top5 = -1;
  for (int v = 0; v < d4.cs->size(); ++v)
    if (d4.cs->length(v) == 5) top5 = v;
  REQUIRE(top5 >= 0);
  CHECK(sym_expr_string(symd[1][1], *d4.cs) ==
        "a[e] + D[1,2,3,4,2](a[" + d4.cs->rep_word(top5) + "])");
}

TEST_CASE("identity first column propagates to the identity matrix") {
  Fixture f('D', 4, {2, 3, 4}, "root");
  std::vector<Poly> column(f.cs->size());
  column[0] = Poly::constant(1);
  EndoMatrix m = propagate_matrix(*f.cs, *f.lat, column, 0);
  CHECK(is_identity_matrix(m));
}

TEST_CASE("propagated matrices are sound homomorphisms and compose correctly") {
  std::mt19937_64 rng(41);
  for (auto name : {"klein", "pgo8", "hspin8"}) {
    CaseConfig c = case_preset(name);
    Fixture f(c.type, c.rank, c.parabolic, c.lattice);
    FirstColumnSpace fc = first_column_space(*f.cs, *f.lat, c.prime);
    REQUIRE(fc.dimension() > 0);
    for (int iter = 0; iter < 5; ++iter) {
      auto col = fc.instance(random_lambda(rng, fc.dimension(), c.prime));
      EndoMatrix m = propagate_matrix(*f.cs, *f.lat, col, c.prime);
      CHECK(homomorphism_sound(*f.cs, *f.lat, m, c.prime));
    }
    // Composition: matrix product equals applying one matrix to the other's
    // columns through module arithmetic.
    auto a = propagate_matrix(*f.cs, *f.lat,
                              fc.instance(random_lambda(rng, fc.dimension(), c.prime)), c.prime);
    auto b = propagate_matrix(*f.cs, *f.lat,
                              fc.instance(random_lambda(rng, fc.dimension(), c.prime)), c.prime);
    EndoMatrix prod = matrix_multiply(a, b, c.prime);
    for (int w = 0; w < f.cs->size(); ++w) {
      ModuleElement direct = apply_matrix(a, column_of(b, w), c.prime);
      CHECK(reduce(direct, c.prime) == reduce(column_of(prod, w), c.prime));
    }
  }
}

TEST_CASE("diagonal congruence: A_n golden cases") {
  struct Case {
    int n;
    long long p;
    size_t classes;
  };
  for (auto c : std::vector<Case>{{1, 2, 1}, {2, 3, 1}, {3, 2, 1}, {2, 2, 3}}) {
    RootSystem rs('A', c.n);
    CharacterLattice lat = root_lattice(rs);
    std::vector<int> par;
    for (int j = 2; j <= c.n; ++j) par.push_back(j);
    CosetSystem cs(rs, par);
    CongruenceReport rep = diagonal_congruence(cs, lat, c.p);
    CHECK(rep.classes.size() == c.classes);
    if (c.classes == 1) CHECK(rep.verdict == "irreducible");
  }
}

TEST_CASE("A_n obstruction identity: the diagonal difference is b_1 + b_n") {
  // For admissible columns, Delta_i(c_{i,i-1}) equals the sum of the first
  // and last root coordinates of c_{i,i-1}.
  int n = 4;
  long long p = 5;
  Fixture f('A', n, {2, 3, 4}, "root");
  FirstColumnSpace fc = first_column_space(*f.cs, *f.lat, p);
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 10; ++iter) {
    auto col = fc.instance(random_lambda(rng, fc.dimension(), p));
    EndoMatrix m = propagate_matrix(*f.cs, *f.lat, col, p);
    for (int i = 1; i <= n; ++i) {
      Poly c_lower = m[i][i - 1];  // degree 1
      REQUIRE((c_lower.is_zero() || c_lower.degree() == 1));
      Coeff b1 = c_lower.coeff(mono_set(0, 0, 1));
      Coeff bn = c_lower.coeff(mono_set(0, n - 1, 1));
      Poly diff = m[i][i] - m[i - 1][i - 1];
      CHECK(diff.reduced_mod(p) == Poly::constant(b1 + bn).reduced_mod(p));
    }
  }
}

TEST_CASE("diagonal congruence: Klein is one class via the block rule") {
  CaseConfig c = case_preset("klein");
  Fixture f(c.type, c.rank, c.parabolic, c.lattice);
  CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 2);
  CHECK(rep.classes.size() == 1);
  CHECK(rep.verdict == "irreducible");
  // The 2 -> 12 merge needs the idempotent block rule, not plain linearity.
  bool used_block = false;
  for (auto& pr : rep.pairs) used_block = used_block || pr.merged_by == "idempotent-block";
  CHECK(used_block);
  // Off-diagonal entries at length 2 are forced to vanish for idempotents.
  bool forced = false;
  for (auto& note : rep.off_diagonal)
    forced = forced || note.status == "forced-zero-for-idempotents";
  CHECK(forced);
}

TEST_CASE("diagonal congruence: D4 trio") {
  {
    Fixture f('D', 4, {2, 3, 4}, "root");
    CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 2);
    CHECK(rep.classes.size() == 1);
    CHECK(rep.verdict == "irreducible");
  }
  {
    Fixture f('D', 4, {2, 3, 4}, "d4-so8");
    CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 2);
    CHECK(rep.verdict == "irreducible");
  }
  {
    // On the half-spin lattice a1 and a3 coincide mod 2 (coordinates and
    // coroot pairings), so D1 = D3 mod 2 in every degree and any word with
    // adjacent D1 D3 vanishes. That merges both branch diagonals with the
    // chain below them, and the verdict sharpens to irreducible.
    Fixture f('D', 4, {2, 3, 4}, "d4-hspin8");

    // The structural identity behind the merge, checked as matrices.
    for (int d = 1; d <= 5; ++d) {
      GFpMat d1 = op_word_matrix(*f.lat, {OpAtom{false, 1}}, d, 2);
      GFpMat d3 = op_word_matrix(*f.lat, {OpAtom{false, 3}}, d, 2);
      REQUIRE(d1.rows() == d3.rows());
      for (int r = 0; r < d1.rows(); ++r)
        for (int c = 0; c < d1.cols(); ++c) CHECK(d1.get(r, c) == d3.get(r, c));
    }
    std::vector<OpAtom> sep;
    for (int j : {4, 2, 1, 3, 2}) sep.push_back(OpAtom{false, j});
    GFpMat word = op_word_matrix(*f.lat, sep, 5, 2);
    for (int r = 0; r < word.rows(); ++r)
      for (int c = 0; c < word.cols(); ++c) CHECK(word.get(r, c) == 0);

    CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 2);
    CHECK(rep.classes.size() == 1);
    CHECK(rep.verdict == "irreducible");
  }
}

TEST_CASE("trivial coset system is trivially irreducible") {
  Fixture f('A', 2, {1, 2}, "root");
  CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 2);
  CHECK(rep.classes.size() == 1);
  CHECK(rep.verdict == "irreducible");
}

TEST_CASE("oracle: A2 mod 3 has only trivial idempotents") {
  Fixture f('A', 2, {2}, "root");
  OracleResult res = idempotent_oracle(*f.cs, *f.lat, 3);
  REQUIRE(!res.refused);
  REQUIRE(res.idempotents.size() >= 2);
  bool zero = false, id = false;
  for (auto& item : res.idempotents) {
    CHECK(item.trivial);
    zero = zero || is_zero_matrix(item.matrix);
    id = id || is_identity_matrix(item.matrix);
  }
  CHECK(zero);
  CHECK(id);
}

TEST_CASE("oracle refuses oversized parameter spaces") {
  Fixture f('A', 3, {1, 3}, "a3-omega2");
  OracleResult res = idempotent_oracle(*f.cs, *f.lat, 2, 4);
  CHECK(res.refused);
  CHECK(res.required_dim > 4);
  CHECK(res.message.find(std::to_string(res.required_dim)) != std::string::npos);
}

TEST_CASE("oracle results refine the congruence partition") {
  // A3 / <s2,s3> mod 3: the oracle runs to completion; every idempotent's
  // diagonal must be constant on each congruence class.
  Fixture f('A', 3, {2, 3}, "root");
  CongruenceReport rep = diagonal_congruence(*f.cs, *f.lat, 3);
  OracleResult res = idempotent_oracle(*f.cs, *f.lat, 3);
  REQUIRE(!res.refused);
  for (const auto& item : res.idempotents) {
    EndoMatrix sq = matrix_multiply(item.matrix, item.matrix, 3);
    CHECK(sq == item.matrix);
    for (const auto& cls : rep.classes) {
      Poly first = item.matrix[cls.front()][cls.front()];
      for (int v : cls) CHECK(item.matrix[v][v] == first);
    }
  }
}

TEST_CASE("homogeneous image utility edge cases") {
  RootSystem rs('A', 2);
  CharacterLattice lat = root_lattice(rs);
  CHECK(homogeneous_image(lat, {1, 2, 1}, 2, 2).empty());  // degree below word length
  auto img = homogeneous_image(lat, {1}, 1, 2);
  CHECK(img.size() == 1);
}
