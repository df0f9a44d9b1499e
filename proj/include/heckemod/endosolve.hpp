#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckemod/lattice.hpp"
#include "heckemod/linalg.hpp"
#include "heckemod/nilhecke.hpp"

namespace heckemod {

// ---- symbolic operator expressions -------------------------------------

// One operator atom: a divided difference or a simple reflection.
struct OpAtom {
  bool refl;
  int idx;  // 1-based generator
  friend bool operator==(const OpAtom& a, const OpAtom& b) {
    return a.refl == b.refl && a.idx == b.idx;
  }
  friend bool operator<(const OpAtom& a, const OpAtom& b) {
    if (a.refl != b.refl) return a.refl < b.refl;
    return a.idx < b.idx;
  }
};

// coef * (atom_1 o atom_2 o ...)(a_param), leftmost atom outermost.
struct SymTerm {
  Coeff coef;
  std::vector<OpAtom> word;
  int param;  // rep index of the first-column symbol
};
using SymExpr = std::vector<SymTerm>;

SymExpr sym_apply_delta(const SymExpr& e, int j);
SymExpr sym_apply_reflect(const CosetSystem& cs, const SymExpr& e, int j);
SymExpr sym_add(const SymExpr& a, const SymExpr& b);
SymExpr sym_scale(Coeff c, const SymExpr& e);
std::string sym_expr_string(const SymExpr& e, const CosetSystem& cs);

// Numeric evaluation of a symbolic expression against first-column values.
Poly sym_eval(const SymExpr& e, const CosetSystem& cs, const CharacterLattice& lat,
              const std::vector<Poly>& column, long long p);

// ---- first column -------------------------------------------------------

// Parametrization of the admissible first columns: symbolic relations
// (every entry in terms of the free symbols) plus a numeric basis of the
// solution space of the full linear constraint system.
struct FirstColumnSpace {
  const CosetSystem* cs = nullptr;
  const CharacterLattice* lat = nullptr;
  long long prime = 0;  // 0 = integers
  std::vector<int> free_reps;
  std::vector<SymExpr> column_sym;          // per rep
  std::vector<std::vector<Poly>> basis;     // solution-space basis, full columns
  int dimension() const { return int(basis.size()); }
  std::vector<Poly> instance(const std::vector<std::uint32_t>& lambda) const;
};

FirstColumnSpace first_column_space(const CosetSystem& cs, const CharacterLattice& lat,
                                    long long prime);

// ---- endomorphism matrices ----------------------------------------------

// a[v][w] with phi(xi_w) = sum_v a[v][w] xi_v; lower triangular by length,
// entry degrees l(v) - l(w).
using EndoMatrix = std::vector<std::vector<Poly>>;

// Column-by-column propagation along the Hasse diagram from a first column
// satisfying the constraints; agreement across all incoming edges and the
// triangularity/degree invariants are asserted. p = 0 works over Z.
EndoMatrix propagate_matrix(const CosetSystem& cs, const CharacterLattice& lat,
                            const std::vector<Poly>& first_column, long long p);

// Full symbolic matrix in terms of the free first-column symbols.
std::vector<std::vector<SymExpr>> propagate_symbolic(const FirstColumnSpace& fc);

EndoMatrix matrix_multiply(const EndoMatrix& a, const EndoMatrix& b, long long p);
ModuleElement apply_matrix(const EndoMatrix& m, const ModuleElement& e, long long p);
bool is_identity_matrix(const EndoMatrix& m);
bool is_zero_matrix(const EndoMatrix& m);

// ---- diagonal congruence analysis ----------------------------------------

struct CongruenceSummand {
  Coeff coef;
  std::vector<OpAtom> word;
  int param;
  bool full_image_zero;  // word image on the whole degree component vanishes mod p
  int full_image_dim;
};

struct CongruencePair {
  int rep_lo, rep_hi;  // Hasse-adjacent diagonal pair
  int edge_j;
  std::vector<CongruenceSummand> summands;
  bool merged;
  std::string merged_by;  // "linear" | "idempotent-block" | ""
};

struct OffDiagonalNote {
  int rep_a, rep_b;  // same length, a != b
  std::string status;  // "zero-on-space" | "forced-zero-for-idempotents" | "nonzero"
};

struct CongruenceReport {
  long long prime = 2;
  int solution_dim = 0;
  std::vector<int> class_of;               // rep -> class id
  std::vector<std::vector<int>> classes;   // class id -> sorted members
  std::vector<int> poincare_offset;        // min length per class
  std::vector<std::vector<Coeff>> poincare;  // coefficients from t^offset
  std::string verdict;                     // "irreducible" | "at-most-K-blocks"
  std::vector<CongruencePair> pairs;
  std::vector<OffDiagonalNote> off_diagonal;
  bool non_simply_laced_warning = false;
};

CongruenceReport diagonal_congruence(const CosetSystem& cs, const CharacterLattice& lat,
                                     long long p);

// ---- brute-force idempotent oracle ---------------------------------------

struct OracleResult {
  bool refused = false;
  int required_dim = 0;
  std::string message;
  struct Item {
    std::vector<std::uint32_t> lambda;
    EndoMatrix matrix;
    bool trivial;
  };
  std::vector<Item> idempotents;
};

OracleResult idempotent_oracle(const CosetSystem& cs, const CharacterLattice& lat, long long p,
                               int dim_cap = 22);

// Matrix of a mixed Delta/reflection word on S^d mod p (word applied
// rightmost first); and the echelonized image basis of a Demazure word.
GFpMat op_word_matrix(const CharacterLattice& lat, const std::vector<OpAtom>& word, int d,
                      long long p);
std::vector<Poly> homogeneous_image(const CharacterLattice& lat, const std::vector<int>& word,
                                    int d, long long p);
// Dimension of the image of the composite word on S^d mod p, computed by
// chaining a shrinking image basis instead of composing full matrices.
int op_word_image_dim(const CharacterLattice& lat, const std::vector<OpAtom>& word, int d,
                      long long p);

}  // namespace heckemod
