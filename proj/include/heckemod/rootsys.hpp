#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace heckemod {

// Cartan datum and the full (finite) root set of a simple type, in
// simple-root coordinates. Weyl elements are canonicalized by their
// permutation action on the roots; reduced words are recovered on demand.
class RootSystem {
 public:
  static constexpr int kMaxRankSupported = 8;

  // cartan(i, j) = <alpha_j, alpha_i^vee>, 1-based node labels stored 0-based.
  RootSystem(char type, int rank, int rank_cap = 8);

  char type() const { return type_; }
  int rank() const { return rank_; }
  int cartan(int i, int j) const { return cartan_[i][j]; }
  bool adjacent(int i, int j) const { return i != j && cartan_[i][j] != 0; }
  bool simply_laced() const;

  int num_positive() const { return n_pos_; }
  int num_roots() const { return 2 * n_pos_; }
  // Roots 0..n_pos-1 are positive (sorted by height then lex coordinates);
  // root n_pos + k is the negative of root k.
  const std::vector<int>& root(int idx) const { return roots_[idx]; }
  bool is_positive(int idx) const { return idx < n_pos_; }
  int negate(int idx) const { return idx < n_pos_ ? idx + n_pos_ : idx - n_pos_; }
  int simple_root_index(int i) const { return simple_idx_[i]; }
  int root_index(const std::vector<int>& coords) const;
  // <beta, alpha_i^vee> for a root given by coordinates.
  int pairing(const std::vector<int>& beta, int i) const;
  // <beta, alpha^vee> for arbitrary roots, via the W-invariant form.
  int root_pairing(int beta_idx, int alpha_idx) const;
  // Action table of s_i on root indices.
  const std::vector<int>& simple_perm(int i) const { return simple_perm_[i]; }

  // |W| by the standard closed form for this type.
  long long weyl_order() const;

 private:
  char type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> roots_;
  std::vector<int> simple_idx_;
  std::vector<std::vector<int>> simple_perm_;
  std::unordered_map<std::uint64_t, int> root_lookup_;
  std::vector<long long> symmetrizer_;
  int n_pos_ = 0;

  int pairing_raw(const std::vector<int>& beta, int i) const;
  std::uint64_t key(const std::vector<int>& coords) const;
};

// A Weyl group element as the permutation it induces on all roots.
// Two elements are equal iff the permutations agree.
class WeylElt {
 public:
  WeylElt() = default;
  static WeylElt identity(const RootSystem& rs);
  static WeylElt simple(const RootSystem& rs, int i);
  static WeylElt from_perm(std::vector<std::int16_t> perm) {
    WeylElt w;
    w.perm_ = std::move(perm);
    return w;
  }

  bool is_identity() const;
  int act(int root_idx) const { return perm_[root_idx]; }
  int length(const RootSystem& rs) const;
  WeylElt inverse() const;
  // Lexicographically minimal reduced word (greedy smallest left descent),
  // 1-based generator indices.
  std::vector<int> word(const RootSystem& rs) const;

  friend WeylElt operator*(const WeylElt& a, const WeylElt& b);  // (a*b)(x) = a(b(x))
  friend bool operator==(const WeylElt& a, const WeylElt& b) { return a.perm_ == b.perm_; }
  friend bool operator!=(const WeylElt& a, const WeylElt& b) { return !(a == b); }

  const std::vector<std::int16_t>& perm() const { return perm_; }
  std::size_t hash() const;

 private:
  std::vector<std::int16_t> perm_;
};

std::string word_string(const std::vector<int>& word);

// Reflection in an arbitrary root, as a Weyl element.
WeylElt root_reflection(const RootSystem& rs, int root_idx);

// Enumerate the subgroup generated by the given simple reflections (BFS).
std::vector<WeylElt> enumerate_subgroup(const RootSystem& rs, const std::vector<int>& generators);

// Minimal coset representatives W^P with weak-Bruhat structure and the
// W_P-double-coset partition.
class CosetSystem {
 public:
  struct Edge {
    int from;
    int j;  // 1-based generator
    int to;
  };

  CosetSystem(const RootSystem& rs, std::vector<int> parabolic);

  const RootSystem& root_system() const { return *rs_; }
  const std::vector<int>& parabolic() const { return parabolic_; }
  bool in_parabolic(int j) const;

  int size() const { return int(reps_.size()); }
  const WeylElt& rep(int idx) const { return reps_[idx]; }
  const std::string& rep_word(int idx) const { return words_[idx]; }
  int length(int idx) const { return lengths_[idx]; }
  int max_length() const { return lengths_.empty() ? 0 : lengths_.back(); }
  const std::vector<Edge>& hasse_edges() const { return hasse_; }

  bool is_min_rep(const WeylElt& w) const;
  WeylElt min_rep(WeylElt w) const;            // strip right P-descents
  int class_index(const WeylElt& w) const;     // index of min_rep(w) in reps
  int rep_index(const WeylElt& w) const;       // exact lookup, -1 if absent

  int num_double_cosets() const { return int(dc_members_.size()); }
  int double_coset_of(int rep_idx) const { return dc_of_[rep_idx]; }
  const std::vector<int>& double_coset_members(int dc) const { return dc_members_[dc]; }
  int double_coset_min_rep(int dc) const { return dc_members_[dc].front(); }

  const std::vector<WeylElt>& parabolic_elements() const { return wp_elements_; }

  // T[i][j] = class index of reps[i] * reps[j].
  std::vector<std::vector<int>> mult_table() const;

 private:
  const RootSystem* rs_;
  std::vector<int> parabolic_;
  std::vector<bool> parabolic_mask_;
  std::vector<WeylElt> reps_;
  std::vector<std::string> words_;
  std::vector<int> lengths_;
  std::vector<Edge> hasse_;
  std::vector<int> dc_of_;
  std::vector<std::vector<int>> dc_members_;
  std::vector<WeylElt> wp_elements_;
  std::unordered_map<std::size_t, std::vector<int>> index_;

  void build_reps();
  void build_double_cosets();
};

}  // namespace heckemod
