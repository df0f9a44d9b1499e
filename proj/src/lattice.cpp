#include "heckemod/lattice.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace heckemod {

struct CharacterLattice::Cache {
  std::mutex mutex;
  std::map<int, std::vector<Mono>> mono;
  std::map<int, std::map<Mono, int>> mono_index;
  std::map<std::pair<int, int>, std::vector<std::vector<Coeff>>> dem;
  std::map<std::pair<int, int>, std::vector<std::vector<Coeff>>> refl;
};

CharacterLattice::CharacterLattice(CharacterLattice&&) noexcept = default;
CharacterLattice& CharacterLattice::operator=(CharacterLattice&&) noexcept = default;
CharacterLattice::~CharacterLattice() = default;

CharacterLattice::CharacterLattice(const RootSystem& rs, std::vector<std::string> labels,
                                   std::vector<std::vector<Coeff>> simple_root_coords,
                                   std::vector<std::vector<Coeff>> coroot_pairings)
    : rs_(&rs),
      labels_(std::move(labels)),
      coords_(std::move(simple_root_coords)),
      pairings_(std::move(coroot_pairings)),
      cache_(std::make_unique<Cache>()) {
  if (int(labels_.size()) > kMaxVars)
    throw std::invalid_argument("lattice dimension exceeds supported maximum");
  if (int(coords_.size()) != rs.rank() || int(pairings_.size()) != rs.rank())
    throw std::invalid_argument("lattice tables must cover every simple root");
  for (auto& c : coords_)
    if (int(c.size()) != dim()) throw std::invalid_argument("bad simple root coordinates");
  for (auto& p : pairings_)
    if (int(p.size()) != dim()) throw std::invalid_argument("bad coroot pairing row");
  for (int i = 0; i < rs.rank(); ++i) alphas_.push_back(Poly::linear(coords_[i]));
  refl_.resize(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) {
    refl_[i].resize(dim());
    for (int b = 0; b < dim(); ++b)
      refl_[i][b] = Poly::variable(b) - pairings_[i][b] * alphas_[i];
  }
  validate();
}

void CharacterLattice::validate() const {
  const RootSystem& rs = *rs_;
  // <alpha_j, alpha_i^vee> assembled from the tables must reproduce the
  // Cartan matrix, and every s_i must square to the identity.
  for (int i = 1; i <= rs.rank(); ++i)
    for (int j = 1; j <= rs.rank(); ++j) {
      Coeff pair = 0;
      for (int b = 0; b < dim(); ++b)
        pair = chk_add(pair, chk_mul(coords_[j - 1][b], pairings_[i - 1][b]));
      if (pair != rs.cartan(i - 1, j - 1))
        throw std::invalid_argument("lattice pairings do not reproduce the Cartan matrix at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int i = 1; i <= rs.rank(); ++i)
    for (int b = 0; b < dim(); ++b) {
      Poly twice = substitute(refl_[i - 1][b], refl_[i - 1]);
      if (twice != Poly::variable(b))
        throw std::invalid_argument("reflection s_" + std::to_string(i) +
                                    " does not square to the identity");
    }
}

Poly CharacterLattice::root_form(int root_idx) const {
  const auto& coords = rs_->root(root_idx);
  Poly f;
  for (int i = 0; i < rs_->rank(); ++i)
    if (coords[i] != 0) f = f + Coeff(coords[i]) * alphas_[i];
  return f;
}

const std::vector<Mono>& CharacterLattice::monomial_basis(int d) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->mono.find(d);
  if (it != cache_->mono.end()) return it->second;
  std::vector<Mono> basis;
  std::vector<int> exps(dim(), 0);
  // Enumerate all exponent vectors of total degree d, then sort leading-first.
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == dim() - 1) {
      exps[var] = remaining;
      Mono m = 0;
      for (int v = 0; v < dim(); ++v) m = mono_set(m, v, exps[v]);
      basis.push_back(m);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[var] = e;
      rec(var + 1, remaining - e);
    }
  };
  if (dim() == 0) throw std::logic_error("empty lattice");
  if (d >= 0) rec(0, d);
  std::sort(basis.begin(), basis.end(), [](Mono a, Mono b) { return grlex_less(b, a); });
  auto& slot = cache_->mono[d];
  slot = std::move(basis);
  auto& idx = cache_->mono_index[d];
  for (int i = 0; i < int(slot.size()); ++i) idx[slot[i]] = i;
  return slot;
}

int CharacterLattice::monomial_index(int d, Mono m) const {
  monomial_basis(d);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->mono_index.at(d).at(m);
}

const std::vector<std::vector<Coeff>>& CharacterLattice::demazure_matrix(int i, int d) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->dem.find({i, d});
    if (it != cache_->dem.end()) return it->second;
  }
  const auto& src = monomial_basis(d);
  const auto& dst = monomial_basis(d - 1);
  std::vector<std::vector<Coeff>> mat(dst.size(), std::vector<Coeff>(src.size(), 0));
  for (int col = 0; col < int(src.size()); ++col) {
    Poly f;
    f.add_term(src[col], 1);
    Poly img = demazure(*this, i, f);
    for (auto& [m, c] : img.terms()) mat[monomial_index(d - 1, m)][col] = c;
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->dem.emplace(std::make_pair(i, d), std::move(mat)).first->second;
}

const std::vector<std::vector<Coeff>>& CharacterLattice::reflection_matrix(int i, int d) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->refl.find({i, d});
    if (it != cache_->refl.end()) return it->second;
  }
  const auto& src = monomial_basis(d);
  std::vector<std::vector<Coeff>> mat(src.size(), std::vector<Coeff>(src.size(), 0));
  for (int col = 0; col < int(src.size()); ++col) {
    Poly f;
    f.add_term(src[col], 1);
    Poly img = reflect_simple(*this, i, f);
    for (auto& [m, c] : img.terms()) mat[monomial_index(d, m)][col] = c;
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->refl.emplace(std::make_pair(i, d), std::move(mat)).first->second;
}

Poly reflect_simple(const CharacterLattice& lat, int i, const Poly& f) {
  return substitute(f, lat.reflection_images(i));
}

Poly reflect(const CharacterLattice& lat, const WeylElt& w, const Poly& f) {
  // w = s_{i1} ... s_{ik} acts by w(f) = s_{i1}(s_{i2}(... s_{ik}(f))).
  auto word = w.word(lat.root_system());
  Poly g = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = reflect_simple(lat, *it, g);
  return g;
}

Poly demazure(const CharacterLattice& lat, int i, const Poly& f) {
  Poly num = f - reflect_simple(lat, i, f);
  if (num.is_zero()) return Poly();
  // lambda - s_i(lambda) is always an integer multiple of alpha_i, so the
  // division is exact; a failure here is an internal invariant violation.
  return divide_exact(num, lat.simple_root(i));
}

Poly demazure_word(const CharacterLattice& lat, const std::vector<int>& word, const Poly& f) {
  Poly g = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = demazure(lat, *it, g);
  return g;
}

CharacterLattice root_lattice(const RootSystem& rs) {
  std::vector<std::string> labels;
  std::vector<std::vector<Coeff>> coords, pairings;
  for (int i = 0; i < rs.rank(); ++i) {
    labels.push_back("a" + std::to_string(i + 1));
    std::vector<Coeff> e(rs.rank(), 0);
    e[i] = 1;
    coords.push_back(e);
  }
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<Coeff> row(rs.rank());
    for (int b = 0; b < rs.rank(); ++b) row[b] = rs.cartan(i, b);
    pairings.push_back(row);
  }
  return CharacterLattice(rs, labels, coords, pairings);
}

CharacterLattice a3_omega2_lattice(const RootSystem& rs) {
  if (rs.type() != 'A' || rs.rank() != 3)
    throw std::invalid_argument("a3-omega2 lattice requires type A rank 3");
  std::vector<std::string> labels{"a1", "a2", "w2"};
  std::vector<std::vector<Coeff>> coords{{1, 0, 0}, {0, 1, 0}, {-1, -2, 2}};
  // <a1,-> , <a2,->, <w2,-> against each alpha_i^vee.
  std::vector<std::vector<Coeff>> pairings{
      {2, -1, 0},   // alpha_1^vee
      {-1, 2, 1},   // alpha_2^vee
      {0, -1, 0},   // alpha_3^vee
  };
  return CharacterLattice(rs, labels, coords, pairings);
}

CharacterLattice d4_so8_lattice(const RootSystem& rs) {
  if (rs.type() != 'D' || rs.rank() != 4)
    throw std::invalid_argument("d4-so8 lattice requires type D rank 4");
  std::vector<std::string> labels{"a1", "a2", "a3", "w1"};
  std::vector<std::vector<Coeff>> coords{
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-2, -2, -1, 2}};
  std::vector<std::vector<Coeff>> pairings{
      {2, -1, 0, 1},   // alpha_1^vee
      {-1, 2, -1, 0},  // alpha_2^vee
      {0, -1, 2, 0},   // alpha_3^vee
      {0, -1, 0, 0},   // alpha_4^vee
  };
  return CharacterLattice(rs, labels, coords, pairings);
}

CharacterLattice d4_hspin8_lattice(const RootSystem& rs) {
  if (rs.type() != 'D' || rs.rank() != 4)
    throw std::invalid_argument("d4-hspin8 lattice requires type D rank 4");
  std::vector<std::string> labels{"a2", "a3", "a4", "w4"};
  std::vector<std::vector<Coeff>> coords{
      {-2, -1, -2, 2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  std::vector<std::vector<Coeff>> pairings{
      {-1, 0, 0, 0},   // alpha_1^vee
      {2, -1, -1, 0},  // alpha_2^vee
      {-1, 2, 0, 0},   // alpha_3^vee
      {-1, 0, 2, 1},   // alpha_4^vee
  };
  return CharacterLattice(rs, labels, coords, pairings);
}

}  // namespace heckemod
