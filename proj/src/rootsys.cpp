#include "heckemod/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace heckemod {

namespace {

// Adjacency with bond multiplicity; entry (a, b, m) puts m = <a_b, a_a^vee>
// asymmetries explicitly where needed.
struct Bond {
  int a, b;     // 1-based nodes
  int ab, ba;   // cartan[a][b], cartan[b][a]
};

std::vector<Bond> dynkin_bonds(char type, int n) {
  std::vector<Bond> bonds;
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) bonds.push_back({i, i + 1, -1, -1});
  };
  switch (type) {
    case 'A':
      if (n < 1) throw std::invalid_argument("type A requires rank >= 1");
      chain(1, n);
      break;
    case 'B':
      if (n < 2) throw std::invalid_argument("type B requires rank >= 2");
      chain(1, n - 1);
      bonds.push_back({n - 1, n, -1, -2});  // alpha_n short
      break;
    case 'C':
      if (n < 2) throw std::invalid_argument("type C requires rank >= 2");
      chain(1, n - 1);
      bonds.push_back({n - 1, n, -2, -1});  // alpha_n long
      break;
    case 'D':
      if (n < 3) throw std::invalid_argument("type D requires rank >= 3");
      chain(1, n - 2);
      bonds.push_back({n - 2, n - 1, -1, -1});
      bonds.push_back({n - 2, n, -1, -1});
      break;
    case 'E':
      if (n < 6 || n > 8) throw std::invalid_argument("type E requires rank 6..8");
      // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4.
      bonds.push_back({1, 3, -1, -1});
      bonds.push_back({2, 4, -1, -1});
      for (int i = 3; i < n; ++i) bonds.push_back({i, i + 1, -1, -1});
      break;
    case 'F':
      if (n != 4) throw std::invalid_argument("type F requires rank 4");
      bonds.push_back({1, 2, -1, -1});
      bonds.push_back({2, 3, -1, -2});  // alpha_3 short
      bonds.push_back({3, 4, -1, -1});
      break;
    case 'G':
      if (n != 2) throw std::invalid_argument("type G requires rank 2");
      bonds.push_back({1, 2, -1, -3});
      break;
    default:
      throw std::invalid_argument(std::string("unknown type '") + type + "'");
  }
  return bonds;
}

}  // namespace

RootSystem::RootSystem(char type, int rank, int rank_cap) : type_(type), rank_(rank) {
  if (rank < 1 || rank > rank_cap)
    throw std::invalid_argument("rank " + std::to_string(rank) + " outside 1.." +
                                std::to_string(rank_cap));
  if (rank > kMaxRankSupported)
    throw std::invalid_argument("rank exceeds supported maximum");
  cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) cartan_[i][i] = 2;
  for (const auto& b : dynkin_bonds(type, rank)) {
    cartan_[b.a - 1][b.b - 1] = b.ab;
    cartan_[b.b - 1][b.a - 1] = b.ba;
  }

  // Close the simple roots under the simple reflections.
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    std::vector<int> beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      std::vector<int> img = beta;
      int pair = pairing_raw(beta, i);
      img[i] -= pair;
      if (seen.insert(img).second) queue.push_back(img);
    }
  }

  std::vector<std::vector<int>> pos;
  for (const auto& r : seen) {
    bool nonneg = true;
    for (int c : r) nonneg = nonneg && c >= 0;
    if (nonneg) pos.push_back(r);
  }
  auto height = [](const std::vector<int>& r) {
    int h = 0;
    for (int c : r) h += c;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  n_pos_ = int(pos.size());
  if (int(seen.size()) != 2 * n_pos_) throw std::logic_error("root set is not symmetric");
  roots_ = pos;
  for (const auto& r : pos) {
    std::vector<int> neg = r;
    for (int& c : neg) c = -c;
    roots_.push_back(neg);
  }
  for (int idx = 0; idx < int(roots_.size()); ++idx) root_lookup_[key(roots_[idx])] = idx;
  simple_idx_.resize(rank);
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    simple_idx_[i] = root_lookup_.at(key(e));
  }
  simple_perm_.assign(rank, std::vector<int>(roots_.size()));
  for (int i = 0; i < rank; ++i)
    for (int idx = 0; idx < int(roots_.size()); ++idx) {
      std::vector<int> img = roots_[idx];
      img[i] -= pairing_raw(roots_[idx], i);
      simple_perm_[i][idx] = root_lookup_.at(key(img));
    }

  // Symmetrizer d with d_i * cartan[i][j] = d_j * cartan[j][i]; gives the
  // W-invariant form B(a_i, a_j) = d_i * cartan[i][j].
  {
    std::vector<std::pair<long long, long long>> frac(rank, {0, 1});  // num/den
    frac[0] = {1, 1};
    std::vector<int> todo{0};
    while (!todo.empty()) {
      int i = todo.back();
      todo.pop_back();
      for (int j = 0; j < rank; ++j) {
        if (i == j || cartan_[i][j] == 0 || frac[j].first != 0) continue;
        // d_j = d_i * cartan[i][j] / cartan[j][i]
        frac[j] = {frac[i].first * cartan_[i][j], frac[i].second * cartan_[j][i]};
        if (frac[j].first < 0) {
          frac[j].first = -frac[j].first;
          frac[j].second = -frac[j].second;
        }
        if (frac[j].second < 0) {
          frac[j].first = -frac[j].first;  // keep positive overall
          frac[j].second = -frac[j].second;
        }
        todo.push_back(j);
      }
    }
    long long lcm = 1;
    for (auto& [num, den] : frac) {
      if (num == 0) throw std::logic_error("disconnected Dynkin diagram");
      lcm = std::lcm(lcm, den);
    }
    symmetrizer_.resize(rank);
    for (int i = 0; i < rank; ++i) symmetrizer_[i] = frac[i].first * (lcm / frac[i].second);
  }
}

int RootSystem::root_pairing(int beta_idx, int alpha_idx) const {
  const auto& beta = roots_[beta_idx];
  const auto& alpha = roots_[alpha_idx];
  auto form = [&](const std::vector<int>& x, const std::vector<int>& y) {
    long long acc = 0;
    for (int i = 0; i < rank_; ++i) {
      long long row = 0;
      for (int j = 0; j < rank_; ++j) row += (long long)cartan_[i][j] * y[j];
      acc += symmetrizer_[i] * x[i] * row;
    }
    return acc;
  };
  long long num = 2 * form(beta, alpha);
  long long den = form(alpha, alpha);
  if (den == 0 || num % den != 0) throw std::logic_error("non-integral root pairing");
  return int(num / den);
}

int RootSystem::pairing_raw(const std::vector<int>& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += beta[j] * cartan_[i][j];
  return s;
}

int RootSystem::pairing(const std::vector<int>& beta, int i) const { return pairing_raw(beta, i); }

bool RootSystem::simply_laced() const {
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (i != j && cartan_[i][j] < -1) return false;
  return true;
}

std::uint64_t RootSystem::key(const std::vector<int>& coords) const {
  std::uint64_t k = 0;
  for (int c : coords) k = k * 131 + std::uint64_t(c + 16);
  return k;
}

int RootSystem::root_index(const std::vector<int>& coords) const {
  auto it = root_lookup_.find(key(coords));
  if (it == root_lookup_.end()) return -1;
  return it->second;
}

long long RootSystem::weyl_order() const {
  auto fact = [](int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (type_) {
    case 'A':
      return fact(rank_ + 1);
    case 'B':
    case 'C':
      return (1LL << rank_) * fact(rank_);
    case 'D':
      return (1LL << (rank_ - 1)) * fact(rank_);
    case 'E':
      if (rank_ == 6) return 51840;
      if (rank_ == 7) return 2903040;
      return 696729600;
    case 'F':
      return 1152;
    case 'G':
      return 12;
  }
  throw std::logic_error("unreachable");
}

WeylElt WeylElt::identity(const RootSystem& rs) {
  WeylElt w;
  w.perm_.resize(rs.num_roots());
  for (int i = 0; i < rs.num_roots(); ++i) w.perm_[i] = std::int16_t(i);
  return w;
}

WeylElt WeylElt::simple(const RootSystem& rs, int i) {
  WeylElt w;
  const auto& tab = rs.simple_perm(i - 1);
  w.perm_.assign(tab.begin(), tab.end());
  return w;
}

bool WeylElt::is_identity() const {
  for (int i = 0; i < int(perm_.size()); ++i)
    if (perm_[i] != i) return false;
  return true;
}

int WeylElt::length(const RootSystem& rs) const {
  int l = 0;
  for (int i = 0; i < rs.num_positive(); ++i)
    if (!rs.is_positive(perm_[i])) ++l;
  return l;
}

WeylElt WeylElt::inverse() const {
  WeylElt w;
  w.perm_.resize(perm_.size());
  for (int i = 0; i < int(perm_.size()); ++i) w.perm_[perm_[i]] = std::int16_t(i);
  return w;
}

WeylElt operator*(const WeylElt& a, const WeylElt& b) {
  WeylElt w;
  w.perm_.resize(a.perm_.size());
  for (int i = 0; i < int(a.perm_.size()); ++i) w.perm_[i] = a.perm_[b.perm_[i]];
  return w;
}

std::vector<int> WeylElt::word(const RootSystem& rs) const {
  std::vector<int> out;
  WeylElt w = *this;
  while (!w.is_identity()) {
    WeylElt winv = w.inverse();
    int descent = -1;
    for (int i = 0; i < rs.rank(); ++i) {
      if (!rs.is_positive(winv.act(rs.simple_root_index(i)))) {
        descent = i;
        break;
      }
    }
    if (descent < 0) throw std::logic_error("no left descent on a non-identity element");
    out.push_back(descent + 1);
    w = WeylElt::simple(rs, descent + 1) * w;
  }
  return out;
}

std::size_t WeylElt::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::int16_t v : perm_) {
    h ^= std::size_t(v);
    h *= 1099511628211ull;
  }
  return h;
}

std::string word_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (int j : word) s += std::to_string(j);
  return s;
}

WeylElt root_reflection(const RootSystem& rs, int root_idx) {
  std::vector<std::int16_t> perm(rs.num_roots());
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    std::vector<int> img = rs.root(idx);
    int pair = rs.root_pairing(idx, root_idx);
    const auto& alpha = rs.root(root_idx);
    for (int i = 0; i < rs.rank(); ++i) img[i] -= pair * alpha[i];
    int target = rs.root_index(img);
    if (target < 0) throw std::logic_error("reflection left the root set");
    perm[idx] = std::int16_t(target);
  }
  return WeylElt::from_perm(std::move(perm));
}

std::vector<WeylElt> enumerate_subgroup(const RootSystem& rs, const std::vector<int>& generators) {
  std::vector<WeylElt> elements;
  std::unordered_map<std::size_t, std::vector<int>> index;
  auto lookup = [&](const WeylElt& w) {
    auto it = index.find(w.hash());
    if (it != index.end())
      for (int i : it->second)
        if (elements[i] == w) return i;
    return -1;
  };
  std::deque<int> queue;
  elements.push_back(WeylElt::identity(rs));
  index[elements[0].hash()].push_back(0);
  queue.push_back(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int j : generators) {
      WeylElt next = WeylElt::simple(rs, j) * elements[cur];
      if (lookup(next) < 0) {
        elements.push_back(next);
        index[next.hash()].push_back(int(elements.size()) - 1);
        queue.push_back(int(elements.size()) - 1);
      }
    }
  }
  return elements;
}

CosetSystem::CosetSystem(const RootSystem& rs, std::vector<int> parabolic)
    : rs_(&rs), parabolic_(std::move(parabolic)) {
  std::sort(parabolic_.begin(), parabolic_.end());
  parabolic_.erase(std::unique(parabolic_.begin(), parabolic_.end()), parabolic_.end());
  for (int j : parabolic_)
    if (j < 1 || j > rs.rank())
      throw std::invalid_argument("parabolic node " + std::to_string(j) + " out of range");
  parabolic_mask_.assign(rs.rank() + 1, false);
  for (int j : parabolic_) parabolic_mask_[j] = true;
  build_reps();
  wp_elements_ = enumerate_subgroup(rs, parabolic_);
  build_double_cosets();
}

bool CosetSystem::in_parabolic(int j) const {
  return j >= 1 && j <= rs_->rank() && parabolic_mask_[j];
}

bool CosetSystem::is_min_rep(const WeylElt& w) const {
  for (int j : parabolic_)
    if (!rs_->is_positive(w.act(rs_->simple_root_index(j - 1)))) return false;
  return true;
}

WeylElt CosetSystem::min_rep(WeylElt w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : parabolic_) {
      if (!rs_->is_positive(w.act(rs_->simple_root_index(j - 1)))) {
        w = w * WeylElt::simple(*rs_, j);
        changed = true;
      }
    }
  }
  return w;
}

int CosetSystem::rep_index(const WeylElt& w) const {
  auto it = index_.find(w.hash());
  if (it == index_.end()) return -1;
  for (int i : it->second)
    if (reps_[i] == w) return i;
  return -1;
}

int CosetSystem::class_index(const WeylElt& w) const {
  int idx = rep_index(min_rep(w));
  if (idx < 0) throw std::logic_error("coset class lookup failed");
  return idx;
}

void CosetSystem::build_reps() {
  // BFS upward through the left weak order; W^P is a lower set for it.
  std::vector<WeylElt> found;
  std::unordered_map<std::size_t, std::vector<int>> lookup;
  auto find = [&](const WeylElt& w) {
    auto it = lookup.find(w.hash());
    if (it != lookup.end())
      for (int i : it->second)
        if (found[i] == w) return i;
    return -1;
  };
  found.push_back(WeylElt::identity(*rs_));
  lookup[found[0].hash()].push_back(0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int lcur = found[cur].length(*rs_);
    for (int j = 1; j <= rs_->rank(); ++j) {
      WeylElt next = WeylElt::simple(*rs_, j) * found[cur];
      if (next.length(*rs_) != lcur + 1 || !is_min_rep(next)) continue;
      if (find(next) < 0) {
        found.push_back(next);
        lookup[next.hash()].push_back(int(found.size()) - 1);
        queue.push_back(int(found.size()) - 1);
      }
    }
  }
  // Deterministic order: length, then lexicographic canonical word.
  std::vector<std::pair<std::vector<int>, int>> order;
  for (int i = 0; i < int(found.size()); ++i) order.push_back({found[i].word(*rs_), i});
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (auto& [w, i] : order) {
    reps_.push_back(found[i]);
    words_.push_back(word_string(w));
    lengths_.push_back(int(w.size()));
  }
  for (int i = 0; i < int(reps_.size()); ++i) index_[reps_[i].hash()].push_back(i);
  for (int i = 0; i < int(reps_.size()); ++i)
    for (int j = 1; j <= rs_->rank(); ++j) {
      WeylElt next = WeylElt::simple(*rs_, j) * reps_[i];
      if (next.length(*rs_) != lengths_[i] + 1) continue;
      int to = rep_index(next);
      if (to >= 0) hasse_.push_back({i, j, to});
    }
}

void CosetSystem::build_double_cosets() {
  dc_of_.assign(reps_.size(), -1);
  for (int start = 0; start < int(reps_.size()); ++start) {
    if (dc_of_[start] >= 0) continue;
    int dc = int(dc_members_.size());
    std::vector<int> block;
    std::deque<int> queue{start};
    dc_of_[start] = dc;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      block.push_back(cur);
      for (int j : parabolic_) {
        WeylElt moved = WeylElt::simple(*rs_, j) * reps_[cur];
        int cls = class_index(moved);
        if (dc_of_[cls] < 0) {
          dc_of_[cls] = dc;
          queue.push_back(cls);
        }
      }
    }
    std::sort(block.begin(), block.end());
    dc_members_.push_back(std::move(block));
  }
}

std::vector<std::vector<int>> CosetSystem::mult_table() const {
  std::vector<std::vector<int>> table(size(), std::vector<int>(size()));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) table[i][j] = class_index(reps_[i] * reps_[j]);
  return table;
}

}  // namespace heckemod
