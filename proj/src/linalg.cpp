#include "heckemod/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace heckemod {

namespace {

std::uint32_t inv_mod(std::uint32_t a, long long p) {
  // Fermat; p is prime and small.
  long long base = a % p, acc = 1, e = p - 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return std::uint32_t(acc);
}

}  // namespace

GFpMat::GFpMat(long long p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  if (p < 2 || p >= (1 << 15)) throw std::invalid_argument("prime out of supported range");
  a_.assign(size_t(rows) * cols, 0);
}

GFpMat GFpMat::from_int(long long p, const std::vector<std::vector<Coeff>>& m) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  GFpMat r(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.set(i, j, m[i][j]);
  return r;
}

void GFpMat::set(int r, int c, long long v) {
  long long vv = v % p_;
  if (vv < 0) vv += p_;
  a_[size_t(r) * cols_ + c] = std::uint32_t(vv);
}

GFpMat GFpMat::multiplied(const GFpMat& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
  GFpMat r(p_, rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      std::uint64_t v = get(i, k);
      if (!v) continue;
      for (int j = 0; j < other.cols_; ++j) {
        std::uint64_t acc = r.a_[size_t(i) * other.cols_ + j] + v * other.get(k, j);
        r.a_[size_t(i) * other.cols_ + j] = std::uint32_t(acc % p_);
      }
    }
  return r;
}

std::vector<int> GFpMat::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int pivot = -1;
    for (int r = row; r < rows_; ++r)
      if (get(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < cols_; ++j) std::swap(a_[size_t(pivot) * cols_ + j], a_[size_t(row) * cols_ + j]);
    std::uint64_t inv = inv_mod(get(row, col), p_);
    for (int j = 0; j < cols_; ++j)
      a_[size_t(row) * cols_ + j] = std::uint32_t(a_[size_t(row) * cols_ + j] * inv % p_);
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      std::uint64_t f = get(r, col);
      if (!f) continue;
      for (int j = 0; j < cols_; ++j) {
        std::uint64_t v = a_[size_t(r) * cols_ + j] + (p_ - 1) * f % p_ * a_[size_t(row) * cols_ + j];
        a_[size_t(r) * cols_ + j] = std::uint32_t(v % p_);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int GFpMat::rank() const {
  GFpMat copy = *this;
  return int(copy.rref().size());
}

std::vector<std::vector<std::uint32_t>> GFpMat::kernel_basis() const {
  GFpMat copy = *this;
  std::vector<int> pivots = copy.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[free] = 1;
    for (int r = 0; r < int(pivots.size()); ++r) {
      std::uint64_t val = copy.get(r, free);
      if (val) v[pivots[r]] = std::uint32_t((p_ - val) % p_);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<std::uint32_t>> GFpMat::column_space_rref() const {
  // Transpose, then RREF rows.
  GFpMat t(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
  t.rref();
  std::vector<std::vector<std::uint32_t>> basis;
  for (int r = 0; r < t.rows(); ++r) {
    std::vector<std::uint32_t> row(t.cols());
    bool nonzero = false;
    for (int c = 0; c < t.cols(); ++c) {
      row[c] = t.get(r, c);
      nonzero = nonzero || row[c];
    }
    if (nonzero) basis.push_back(std::move(row));
  }
  return basis;
}

GF2Mat::GF2Mat(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), a_(size_t(rows) * words_, 0) {}

GF2Mat GF2Mat::from_int(const std::vector<std::vector<Coeff>>& m) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  GF2Mat r(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.set(i, j, (m[i][j] & 1) != 0);
  return r;
}

bool GF2Mat::get(int r, int c) const { return (a_[size_t(r) * words_ + c / 64] >> (c % 64)) & 1; }

void GF2Mat::set(int r, int c, bool v) {
  std::uint64_t mask = std::uint64_t(1) << (c % 64);
  if (v)
    a_[size_t(r) * words_ + c / 64] |= mask;
  else
    a_[size_t(r) * words_ + c / 64] &= ~mask;
}

std::vector<int> GF2Mat::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int pivot = -1;
    for (int r = row; r < rows_; ++r)
      if (get(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int w = 0; w < words_; ++w) std::swap(a_[size_t(pivot) * words_ + w], a_[size_t(row) * words_ + w]);
    for (int r = 0; r < rows_; ++r) {
      if (r != row && get(r, col)) {
        std::uint64_t* dst = &a_[size_t(r) * words_];
        const std::uint64_t* src = &a_[size_t(row) * words_];
        for (int w = 0; w < words_; ++w) dst[w] ^= src[w];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<std::uint32_t>> GF2Mat::kernel_basis() const {
  GF2Mat copy = *this;
  std::vector<int> pivots = copy.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[free] = 1;
    for (int r = 0; r < int(pivots.size()); ++r)
      if (copy.get(r, free)) v[pivots[r]] = 1;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<std::uint32_t>> kernel_mod_p(long long p,
                                                     const std::vector<std::vector<Coeff>>& m) {
  if (p == 2) return GF2Mat::from_int(m).kernel_basis();
  return GFpMat::from_int(p, m).kernel_basis();
}

std::vector<std::vector<Coeff>> kernel_over_z(const std::vector<std::vector<Coeff>>& m,
                                              int col_guard) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  if (cols > col_guard)
    throw std::length_error("integer nullspace computation capped at " +
                            std::to_string(col_guard) + " unknowns");
  // Row HNF of [M^T | I]: rows of the identity block aligned with zero rows
  // of HNF(M^T) form a Z-basis of ker(M). Uses 128-bit intermediates.
  int n = cols;      // rows of M^T
  int k = rows;      // cols of M^T
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(k + n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = m[j][i];
    a[i][k + i] = 1;
  }
  auto check = [](const __int128& v) {
    constexpr __int128 lim = (__int128(1) << 100);
    if (v > lim || v < -lim) throw std::overflow_error("HNF intermediate overflow");
  };
  int row = 0;
  for (int col = 0; col < k && row < n; ++col) {
    // Euclidean reduction within the column.
    while (true) {
      int pivot = -1;
      __int128 best = 0;
      for (int r = row; r < n; ++r) {
        __int128 v = a[r][col] < 0 ? -a[r][col] : a[r][col];
        if (v != 0 && (pivot < 0 || v < best)) {
          pivot = r;
          best = v;
        }
      }
      if (pivot < 0) break;
      std::swap(a[pivot], a[row]);
      bool cleared = true;
      for (int r = row + 1; r < n; ++r) {
        if (a[r][col] == 0) continue;
        __int128 q = a[r][col] / a[row][col];
        for (int c = 0; c < k + n; ++c) {
          a[r][c] -= q * a[row][c];
          check(a[r][c]);
        }
        if (a[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (a[row][col] != 0) {
      if (a[row][col] < 0)
        for (int c = 0; c < k + n; ++c) a[row][c] = -a[row][c];
      ++row;
    }
  }
  std::vector<std::vector<Coeff>> basis;
  for (int r = row; r < n; ++r) {
    // The M^T block of this row must be zero.
    for (int c = 0; c < k; ++c)
      if (a[r][c] != 0) throw std::logic_error("HNF kernel extraction failed");
    std::vector<Coeff> v(n);
    for (int c = 0; c < n; ++c) {
      __int128 val = a[r][k + c];
      if (val > std::numeric_limits<Coeff>::max() || val < std::numeric_limits<Coeff>::min())
        throw std::overflow_error("kernel vector overflow");
      v[c] = Coeff(val);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span_mod_p(long long p, const std::vector<std::vector<std::uint32_t>>& basis,
                   const std::vector<std::uint32_t>& v) {
  if (basis.empty()) {
    for (auto x : v)
      if (x % p) return false;
    return true;
  }
  int cols = int(v.size());
  GFpMat base(p, int(basis.size()), cols);
  GFpMat with(p, int(basis.size()) + 1, cols);
  for (int i = 0; i < int(basis.size()); ++i)
    for (int j = 0; j < cols; ++j) {
      base.set(i, j, basis[i][j]);
      with.set(i, j, basis[i][j]);
    }
  for (int j = 0; j < cols; ++j) with.set(int(basis.size()), j, v[j]);
  return with.rank() == base.rank();
}

}  // namespace heckemod
