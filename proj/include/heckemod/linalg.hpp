#pragma once

#include <cstdint>
#include <vector>

#include "heckemod/poly.hpp"

namespace heckemod {

// Dense matrix over F_p (p prime, p < 2^15). Row-major uint32 entries.
class GFpMat {
 public:
  GFpMat(long long p, int rows, int cols);
  static GFpMat from_int(long long p, const std::vector<std::vector<Coeff>>& m);

  long long p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint32_t get(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
  void set(int r, int c, long long v);

  GFpMat multiplied(const GFpMat& other) const;
  // In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref();
  int rank() const;
  // Basis of {x : Ax = 0}.
  std::vector<std::vector<std::uint32_t>> kernel_basis() const;
  // Reduced row-echelon basis of the column space, as coordinate rows.
  std::vector<std::vector<std::uint32_t>> column_space_rref() const;

 private:
  long long p_;
  int rows_, cols_;
  std::vector<std::uint32_t> a_;
};

// Packed F_2 matrix for the large kernel computations.
class GF2Mat {
 public:
  GF2Mat(int rows, int cols);
  static GF2Mat from_int(const std::vector<std::vector<Coeff>>& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const;
  void set(int r, int c, bool v);

  std::vector<int> rref();
  std::vector<std::vector<std::uint32_t>> kernel_basis() const;  // 0/1 entries

 private:
  int rows_, cols_, words_;
  std::vector<std::uint64_t> a_;
};

// Kernel basis of an integer matrix over F_p (dispatches to the packed
// implementation for p = 2). Rows are the constraint equations.
std::vector<std::vector<std::uint32_t>> kernel_mod_p(long long p,
                                                     const std::vector<std::vector<Coeff>>& m);

// Z-basis of {x in Z^n : Mx = 0} via row HNF of [M^T | I]. Guarded to
// moderate sizes; throws std::length_error beyond the column guard.
std::vector<std::vector<Coeff>> kernel_over_z(const std::vector<std::vector<Coeff>>& m,
                                              int col_guard = 512);

// Span membership over F_p: is v in the row span of basis?
bool in_span_mod_p(long long p, const std::vector<std::vector<std::uint32_t>>& basis,
                   const std::vector<std::uint32_t>& v);

}  // namespace heckemod
