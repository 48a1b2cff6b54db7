#pragma once

// Linear algebra over the two-element field on packed 64-bit rows.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mss/exec.hpp"

namespace mss {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector unit(std::size_t size, std::size_t index);
  static BitVector from_string(const std::string& bits);  // "0110" -> bits 0..3

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  bool any() const;
  bool none() const { return !any(); }
  std::size_t popcount() const;
  // Index of the lowest set bit, or size() if none.
  std::size_t first_set() const;
  bool dot(const BitVector& other) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix from_rows(std::size_t cols, std::vector<BitVector> rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const BitVector& row(std::size_t i) const { return rows_[i]; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVector>& row_list() const { return rows_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }
  void append_row(BitVector row);

  BitVector column(std::size_t c) const;
  BitMatrix transpose() const;
  // this * v, with v indexed by columns.
  BitVector apply(const BitVector& v) const;
  bool is_zero() const;

  friend BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

struct RowReduction {
  std::size_t rank = 0;
  // pivot_columns[i] is the pivot of echelon row i; strictly increasing.
  std::vector<std::size_t> pivot_columns;
  // Basis of {v : m v = 0}, one vector per non-pivot column, in column order.
  std::vector<BitVector> kernel_basis;
  // Reduced row echelon form; only the first `rank` rows are kept.
  BitMatrix echelon;

  // Eliminates the pivot coordinates of v using the echelon rows.
  BitVector reduce(BitVector v) const;
  bool in_row_space(const BitVector& v) const { return reduce(v).none(); }
};

// Gauss-Jordan elimination with leftmost-column, first-available-row pivoting.
// Both entry points produce identical results; the parallel one distributes the
// per-pivot row updates across threads.
RowReduction row_reduce(const BitMatrix& m, Exec exec = Exec::automatic);
RowReduction row_reduce_serial(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// C(n, k) mod 2 by Lucas: odd iff the binary digits of k are dominated by n's.
int binom_mod2(std::uint64_t n, std::uint64_t k);

}  // namespace mss
