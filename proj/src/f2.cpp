#include "mss/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mss {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

// Below this many row-words per pivot the thread fork costs more than the XORs.
constexpr std::size_t kParallelWorkThreshold = 1 << 14;

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::unit(std::size_t size, std::size_t index) {
  BitVector v(size);
  v.set(index);
  return v;
}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return size_;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::vector<BitVector> rows) {
  BitMatrix m(0, cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::append_row(BitVector row) {
  if (row.size() != cols_) throw std::invalid_argument("row length differs from column count");
  rows_.push_back(std::move(row));
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r);
    }
  }
  return t;
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length differs from column count");
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].dot(v)) out.set(r);
  }
  return out;
}

bool BitMatrix::is_zero() const {
  return std::none_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.any(); });
}

BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix product shape mismatch");
  BitMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      if (lhs.get(r, k)) out.row(r) ^= rhs.row(k);
    }
  }
  return out;
}

BitVector RowReduction::reduce(BitVector v) const {
  for (std::size_t i = 0; i < rank; ++i) {
    if (v.get(pivot_columns[i])) v ^= echelon.row(i);
  }
  return v;
}

namespace {

RowReduction finish(std::vector<BitVector> rows, std::size_t cols, std::vector<std::size_t> pivots) {
  RowReduction out;
  out.rank = pivots.size();
  rows.resize(out.rank);
  out.echelon = BitMatrix::from_rows(cols, std::move(rows));

  std::vector<char> is_pivot(cols, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols);
    v.set(f);
    for (std::size_t i = 0; i < out.rank; ++i) {
      if (out.echelon.get(i, f)) v.set(pivots[i]);
    }
    out.kernel_basis.push_back(std::move(v));
  }
  out.pivot_columns = std::move(pivots);
  return out;
}

// Locates the next pivot row for column c among rows [from, n).
std::size_t find_pivot(const std::vector<BitVector>& rows, std::size_t from, std::size_t c) {
  for (std::size_t r = from; r < rows.size(); ++r) {
    if (rows[r].get(c)) return r;
  }
  return rows.size();
}

}  // namespace

RowReduction row_reduce_serial(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    const std::size_t p = find_pivot(rows, next, c);
    if (p == rows.size()) continue;
    std::swap(rows[next], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  return finish(std::move(rows), m.cols(), std::move(pivots));
}

RowReduction row_reduce(const BitMatrix& m, Exec exec) {
  const std::size_t work = m.rows() * word_count(m.cols());
  if (exec == Exec::serial || (exec == Exec::automatic && work < kParallelWorkThreshold)) {
    return row_reduce_serial(m);
  }
  std::vector<BitVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    const std::size_t p = find_pivot(rows, next, c);
    if (p == rows.size()) continue;
    std::swap(rows[next], rows[p]);
    const BitVector& pivot_row = rows[next];
    const auto skip = static_cast<std::ptrdiff_t>(next);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      if (r != skip && rows[r].get(c)) rows[r] ^= pivot_row;
    }
    pivots.push_back(c);
    ++next;
  }
  return finish(std::move(rows), m.cols(), std::move(pivots));
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank; }

int binom_mod2(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  return (k & ~n) == 0 ? 1 : 0;
}

}  // namespace mss
