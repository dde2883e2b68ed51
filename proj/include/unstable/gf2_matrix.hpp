#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unstable {

// Dense bit vector over GF(2).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }
  void xor_with(const BitVec& o);
  bool any() const;
  size_t count() const;
  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Dense bit-packed matrix over GF(2), row-major.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(size_t rows, size_t cols)
      : r_(rows), c_(cols), w_((cols + 63) / 64), d_(rows * ((cols + 63) / 64), 0) {}

  static GF2Matrix identity(size_t n);
  static GF2Matrix from_columns(const std::vector<BitVec>& cols, size_t rows);
  static GF2Matrix from_rows(const std::vector<BitVec>& rows, size_t cols);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  size_t words_per_row() const { return w_; }

  bool get(size_t r, size_t c) const { return (d_[r * w_ + (c >> 6)] >> (c & 63)) & 1; }
  void set(size_t r, size_t c, bool v) {
    uint64_t mask = uint64_t(1) << (c & 63);
    if (v)
      d_[r * w_ + (c >> 6)] |= mask;
    else
      d_[r * w_ + (c >> 6)] &= ~mask;
  }
  void flip(size_t r, size_t c) { d_[r * w_ + (c >> 6)] ^= uint64_t(1) << (c & 63); }

  const uint64_t* row_ptr(size_t r) const { return d_.data() + r * w_; }
  uint64_t* row_ptr(size_t r) { return d_.data() + r * w_; }
  void xor_row_from(size_t dst, size_t src);
  void swap_rows(size_t a, size_t b);

  bool is_zero() const;
  GF2Matrix operator*(const GF2Matrix& o) const;
  GF2Matrix operator+(const GF2Matrix& o) const;
  bool operator==(const GF2Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
  GF2Matrix transposed() const;

  BitVec apply(const BitVec& v) const;  // matrix * column vector
  BitVec row(size_t r) const;
  BitVec column(size_t c) const;
  void set_column(size_t c, const BitVec& v);

  size_t rank() const;
  // Basis of {x : A x = 0}.
  std::vector<BitVec> kernel_basis() const;
  // Canonical reduced row echelon form with zero rows dropped.
  GF2Matrix row_space_canonical() const;

  static GF2Matrix hstack(const GF2Matrix& a, const GF2Matrix& b);
  static GF2Matrix vstack(const GF2Matrix& a, const GF2Matrix& b);

  std::vector<std::string> to_hex_rows() const;
  static GF2Matrix from_hex_rows(size_t rows, size_t cols, const std::vector<std::string>& hex);

 private:
  size_t r_ = 0, c_ = 0, w_ = 0;
  std::vector<uint64_t> d_;
};

// Row reduction of a matrix with the transform recorded, for repeated solves.
class Echelon {
 public:
  explicit Echelon(const GF2Matrix& a);

  size_t rank() const { return pivots_.size(); }
  const std::vector<int>& pivot_cols() const { return pivots_; }
  // Solve A x = rhs; free variables are set to zero.
  std::optional<BitVec> solve(const BitVec& rhs) const;
  std::vector<BitVec> kernel_basis() const;

 private:
  GF2Matrix rref_;
  GF2Matrix ops_;
  std::vector<int> pivots_;
};

// Intersection of two column spans, returned as a canonical row-space basis
// of dimension-many vectors (each of length rows).
std::vector<BitVec> column_span_intersection(const GF2Matrix& a, const GF2Matrix& b);

}  // namespace unstable
