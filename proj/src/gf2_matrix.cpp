#include "unstable/gf2_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace unstable {

void BitVec::xor_with(const BitVec& o) {
  assert(n_ == o.n_);
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
}

bool BitVec::any() const {
  for (uint64_t x : w_)
    if (x) return true;
  return false;
}

size_t BitVec::count() const {
  size_t c = 0;
  for (uint64_t x : w_) c += std::popcount(x);
  return c;
}

GF2Matrix GF2Matrix::identity(size_t n) {
  GF2Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

GF2Matrix GF2Matrix::from_columns(const std::vector<BitVec>& cols, size_t rows) {
  GF2Matrix m(rows, cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    assert(cols[c].size() == rows);
    for (size_t r = 0; r < rows; ++r)
      if (cols[c].get(r)) m.set(r, c, true);
  }
  return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<BitVec>& rows, size_t cols) {
  GF2Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    assert(rows[r].size() == cols);
    std::copy(rows[r].words().begin(), rows[r].words().end(), m.row_ptr(r));
  }
  return m;
}

void GF2Matrix::xor_row_from(size_t dst, size_t src) {
  uint64_t* d = row_ptr(dst);
  const uint64_t* s = row_ptr(src);
  for (size_t i = 0; i < w_; ++i) d[i] ^= s[i];
}

void GF2Matrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  std::swap_ranges(row_ptr(a), row_ptr(a) + w_, row_ptr(b));
}

bool GF2Matrix::is_zero() const {
  for (uint64_t x : d_)
    if (x) return false;
  return true;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("GF2Matrix*: shape mismatch");
  GF2Matrix out(r_, o.c_);
  for (size_t i = 0; i < r_; ++i) {
    uint64_t* dst = out.row_ptr(i);
    const uint64_t* a = row_ptr(i);
    for (size_t k = 0; k < c_; ++k) {
      if ((a[k >> 6] >> (k & 63)) & 1) {
        const uint64_t* b = o.row_ptr(k);
        for (size_t t = 0; t < o.w_; ++t) dst[t] ^= b[t];
      }
    }
  }
  return out;
}

GF2Matrix GF2Matrix::operator+(const GF2Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("GF2Matrix+: shape mismatch");
  GF2Matrix out = *this;
  for (size_t i = 0; i < d_.size(); ++i) out.d_[i] ^= o.d_[i];
  return out;
}

GF2Matrix GF2Matrix::transposed() const {
  GF2Matrix out(c_, r_);
  for (size_t i = 0; i < r_; ++i) {
    const uint64_t* a = row_ptr(i);
    for (size_t wi = 0; wi < w_; ++wi) {
      uint64_t word = a[wi];
      while (word) {
        int b = std::countr_zero(word);
        word &= word - 1;
        out.set(wi * 64 + b, i, true);
      }
    }
  }
  return out;
}

BitVec GF2Matrix::apply(const BitVec& v) const {
  assert(v.size() == c_);
  BitVec out(r_);
  for (size_t i = 0; i < r_; ++i) {
    const uint64_t* a = row_ptr(i);
    uint64_t acc = 0;
    for (size_t t = 0; t < w_; ++t) acc ^= a[t] & v.words()[t];
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

BitVec GF2Matrix::row(size_t r) const {
  BitVec v(c_);
  std::copy(row_ptr(r), row_ptr(r) + w_, v.words().begin());
  return v;
}

BitVec GF2Matrix::column(size_t c) const {
  BitVec v(r_);
  for (size_t i = 0; i < r_; ++i)
    if (get(i, c)) v.set(i, true);
  return v;
}

void GF2Matrix::set_column(size_t c, const BitVec& v) {
  assert(v.size() == r_);
  for (size_t i = 0; i < r_; ++i) set(i, c, v.get(i));
}

size_t GF2Matrix::rank() const {
  GF2Matrix m = *this;
  size_t rank = 0;
  for (size_t col = 0; col < c_ && rank < r_; ++col) {
    size_t piv = rank;
    while (piv < r_ && !m.get(piv, col)) ++piv;
    if (piv == r_) continue;
    m.swap_rows(rank, piv);
    for (size_t i = rank + 1; i < r_; ++i)
      if (m.get(i, col)) m.xor_row_from(i, rank);
    ++rank;
  }
  return rank;
}

std::vector<BitVec> GF2Matrix::kernel_basis() const { return Echelon(*this).kernel_basis(); }

GF2Matrix GF2Matrix::row_space_canonical() const {
  Echelon e(*this);
  GF2Matrix out(e.rank(), c_);
  // Echelon keeps pivot rows first in its rref; rebuild from solves of unit
  // pivot columns is wasteful, so reduce directly here instead.
  GF2Matrix m = *this;
  size_t rank = 0;
  for (size_t col = 0; col < c_ && rank < r_; ++col) {
    size_t piv = rank;
    while (piv < r_ && !m.get(piv, col)) ++piv;
    if (piv == r_) continue;
    m.swap_rows(rank, piv);
    for (size_t i = 0; i < r_; ++i)
      if (i != rank && m.get(i, col)) m.xor_row_from(i, rank);
    ++rank;
  }
  for (size_t i = 0; i < rank; ++i)
    std::copy(m.row_ptr(i), m.row_ptr(i) + w_, out.row_ptr(i));
  return out;
}

GF2Matrix GF2Matrix::hstack(const GF2Matrix& a, const GF2Matrix& b) {
  assert(a.rows() == b.rows());
  GF2Matrix out(a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t c = 0; c < a.cols(); ++c)
      if (a.get(i, c)) out.set(i, c, true);
    for (size_t c = 0; c < b.cols(); ++c)
      if (b.get(i, c)) out.set(i, a.cols() + c, true);
  }
  return out;
}

GF2Matrix GF2Matrix::vstack(const GF2Matrix& a, const GF2Matrix& b) {
  assert(a.cols() == b.cols());
  GF2Matrix out(a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    std::copy(a.row_ptr(i), a.row_ptr(i) + a.words_per_row(), out.row_ptr(i));
  for (size_t i = 0; i < b.rows(); ++i)
    std::copy(b.row_ptr(i), b.row_ptr(i) + b.words_per_row(), out.row_ptr(a.rows() + i));
  return out;
}

std::vector<std::string> GF2Matrix::to_hex_rows() const {
  static const char* digits = "0123456789abcdef";
  std::vector<std::string> out;
  out.reserve(r_);
  for (size_t i = 0; i < r_; ++i) {
    std::string s;
    s.reserve(w_ * 16);
    const uint64_t* a = row_ptr(i);
    for (size_t t = 0; t < w_; ++t)
      for (int nib = 0; nib < 16; ++nib) s.push_back(digits[(a[t] >> (4 * nib)) & 0xf]);
    out.push_back(std::move(s));
  }
  return out;
}

GF2Matrix GF2Matrix::from_hex_rows(size_t rows, size_t cols, const std::vector<std::string>& hex) {
  GF2Matrix m(rows, cols);
  if (hex.size() != rows) throw std::invalid_argument("from_hex_rows: row count mismatch");
  for (size_t i = 0; i < rows; ++i) {
    const std::string& s = hex[i];
    if (s.size() != m.w_ * 16) throw std::invalid_argument("from_hex_rows: bad row length");
    uint64_t* a = m.row_ptr(i);
    for (size_t t = 0; t < m.w_; ++t) {
      uint64_t word = 0;
      for (int nib = 15; nib >= 0; --nib) {
        char c = s[t * 16 + nib];
        uint64_t v = (c >= 'a') ? (c - 'a' + 10) : (c - '0');
        word = (word << 4) | v;
      }
      a[t] = word;
    }
  }
  return m;
}

Echelon::Echelon(const GF2Matrix& a) : rref_(a), ops_(GF2Matrix::identity(a.rows())) {
  size_t rank = 0;
  const size_t rows = a.rows(), cols = a.cols();
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && !rref_.get(piv, col)) ++piv;
    if (piv == rows) continue;
    rref_.swap_rows(rank, piv);
    ops_.swap_rows(rank, piv);
    for (size_t i = 0; i < rows; ++i) {
      if (i != rank && rref_.get(i, col)) {
        rref_.xor_row_from(i, rank);
        ops_.xor_row_from(i, rank);
      }
    }
    pivots_.push_back(static_cast<int>(col));
    ++rank;
  }
}

std::optional<BitVec> Echelon::solve(const BitVec& rhs) const {
  BitVec y = ops_.apply(rhs);
  for (size_t i = pivots_.size(); i < rref_.rows(); ++i)
    if (y.get(i)) return std::nullopt;
  BitVec x(rref_.cols());
  for (size_t t = 0; t < pivots_.size(); ++t)
    if (y.get(t)) x.set(pivots_[t], true);
  return x;
}

std::vector<BitVec> Echelon::kernel_basis() const {
  std::vector<BitVec> out;
  std::vector<char> is_pivot(rref_.cols(), 0);
  for (int p : pivots_) is_pivot[p] = 1;
  for (size_t f = 0; f < rref_.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(rref_.cols());
    v.set(f, true);
    for (size_t t = 0; t < pivots_.size(); ++t)
      if (rref_.get(t, f)) v.set(pivots_[t], true);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BitVec> column_span_intersection(const GF2Matrix& a, const GF2Matrix& b) {
  assert(a.rows() == b.rows());
  GF2Matrix ab = GF2Matrix::hstack(a, b);
  std::vector<BitVec> ker = ab.kernel_basis();
  std::vector<BitVec> elems;
  for (const BitVec& k : ker) {
    BitVec u(a.cols());
    for (size_t c = 0; c < a.cols(); ++c)
      if (k.get(c)) u.set(c, true);
    elems.push_back(a.apply(u));
  }
  if (elems.empty()) return {};
  GF2Matrix rows = GF2Matrix::from_rows(elems, a.rows());
  GF2Matrix canon = rows.row_space_canonical();
  std::vector<BitVec> out;
  for (size_t i = 0; i < canon.rows(); ++i) out.push_back(canon.row(i));
  return out;
}

}  // namespace unstable
