#pragma once

#include "unstable/gf2_matrix.hpp"
#include "unstable/gf2_poly.hpp"
#include "unstable/report.hpp"

#include <cstdint>
#include <vector>

namespace unstable {

// n x n matrix over GF(2), n <= 8, packed row-major into a word.
struct MatrixN {
  int n = 0;
  uint64_t bits = 0;

  static MatrixN identity(int n);
  static MatrixN zero(int n) { return {n, 0}; }

  bool get(int i, int j) const { return (bits >> (i * n + j)) & 1; }
  void set(int i, int j, bool v) {
    uint64_t m = uint64_t(1) << (i * n + j);
    bits = v ? (bits | m) : (bits & ~m);
  }
  uint64_t row(int i) const { return (bits >> (i * n)) & ((uint64_t(1) << n) - 1); }

  friend bool operator==(const MatrixN& a, const MatrixN& b) {
    return a.n == b.n && a.bits == b.bits;
  }
  friend bool operator<(const MatrixN& a, const MatrixN& b) { return a.bits < b.bits; }
};

MatrixN mat_mul(const MatrixN& a, const MatrixN& b);

// Mod-2 formal sum of matrices.
struct AlgebraElement {
  int n = 0;
  std::vector<MatrixN> support;  // sorted, distinct

  static AlgebraElement from_matrices(int n, std::vector<MatrixN> mats);
  static AlgebraElement single(const MatrixN& m) { return from_matrices(m.n, {m}); }
  bool operator==(const AlgebraElement& o) const { return n == o.n && support == o.support; }
};

AlgebraElement alg_multiply(const AlgebraElement& u, const AlgebraElement& v);

// Left action by linear substitution: x_i -> sum_j sigma_{j,i} x_j.
Poly act(const MatrixN& sigma, const Poly& f);
Poly alg_act(const AlgebraElement& u, const Poly& f);

AlgebraElement borel_sum(int n);      // invertible upper triangular matrices
AlgebraElement symmetric_sum(int n);  // permutation matrices
AlgebraElement steinberg_idempotent(int n);

enum class EmbedKind { leading_block, pair_block, projector_last };
// leading_block: e_k acting on the first k coordinates.
// pair_block: e_2 acting on coordinates i, i+1 (1-based i).
// projector_last: diag(1, ..., 1, 0).
AlgebraElement embedded_idempotent(EmbedKind kind, int k_or_i, int n);

// Idempotency of e_n plus the Hecke-algebra absorption and factorization
// identities, verified by exact semigroup-algebra arithmetic.
Report verify_hecke(int n, int threads = 1);

// Degreewise matrices of an algebra element acting on the full polynomial
// space in n variables, built once for all degrees <= cap.
class AlgebraAction {
 public:
  AlgebraAction(const AlgebraElement& u, int cap, int threads = 1);
  int nvars() const { return nv_; }
  int cap() const { return cap_; }
  const GF2Matrix& at(int d) const { return mats_.at(d); }
  // Image of a homogeneous polynomial under the element.
  Poly apply(const Poly& f) const;

 private:
  int nv_ = 0;
  int cap_ = 0;
  std::vector<GF2Matrix> mats_;
};

}  // namespace unstable
