#pragma once

#include "unstable/report.hpp"
#include "unstable/steenrod.hpp"

#include <cstdint>
#include <vector>

namespace unstable {

// Truncated integer power series with overflow-checked arithmetic.
struct TruncSeries {
  int cap = 0;
  std::vector<long long> c;

  TruncSeries() = default;
  explicit TruncSeries(int cap_) : cap(cap_), c(cap_ + 1, 0) {}
  static TruncSeries one(int cap);
  static TruncSeries monomial(int a, int cap);

  bool is_zero() const;
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.cap == b.cap && a.c == b.c;
  }
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
// Substitute q -> q^2 (degree doubling).
TruncSeries doubled(const TruncSeries& a);

// q^num / prod_i (1 - q^{den_i}).
struct RationalForm {
  long long num_exp = 0;
  std::vector<long long> denom;

  TruncSeries expand(int cap) const;
};

// Poincare series of the Steinberg factor: prod_{i=1}^m q^{2^i-1}/(1-q^{2^i-1}).
TruncSeries ell(int m, int cap);

// Minc partition count: tuples (c_1..c_m), c_1 = 1, 1 <= c_{t+1} <= 2 c_t,
// summing to d.
long long nu(int m, int d);
TruncSeries mu_by_partitions(int m, int cap);
TruncSeries mu_by_minc_sequences(int m, int cap);
TruncSeries mu_by_monomials(int m, int cap);
// All three counts agree for m <= kmax across all degrees.
Report verify_minc_agreement(int kmax);

// q^{2^n-1} ell_n = sum_i (-1)^i mu_i ell_{n-i}, plus the same identity in
// its alternating Poincare-sum form.
Report andrews_check(int n, int cap);

TruncSeries poincare(const GradedModule& M);

// Series of the reduced-T image of the Dickson ideals: closed form vs the
// short-exact-sequence recursion, and the halving identity between levels.
TruncSeries t_functor_series(int n, int i, int cap);
Report t_functor_check(int n_max, int i_max, int cap);

// Dimension identity of the Dickson ideal short exact sequence as series,
// with a module-level cross-check for n <= 2.
Report dickson_sequence_check(int n, int i, int cap, bool cross_check_modules = false);

}  // namespace unstable
