#include "unstable/series.hpp"

#include "unstable/brown_gitler.hpp"
#include "unstable/steinberg.hpp"

#include <functional>
#include <stdexcept>

namespace unstable {

namespace {
long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}
long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}
}  // namespace

TruncSeries TruncSeries::one(int cap) {
  TruncSeries s(cap);
  s.c[0] = 1;
  return s;
}

TruncSeries TruncSeries::monomial(int a, int cap) {
  TruncSeries s(cap);
  if (a <= cap) s.c[a] = 1;
  return s;
}

bool TruncSeries::is_zero() const {
  for (long long x : c)
    if (x) return false;
  return true;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  if (a.cap != b.cap) throw std::invalid_argument("TruncSeries+: cap mismatch");
  TruncSeries r(a.cap);
  for (int i = 0; i <= a.cap; ++i) r.c[i] = checked_add(a.c[i], b.c[i]);
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  if (a.cap != b.cap) throw std::invalid_argument("TruncSeries-: cap mismatch");
  TruncSeries r(a.cap);
  for (int i = 0; i <= a.cap; ++i) r.c[i] = checked_add(a.c[i], -b.c[i]);
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.cap != b.cap) throw std::invalid_argument("TruncSeries*: cap mismatch");
  TruncSeries r(a.cap);
  for (int i = 0; i <= a.cap; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; i + j <= a.cap; ++j)
      if (b.c[j]) r.c[i + j] = checked_add(r.c[i + j], checked_mul(a.c[i], b.c[j]));
  }
  return r;
}

TruncSeries doubled(const TruncSeries& a) {
  TruncSeries r(a.cap);
  for (int i = 0; 2 * i <= a.cap; ++i) r.c[2 * i] = a.c[i];
  return r;
}

TruncSeries RationalForm::expand(int cap) const {
  TruncSeries r(cap);
  if (num_exp <= cap) r.c[num_exp] = 1;
  for (long long b : denom) {
    // multiply by 1/(1-q^b): cumulative sums with stride b
    if (b <= 0) throw std::invalid_argument("RationalForm: denominator exponent must be positive");
    for (int i = (int)b; i <= cap; ++i) r.c[i] = checked_add(r.c[i], r.c[i - b]);
  }
  return r;
}

TruncSeries ell(int m, int cap) {
  RationalForm f;
  for (int i = 1; i <= m; ++i) {
    f.num_exp += (1LL << i) - 1;
    f.denom.push_back((1LL << i) - 1);
  }
  return f.expand(cap);
}

namespace {
void nu_rec(int m, int pos, int prev, int left, long long& count) {
  if (pos == m) {
    if (left == 0) ++count;
    return;
  }
  for (int v = 1; v <= std::min(2 * prev, left); ++v) nu_rec(m, pos + 1, v, left - v, count);
}
}  // namespace

long long nu(int m, int d) {
  if (m == 0) return d == 0 ? 1 : 0;
  if (d < m) return 0;
  long long count = 0;
  // c_1 = 1 is forced
  nu_rec(m, 1, 1, d - 1, count);
  return count;
}

TruncSeries mu_by_partitions(int m, int cap) {
  TruncSeries s(cap);
  for (int d = 0; d <= cap; ++d) s.c[d] = nu(m, d);
  return s;
}

TruncSeries mu_by_minc_sequences(int m, int cap) {
  TruncSeries s(cap);
  for (int d = 0; d <= cap; ++d) s.c[d] = count_minc_sequences(m, d);
  return s;
}

TruncSeries mu_by_monomials(int m, int cap) {
  TruncSeries s(cap);
  if (m == 0) {
    s.c[0] = 1;
    return s;
  }
  std::vector<int> dims = j_dims((1 << m) - 1);
  for (int d = 0; d <= cap && d < (int)dims.size(); ++d) s.c[d] = dims[d];
  return s;
}

Report verify_minc_agreement(int kmax) {
  Report rep;
  rep.title = "minc_counts";
  rep.params = json{{"k_max", kmax}};
  for (int k = 0; k <= kmax; ++k) {
    int cap = (1 << k) - 1;
    TruncSeries a = mu_by_partitions(k, cap);
    TruncSeries b = mu_by_minc_sequences(k, cap);
    TruncSeries c = mu_by_monomials(k, cap);
    rep.add("k" + std::to_string(k) + "_partitions_vs_sequences", a == b);
    rep.add("k" + std::to_string(k) + "_sequences_vs_monomials", b == c);
  }
  return rep;
}

Report andrews_check(int n, int cap) {
  if (n > 6 || cap > 128) throw std::invalid_argument("andrews_check: n <= 6, cap <= 128");
  Report rep;
  rep.title = "andrews_identity";
  rep.params = json{{"n", n}, {"cap", cap}};
  TruncSeries lhs = TruncSeries::monomial((1 << n) - 1, cap) * ell(n, cap);
  TruncSeries rhs(cap);
  for (int i = 0; i <= n; ++i) {
    TruncSeries term = mu_by_partitions(i, cap) * ell(n - i, cap);
    rhs = (i % 2 == 0) ? rhs + term : rhs - term;
  }
  TruncSeries residual = lhs - rhs;
  rep.add("identity_residual_zero", residual.is_zero());
  // alternating sum form: -P(L'_n) + sum_s (-1)^s ell_{n-s} mu_s = 0
  TruncSeries alt(cap);
  alt = alt - lhs;
  for (int s = 0; s <= n; ++s) {
    TruncSeries term = ell(n - s, cap) * mu_by_partitions(s, cap);
    alt = (s % 2 == 0) ? alt + term : alt - term;
  }
  rep.add("alternating_sum_zero", alt.is_zero());
  return rep;
}

TruncSeries poincare(const GradedModule& M) {
  TruncSeries s(M.cap);
  for (int d = 0; d <= M.cap; ++d) s.c[d] = M.dim(d);
  return s;
}

TruncSeries t_functor_series(int n, int i, int cap) {
  if (n == 0) return TruncSeries(cap);  // the reduced functor kills finite modules
  RationalForm f;
  long long h = 1LL << (n - 1);
  f.num_exp = (h - 1) * i;
  for (int j = 0; j <= n - 2; ++j) f.denom.push_back(h - (1LL << j));
  f.denom.push_back(h);
  // n = 1: the loop is empty and the single factor is 1/(1-q)
  return f.expand(cap);
}

Report t_functor_check(int n_max, int i_max, int cap) {
  Report rep;
  rep.title = "t_functor_series";
  rep.params = json{{"n_max", n_max}, {"i_max", i_max}, {"cap", cap}};
  bool recursion_ok = true, halving_ok = true;
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 1; i <= i_max; ++i) {
      TruncSeries closed = t_functor_series(n, i, cap);
      TruncSeries rec = t_functor_series(n, i - 1, cap) -
                        TruncSeries::monomial(i - 1, cap) * doubled(t_functor_series(n - 1, i - 1, cap));
      if (!(closed == rec)) recursion_ok = false;
    }
    // halving identity between consecutive levels
    if (n >= 2) {
      TruncSeries lhs = doubled(t_functor_series(n - 1, 0, cap));
      TruncSeries one_minus(cap);
      one_minus.c[0] = 1;
      long long e = (1LL << (n - 1)) - 1;
      if (e <= cap) one_minus.c[e] -= 1;
      TruncSeries rhs = one_minus * t_functor_series(n, 0, cap);
      if (!(lhs == rhs)) halving_ok = false;
    }
  }
  rep.add("recursion_matches_closed_form", recursion_ok);
  rep.add("halving_identity", halving_ok);
  return rep;
}

namespace {
TruncSeries dickson_ideal_series(int n, int i, int cap) {
  if (n == 0) return TruncSeries::one(cap);  // D(0) = F_2, omega_0 = 1
  RationalForm f;
  f.num_exp = (long long)i * ((1LL << n) - 1);
  for (int j = 0; j < n; ++j) f.denom.push_back((1LL << n) - (1LL << j));
  return f.expand(cap);
}
}  // namespace

Report dickson_sequence_check(int n, int i, int cap, bool cross_check_modules) {
  if (n < 1 || i < 1) throw std::invalid_argument("dickson_sequence_check: n, i >= 1");
  Report rep;
  rep.title = "dickson_sequence";
  rep.params = json{{"n", n}, {"i", i}, {"cap", cap}};
  TruncSeries sub = dickson_ideal_series(n, i, cap);
  TruncSeries mid = dickson_ideal_series(n, i - 1, cap);
  TruncSeries quot = TruncSeries::monomial(i - 1, cap) * doubled(dickson_ideal_series(n - 1, i - 1, cap));
  rep.add("series_identity", (sub + quot) == mid);
  if (cross_check_modules && n <= 2) {
    DicksonModule sub_m = dickson_module(n, i, cap);
    DicksonModule mid_m = dickson_module(n, i - 1, cap);
    rep.add("enumerated_sub_matches", poincare(sub_m.mod) == sub);
    rep.add("enumerated_mid_matches", poincare(mid_m.mod) == mid);
  }
  return rep;
}

}  // namespace unstable
