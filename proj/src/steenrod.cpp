#include "unstable/steenrod.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <stdexcept>

namespace unstable {

int SquareRule::partner(int i) const {
  switch (kind) {
    case Kind::classical:
      return i;
    case Kind::twisted:
      return i >= 1 ? i - 1 : nvars - 1;
    case Kind::miller:
      return i >= 1 ? i - 1 : -1;
  }
  return -1;
}

namespace {

// Enumerate, over each monomial of f, the ways of applying the total square:
// per variable choose j_i with C(e_i, j_i) odd; the contribution replaces
// v_i^{e_i} by v_i^{e_i - j_i} partner_i^{2 j_i} and raises the degree by
// sum j_i.  `want` = -1 collects every component.
void square_terms(const SquareRule& rule, const Poly& f, int want,
                  std::vector<std::vector<Mon>>& buckets) {
  const int nv = f.nv;
  std::vector<int> acc(nv, 0);
  std::function<void(const Mon&, int, int)> rec = [&](const Mon& m, int var, int k_acc) {
    if (var == nv) {
      if (want < 0 || k_acc == want) buckets[k_acc].push_back(Mon(acc));
      return;
    }
    int e = m.e[var];
    int p = rule.partner(var);
    // submasks j of e, descending from e to 0; C(e, j) is odd exactly then
    int j = e;
    while (true) {
      bool allowed = (j == 0) || (p >= 0 && (want < 0 || k_acc + j <= want));
      if (allowed) {
        acc[var] += e - j;
        if (j > 0) acc[p] += 2 * j;
        rec(m, var + 1, k_acc + j);
        if (j > 0) acc[p] -= 2 * j;
        acc[var] -= e - j;
      }
      if (j == 0) break;
      j = (j - 1) & e;
    }
  };
  for (const Mon& m : f.terms) rec(m, 0, 0);
}

Poly collect(std::vector<Mon>& v, int nv) {
  std::sort(v.begin(), v.end(), std::greater<Mon>());
  Poly out(nv);
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.terms.push_back(v[i]);
    i = j;
  }
  return out;
}

}  // namespace

Poly sq(const SquareRule& rule, int k, const Poly& f) {
  if (k < 0) throw std::invalid_argument("sq: negative k");
  if (f.is_zero()) return Poly::zero(f.nv);
  if (k == 0) return f;
  if (f.is_homogeneous() && k > f.degree()) return Poly::zero(f.nv);
  std::vector<std::vector<Mon>> buckets(k + 1);
  square_terms(rule, f, k, buckets);
  return collect(buckets[k], f.nv);
}

std::vector<Poly> total_square(const SquareRule& rule, const Poly& f) {
  int top = f.is_zero() ? 0 : f.degree();
  std::vector<std::vector<Mon>> buckets(top + 1);
  square_terms(rule, f, -1, buckets);
  std::vector<Poly> out;
  out.reserve(top + 1);
  for (auto& b : buckets) out.push_back(collect(b, f.nv));
  return out;
}

Poly sq(int k, const Poly& f) { return sq(SquareRule::classical(f.nv), k, f); }

Poly twisted_sq(int k, const Poly& f, int nvars) { return sq(SquareRule::twisted(nvars), k, f); }

Poly total_square_with_variable(const Poly& f) {
  if (f.is_zero()) return Poly::zero(f.nv + 1);
  if (!f.is_homogeneous()) throw std::invalid_argument("total_square_with_variable: inhomogeneous");
  int d = f.degree();
  std::vector<Poly> comps = total_square(SquareRule::classical(f.nv), f);
  Poly out(f.nv + 1);
  for (int k = 0; k <= d; ++k) {
    if (comps[k].is_zero()) continue;
    std::vector<int> e(f.nv + 1, 0);
    e[0] = d - k;
    out += Poly::monomial(Mon(e)) * shift_vars(comps[k], 1, f.nv + 1);
  }
  return out;
}

std::vector<int> GradedModule::dims() const {
  std::vector<int> out(cap + 1);
  for (int d = 0; d <= cap; ++d) out[d] = dim(d);
  return out;
}

GF2Matrix GradedModule::sq_matrix(int k, int d) const {
  if (k == 0) return GF2Matrix::identity(dim(d));
  if (d < 0 || d > cap || d + k > cap) return GF2Matrix(dim(d + k), dim(d));
  if (k > d) return GF2Matrix(dim(d + k), dim(d));  // instability
  if (dim(d) == 0 || dim(d + k) == 0) return GF2Matrix(dim(d + k), dim(d));
  if (k - 1 >= (int)sqmat[d].size())
    throw std::logic_error("sq_matrix: missing matrix for k=" + std::to_string(k));
  return sqmat[d][k - 1];
}

int GradedModule::top_nonzero() const {
  for (int d = cap; d >= 0; --d)
    if (dim(d) > 0) return d;
  return -1;
}

GradedModule module_from_polys(const SquareRule& rule,
                               const std::vector<std::vector<Poly>>& basis,
                               const std::vector<std::vector<std::string>>& labels, int cap,
                               std::optional<int> bounded_top) {
  GradedModule M;
  M.cap = cap;
  M.bounded_top = bounded_top;
  M.labels.resize(cap + 1);
  M.polys.resize(cap + 1);
  M.sqmat.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    if (d < (int)basis.size()) {
      M.polys[d] = basis[d];
      if (d < (int)labels.size() && labels[d].size() == basis[d].size())
        M.labels[d] = labels[d];
      else
        for (size_t i = 0; i < basis[d].size(); ++i)
          M.labels[d].push_back("b" + std::to_string(d) + "." + std::to_string(i));
    }
    for (const Poly& p : M.polys[d]) {
      if (p.is_zero() || !p.is_homogeneous() || p.degree() != d)
        throw std::invalid_argument("module_from_polys: basis element not homogeneous of its degree");
    }
  }
  // Per-degree coordinate solvers.
  std::vector<std::optional<Echelon>> solver(cap + 1);
  int nv = 0;
  for (int d = 0; d <= cap; ++d)
    if (!M.polys[d].empty()) nv = M.polys[d][0].nv;
  auto coords = [&](const Poly& p, int d) {
    BitVec v(monomial_space_dim(nv, d));
    for (const Mon& m : p.terms) v.flip(monomial_index(m));
    return v;
  };
  for (int d = 0; d <= cap; ++d) {
    if (M.polys[d].empty()) continue;
    std::vector<BitVec> cols;
    for (const Poly& p : M.polys[d]) cols.push_back(coords(p, d));
    GF2Matrix A = GF2Matrix::from_columns(cols, monomial_space_dim(nv, d));
    solver[d].emplace(A);
    if (solver[d]->rank() != M.polys[d].size())
      throw std::logic_error("module_from_polys: basis not linearly independent in degree " +
                             std::to_string(d));
  }
  // Square matrices via the total square of each basis element.
  for (int d = 0; d <= cap; ++d) {
    int n_src = M.dim(d);
    std::vector<std::vector<BitVec>> cols(cap - d);  // [k-1][col]
    for (int k = 1; k + d <= cap; ++k) cols[k - 1].assign(n_src, BitVec(M.dim(d + k)));
    for (int c = 0; c < n_src; ++c) {
      std::vector<Poly> comps = total_square(rule, M.polys[d][c]);
      for (int k = 1; k < (int)comps.size(); ++k) {
        if (comps[k].is_zero()) continue;
        if (d + k > cap) continue;
        if (M.dim(d + k) == 0 || !solver[d + k])
          throw std::logic_error("module_from_polys: action leaves the span (degree " +
                                 std::to_string(d + k) + ")");
        auto x = solver[d + k]->solve(coords(comps[k], d + k));
        if (!x) throw std::logic_error("module_from_polys: action leaves the span");
        cols[k - 1][c] = *x;
        // solve() returns coordinates over the basis columns
      }
    }
    for (int k = 1; k + d <= cap; ++k) {
      GF2Matrix S(M.dim(d + k), n_src);
      for (int c = 0; c < n_src; ++c)
        for (int r = 0; r < M.dim(d + k); ++r)
          if (cols[k - 1][c].size() && cols[k - 1][c].get(r)) S.set(r, c, true);
      M.sqmat[d].push_back(std::move(S));
    }
  }
  return M;
}

GradedModule close_under_action(const SquareRule& rule, const std::vector<Poly>& generators,
                                int cap) {
  int nv = rule.nvars;
  for (const Poly& g : generators) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("close_under_action: inhomogeneous generator");
    if (g.degree() > cap) throw std::invalid_argument("close_under_action: cap below generator degree");
  }
  // Incremental row reduction per degree.
  struct Span {
    std::vector<BitVec> rows;  // reduced, each with a distinct pivot
    std::vector<int> pivots;
  };
  std::vector<Span> spans(cap + 1);
  auto reduce = [&](BitVec v, int d) -> bool {  // true if new element added
    Span& s = spans[d];
    for (size_t i = 0; i < s.rows.size(); ++i)
      if (v.get(s.pivots[i])) v.xor_with(s.rows[i]);
    if (!v.any()) return false;
    int piv = 0;
    for (size_t i = 0; i < v.size(); ++i)
      if (v.get(i)) {
        piv = (int)i;
        break;
      }
    s.rows.push_back(v);
    s.pivots.push_back(piv);
    return true;
  };
  auto coords = [&](const Poly& p, int d) {
    BitVec v(monomial_space_dim(nv, d));
    for (const Mon& m : p.terms) v.flip(monomial_index(m));
    return v;
  };
  std::deque<Poly> work(generators.begin(), generators.end());
  while (!work.empty()) {
    Poly f = std::move(work.front());
    work.pop_front();
    if (f.is_zero()) continue;
    int d = f.degree();
    if (!reduce(coords(f, d), d)) continue;
    std::vector<Poly> comps = total_square(rule, f);
    for (int k = 1; k < (int)comps.size() && d + k <= cap; ++k)
      if (!comps[k].is_zero()) work.push_back(comps[k]);
  }
  // Canonical bases from the reduced spans.
  std::vector<std::vector<Poly>> basis(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    if (spans[d].rows.empty()) continue;
    GF2Matrix rows = GF2Matrix::from_rows(spans[d].rows, monomial_space_dim(nv, d));
    GF2Matrix canon = rows.row_space_canonical();
    const auto& mons = monomials_of_degree(nv, d);
    for (size_t i = 0; i < canon.rows(); ++i) {
      Poly p(nv);
      for (size_t c = 0; c < canon.cols(); ++c)
        if (canon.get(i, c)) p.terms.push_back(mons[c]);
      std::sort(p.terms.begin(), p.terms.end(), std::greater<Mon>());
      basis[d].push_back(std::move(p));
    }
  }
  return module_from_polys(rule, basis, {}, cap);
}

bool map_commutes_with_sq(const GradedMap& f, const GradedModule& src, const GradedModule& dst) {
  int cap = std::min((int)f.mats.size() - 1, src.cap);
  for (int d = 0; d <= cap; ++d) {
    for (int k = 1; d + k <= cap; ++k) {
      if (d + f.shift + k > dst.cap) continue;
      GF2Matrix lhs = f.mats[d + k] * src.sq_matrix(k, d);
      GF2Matrix rhs = dst.sq_matrix(k, d + f.shift) * f.mats[d];
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

std::vector<GradedMap> hom_space(const GradedModule& M, const GradedModule& N) {
  if (!N.bounded_top)
    throw std::invalid_argument("hom_space: target must be bounded");
  int top = *N.bounded_top;
  if (N.cap < top || M.cap < top)
    throw std::invalid_argument("hom_space: cap insufficient for bounded target (need >= " +
                                std::to_string(top) + ")");
  // Unknowns: entries of phi_d for d <= top.
  std::vector<int> offset(top + 2, 0);
  for (int d = 0; d <= top; ++d) offset[d + 1] = offset[d] + N.dim(d) * M.dim(d);
  int nunk = offset[top + 1];
  std::vector<BitVec> rows;
  auto unk = [&](int d, int i, int j) { return offset[d] + i * M.dim(d) + j; };
  for (int d = 0; d <= top; ++d) {
    for (int k = 1; d + k <= top; ++k) {
      GF2Matrix sm = M.sq_matrix(k, d);
      GF2Matrix sn = N.sq_matrix(k, d);
      // phi_{d+k} Sq^k_M = Sq^k_N phi_d as (N.dim(d+k) x M.dim(d)) matrices
      for (int i = 0; i < N.dim(d + k); ++i) {
        for (int l = 0; l < M.dim(d); ++l) {
          BitVec row(nunk);
          for (int j = 0; j < M.dim(d + k); ++j)
            if (sm.get(j, l)) row.flip(unk(d + k, i, j));
          for (int m2 = 0; m2 < N.dim(d); ++m2)
            if (sn.get(i, m2)) row.flip(unk(d, m2, l));
          if (row.any()) rows.push_back(std::move(row));
        }
      }
    }
  }
  GF2Matrix sys = rows.empty() ? GF2Matrix(0, nunk) : GF2Matrix::from_rows(rows, nunk);
  std::vector<BitVec> ker = sys.kernel_basis();
  std::vector<GradedMap> out;
  for (const BitVec& v : ker) {
    GradedMap f;
    f.shift = 0;
    f.mats.resize(M.cap + 1);
    for (int d = 0; d <= M.cap; ++d) {
      GF2Matrix mat(N.dim(d), M.dim(d));
      if (d <= top)
        for (int i = 0; i < N.dim(d); ++i)
          for (int j = 0; j < M.dim(d); ++j)
            if (v.get(unk(d, i, j))) mat.set(i, j, true);
      f.mats[d] = std::move(mat);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int TensorModule::pair_index(int d, int dA, int iA, int iB) const {
  const auto& v = pairs[d];
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i][0] == dA && v[i][1] == iA && v[i][2] == iB) return (int)i;
  throw std::logic_error("TensorModule::pair_index: pair not found");
}

TensorModule tensor_module(const GradedModule& A, const GradedModule& B, int cap) {
  TensorModule T;
  T.mod.cap = cap;
  if (A.bounded_top && B.bounded_top) T.mod.bounded_top = *A.bounded_top + *B.bounded_top;
  T.mod.labels.resize(cap + 1);
  T.mod.polys.resize(cap + 1);
  T.mod.sqmat.resize(cap + 1);
  T.pairs.resize(cap + 1);
  T.dimsA = A.dims();
  T.dimsB = B.dims();
  for (int d = 0; d <= cap; ++d) {
    for (int dA = 0; dA <= d && dA <= A.cap; ++dA) {
      int dB = d - dA;
      if (dB > B.cap) continue;
      for (int iA = 0; iA < A.dim(dA); ++iA)
        for (int iB = 0; iB < B.dim(dB); ++iB) {
          T.pairs[d].push_back({dA, iA, iB});
          T.mod.labels[d].push_back(A.labels[dA][iA] + "|" + B.labels[dB][iB]);
        }
    }
  }
  // Cartan: Sq^k(u (x) v) = sum_{a+b=k} Sq^a u (x) Sq^b v.
  for (int d = 0; d <= cap; ++d) {
    for (int k = 1; d + k <= cap; ++k) {
      GF2Matrix S(T.mod.labels[d + k].size(), T.mod.labels[d].size());
      for (size_t c = 0; c < T.pairs[d].size(); ++c) {
        auto [dA, iA, iB] = T.pairs[d][c];
        int dB = d - dA;
        for (int a = 0; a <= k; ++a) {
          int b = k - a;
          if (a > dA || b > dB) continue;  // instability
          if (dA + a > A.cap || dB + b > B.cap) continue;
          GF2Matrix SA = A.sq_matrix(a, dA);
          GF2Matrix SB = B.sq_matrix(b, dB);
          for (int jA = 0; jA < A.dim(dA + a); ++jA) {
            if (!SA.get(jA, iA)) continue;
            for (int jB = 0; jB < B.dim(dB + b); ++jB) {
              if (!SB.get(jB, iB)) continue;
              int r = T.pair_index(d + k, dA + a, jA, jB);
              S.flip(r, c);
            }
          }
        }
      }
      T.mod.sqmat[d].push_back(std::move(S));
    }
  }
  return T;
}

std::optional<BitVec> solve_in_span(const std::vector<Poly>& span, const Poly& target) {
  if (span.empty()) {
    if (target.is_zero()) return BitVec(0);
    return std::nullopt;
  }
  int nv = span[0].nv;
  int d = span[0].degree();
  for (const Poly& p : span)
    if (p.is_zero() || !p.is_homogeneous() || p.degree() != d || p.nv != nv)
      throw std::invalid_argument("solve_in_span: span must be homogeneous of equal degree");
  if (target.is_zero()) return BitVec(span.size());
  if (!target.is_homogeneous() || target.degree() != d || target.nv != nv)
    throw std::invalid_argument("solve_in_span: target degree mismatch");
  size_t dim = monomial_space_dim(nv, d);
  auto coords = [&](const Poly& p) {
    BitVec v(dim);
    for (const Mon& m : p.terms) v.flip(monomial_index(m));
    return v;
  };
  std::vector<BitVec> cols;
  for (const Poly& p : span) cols.push_back(coords(p));
  Echelon e(GF2Matrix::from_columns(cols, dim));
  return e.solve(coords(target));
}

}  // namespace unstable
