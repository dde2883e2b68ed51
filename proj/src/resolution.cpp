#include "unstable/resolution.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace unstable {

namespace {

// pi_t(x^a) as an element of Miller's algebra; zero when a is out of range.
Poly pi_value(const GSystem& sys, int t, int a) {
  const GradedModule& Jp = sys.J2t[t];
  if (a < 1 || a > Jp.cap) return Poly::zero(1);
  Poly val(Jp.dim(a) > 0 ? Jp.polys[a][0].nv : 1);
  for (int r = 0; r < Jp.dim(a); ++r)
    if (sys.pis[t].mats[a].get(r, 0)) val += Jp.polys[a][r];
  return val;
}

// Split a polynomial on m variables into (first m-1 | last) coordinates over
// the given left basis: returns (left degree, left index, last exponent).
struct SplitTerm {
  int dleft;
  int left_index;
  int last_exp;
};

std::vector<SplitTerm> split_off_last(const Poly& P, const SteinbergModule& left) {
  std::vector<SplitTerm> out;
  if (P.is_zero()) return out;
  int m = P.nv;
  std::map<int, Poly> by_exp;  // last exponent -> coefficient polynomial
  for (const Mon& t : P.terms) {
    int a = m >= 1 ? t.e.back() : 0;
    auto it = by_exp.find(a);
    Mon head(std::vector<int>(t.e.begin(), t.e.end() - (m >= 1 ? 1 : 0)));
    if (it == by_exp.end()) {
      Poly p(m - 1);
      p.terms.push_back(head);
      by_exp.emplace(a, std::move(p));
    } else {
      it->second += Poly::monomial(head);
    }
  }
  for (auto& [a, cp] : by_exp) {
    if (cp.is_zero()) continue;
    std::sort(cp.terms.begin(), cp.terms.end(), std::greater<Mon>());
    int dl = cp.degree();
    auto x = solve_in_span(left.mod.polys[dl], cp);
    if (!x) throw std::logic_error("split_off_last: coefficient not in the left module");
    for (size_t w = 0; w < x->size(); ++w)
      if (x->get(w)) out.push_back(SplitTerm{dl, (int)w, a});
  }
  return out;
}

}  // namespace

ResolutionComplex build_resolution(int n, int cap) {
  if (n < 1 || n > 3) throw std::invalid_argument("build_resolution: 1 <= n <= 3 required");
  ResolutionComplex R;
  R.n = n;
  R.cap = cap;
  R.gsys = build_g_system(std::max(n, 1));
  for (int j = 0; j <= n; ++j) R.L.push_back(build_steinberg(Flavor::L, j, cap));
  R.Lprime = build_steinberg(Flavor::Lprime, n, cap);
  for (int s = 0; s <= n; ++s) R.J.push_back(build_g_basis(R.gsys, s));
  for (int s = 0; s <= n; ++s) R.terms.push_back(tensor_module(R.L[n - s].mod, R.J[s].gmod, cap));

  // f_0: omega_n L_n -> L_n (x) J(0)
  {
    GradedMap f;
    f.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix mat(R.terms[0].mod.dim(d), R.Lprime.mod.dim(d));
      for (int c = 0; c < R.Lprime.mod.dim(d); ++c) {
        auto x = solve_in_span(R.L[n].mod.polys[d], R.Lprime.mod.polys[d][c]);
        if (!x) throw std::logic_error("build_resolution: inclusion failed");
        for (size_t w = 0; w < x->size(); ++w)
          if (x->get(w)) mat.flip(R.terms[0].pair_index(d, d, (int)w, 0), c);
      }
      f.mats[d] = std::move(mat);
    }
    R.maps.push_back(std::move(f));
  }
  // f_s: L_{n-s+1} (x) J(2^{s-1}-1) -> L_{n-s} (x) J(2^s-1)
  for (int s = 1; s <= n; ++s) {
    const TensorModule& src = R.terms[s - 1];
    const TensorModule& dst = R.terms[s];
    const SteinbergModule& left = R.L[n - s];
    const GBasis& Jdst = R.J[s];
    const GBasis& Jsrc = R.J[s - 1];
    // pi_{s-1}(x^a) as polynomials in Miller variables
    int top_pi = 1 << (s - 1);
    std::vector<Poly> pival(top_pi + 1, Poly(1));
    for (int a = 1; a <= top_pi; ++a) pival[a] = pi_value(R.gsys, s - 1, a);
    // coordinate splits of the source Steinberg basis, cached per (degree, index)
    std::vector<std::vector<std::vector<SplitTerm>>> splits(cap + 1);
    for (int dA = 0; dA <= cap; ++dA) {
      splits[dA].resize(R.L[n - s + 1].mod.dim(dA));
      for (int iA = 0; iA < R.L[n - s + 1].mod.dim(dA); ++iA)
        splits[dA][iA] = split_off_last(R.L[n - s + 1].mod.polys[dA][iA], left);
    }
    // g-coordinate solvers for the target
    int ktop = (1 << s) - 1;
    std::vector<std::optional<Echelon>> gsolve(ktop + 1);
    for (int d = 0; d <= ktop; ++d)
      if (Jdst.jmod.dim(d) > 0) gsolve[d].emplace(Jdst.to_mono[d]);
    GradedMap f;
    f.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix mat(dst.mod.dim(d), src.mod.dim(d));
      for (size_t c = 0; c < src.pairs[d].size(); ++c) {
        auto [dA, iA, iB] = src.pairs[d][c];
        int dB = d - dA;
        const Poly& v = Jsrc.gmod.polys[dB][iB];
        for (const SplitTerm& st : splits[dA][iA]) {
          if (st.last_exp > top_pi) continue;
          const Poly& pv = pival[st.last_exp];
          if (pv.is_zero()) continue;
          Poly prod = bg_multiply(pv, v);
          if (prod.is_zero()) continue;
          int dj = st.last_exp + dB;
          if (dj > ktop) continue;  // the target module vanishes there
          // coordinates in the monomial basis of J(2^s - 1)
          Poly padded = pad_vars(prod, Jdst.jmod.polys[dj].empty() ? prod.nv
                                                                   : Jdst.jmod.polys[dj][0].nv);
          auto xm = solve_in_span(Jdst.jmod.polys[dj], padded);
          if (!xm) throw std::logic_error("build_resolution: product escapes the module");
          auto xg = gsolve[dj]->solve(*xm);
          if (!xg) throw std::logic_error("build_resolution: g-coordinates unsolvable");
          for (size_t r = 0; r < xg->size(); ++r)
            if (xg->get(r)) mat.flip(dst.pair_index(d, st.dleft, st.left_index, (int)r), c);
        }
      }
      f.mats[d] = std::move(mat);
    }
    R.maps.push_back(std::move(f));
  }
  // label counts for the rank bookkeeping
  R.countA.assign(n + 1, std::vector<int>(cap + 1, 0));
  R.countB.assign(n + 1, std::vector<int>(cap + 1, 0));
  for (int s = 0; s <= n; ++s) {
    for (int d = 0; d <= cap; ++d) {
      for (const auto& pr : R.terms[s].pairs[d]) {
        auto [dA, iA, iB] = pr;
        int dB = d - dA;
        bool inA;
        if (s == n) {
          inA = false;
        } else if (s == 0) {
          const OmegaLabel& ol = R.L[n].olabels[dA][iA];
          inA = (ol.back() == 1);
        } else {
          const OmegaLabel& ol = R.L[n - s].olabels[dA][iA];
          const MincSeq& ms = R.J[s].glabels[dB][iB];
          inA = (ol.back() <= 2 * ms.front());
        }
        if (inA)
          R.countA[s][d] += 1;
        else
          R.countB[s][d] += 1;
      }
    }
  }
  return R;
}

Report verify_complex(const ResolutionComplex& R) {
  Report rep;
  rep.title = "complex";
  rep.params = json{{"n", R.n}, {"cap", R.cap}};
  // d o d = 0 at every position and degree
  bool composites_zero = true;
  for (int s = 0; s + 1 <= R.n; ++s) {
    for (int d = 0; d <= R.cap; ++d) {
      GF2Matrix comp = R.maps[s + 1].mats[d] * R.maps[s].mats[d];
      if (!comp.is_zero()) composites_zero = false;
    }
  }
  rep.add("consecutive_composites_zero", composites_zero);
  // A-linearity
  bool linear = map_commutes_with_sq(R.maps[0], R.Lprime.mod, R.terms[0].mod);
  for (int s = 1; s <= R.n; ++s)
    linear = linear && map_commutes_with_sq(R.maps[s], R.terms[s - 1].mod, R.terms[s].mod);
  rep.add("maps_commute_with_squares", linear);
  // the two-variable vanishing composite and the monomial absence behind it
  int imax = 0;
  while (3 * (1 << imax) <= R.cap) ++imax;  // i with 2^i + 2^{i-1} <= cap has i-1 < imax
  SteinbergModule L2 = build_steinberg(Flavor::L, 2, R.cap);
  GSystem wide = build_g_system(imax + 1);
  bool composite_zero = true;
  for (int i = 1; 3 * (1 << (i - 1)) <= R.cap; ++i) {
    int nvj = i + 1;  // J(2^i) lives on t_0..t_i
    for (int d = 0; d <= R.cap; ++d) {
      for (const Poly& b : L2.mod.polys[d]) {
        Poly image(nvj);
        for (const Mon& t : b.terms) {
          Poly pa = pi_value(wide, i, t.e[0]);
          Poly pb = pi_value(wide, i - 1, t.e[1]);
          if (pa.is_zero() || pb.is_zero()) continue;
          image += pad_vars(bg_multiply(pa, pb), nvj);
        }
        if (!image.is_zero()) composite_zero = false;
      }
    }
  }
  rep.add("two_factor_composite_vanishes", composite_zero);
  // monomial absence: e_2 . w1^{a-2b} w2^b omits x1^{2^i} x2^{2^{i-1}}
  bool absence = true;
  AlgebraAction e2(steinberg_idempotent(2), R.cap);
  for (int i = 2; 3 * (1 << (i - 1)) <= R.cap; ++i) {
    int total = 3 * (1 << (i - 1));
    for (int b = 1; 3 * b < total; ++b) {
      int a = total - b;
      if (a <= 2 * b) continue;
      Poly p = pow(pad_vars(omega(1), 2), a - 2 * b) * pow(omega(2), b);
      Poly elt = e2.apply(p);
      Mon target(std::vector<int>{1 << i, 1 << (i - 1)});
      if (elt.contains(target)) absence = false;
    }
  }
  rep.add("leading_monomial_absent", absence);
  return rep;
}

Report verify_exactness(const ResolutionComplex& R) {
  Report rep;
  rep.title = "exactness";
  rep.params = json{{"n", R.n}, {"cap", R.cap}};
  bool inj = true, surj = true, interior = true, counts = true, euler = true, ab_match = true;
  json table = json::array();
  for (int d = 0; d <= R.cap; ++d) {
    std::vector<int> dims;
    dims.push_back(R.Lprime.mod.dim(d));
    for (int s = 0; s <= R.n; ++s) dims.push_back(R.terms[s].mod.dim(d));
    std::vector<size_t> ranks;
    for (int s = 0; s <= R.n; ++s) ranks.push_back(R.maps[s].mats[d].rank());
    if ((int)ranks[0] != dims[0]) inj = false;
    if ((int)ranks[R.n] != dims[R.n + 1]) surj = false;
    for (int pos = 1; pos <= R.n; ++pos)
      if ((int)(ranks[pos - 1] + ranks[pos]) != dims[pos]) interior = false;
    // rank f_s = |A(s-1, d)| (with position 0 giving |B(0, d)| = dim Lprime)
    for (int s = 1; s <= R.n; ++s)
      if ((int)ranks[s] != R.countA[s - 1][d]) counts = false;
    if ((int)ranks[0] != R.countB[0][d]) counts = false;
    for (int s = 0; s < R.n; ++s)
      if (R.countA[s][d] != R.countB[s + 1][d]) ab_match = false;
    long long chi = -dims[0];
    for (int s = 0; s <= R.n; ++s) chi += (s % 2 == 0 ? 1 : -1) * dims[s + 1];
    if (chi != 0) euler = false;
    json row;
    row["degree"] = d;
    row["dims"] = dims;
    row["ranks"] = ranks;
    table.push_back(row);
  }
  rep.add("left_end_injective", inj);
  rep.add("right_end_surjective", surj);
  rep.add("interior_rank_nullity", interior);
  rep.add("ranks_match_label_counts", counts);
  rep.add("junction_counts_match", ab_match);
  rep.add("euler_characteristic_zero", euler, table);
  return rep;
}

std::vector<BitVec> primitives(const GradedModule& M, int t) {
  if (t < 0 || t > M.cap || M.dim(t) == 0) return {};
  // Killed by every Sq^{2^j} with 2^j <= t iff killed by every positive
  // square: any positive-degree element is a sum of products ending in one.
  std::vector<GF2Matrix> blocks;
  for (int k = 1; k <= t; k <<= 1) {
    if (t + k > M.cap) {
      if (M.bounded_top && t + k > *M.bounded_top) continue;  // lands in zero
      throw std::invalid_argument("primitives: cap insufficient at degree " + std::to_string(t));
    }
    blocks.push_back(M.sq_matrix(k, t));
  }
  if (blocks.empty()) {
    std::vector<BitVec> out;
    for (int i = 0; i < M.dim(t); ++i) {
      BitVec v(M.dim(t));
      v.set(i, true);
      out.push_back(std::move(v));
    }
    return out;
  }
  GF2Matrix stacked = blocks[0];
  for (size_t i = 1; i < blocks.size(); ++i) stacked = GF2Matrix::vstack(stacked, blocks[i]);
  return stacked.kernel_basis();
}

Report ext_table(int n, int t_max) {
  Report rep;
  rep.title = "ext_table";
  rep.params = json{{"n", n}, {"t_max", t_max}};
  int pow2 = 1;
  while (2 * pow2 <= t_max) pow2 <<= 1;
  int capx = t_max + pow2;
  ResolutionComplex R = build_resolution(n, capx);
  // cohomology of Hom(Sigma^t, I^0 -> ... -> I^n)
  bool table_ok = true, differentials_zero = true, suspension_bound = true;
  json tbl = json::array();
  for (int t = 0; t <= t_max; ++t) {
    std::vector<std::vector<BitVec>> prim(n + 1);
    for (int s = 0; s <= n; ++s) prim[s] = primitives(R.terms[s].mod, t);
    std::vector<size_t> dranks(n + 1, 0);
    for (int s = 0; s < n; ++s) {
      if (prim[s].empty()) continue;
      // induced map on primitives, in the primitive bases
      GF2Matrix basis_s = GF2Matrix::from_columns(prim[s], R.terms[s].mod.dim(t));
      GF2Matrix img = R.maps[s + 1].mats[t] * basis_s;
      if (!prim[s + 1].empty()) {
        Echelon e(GF2Matrix::from_columns(prim[s + 1], R.terms[s + 1].mod.dim(t)));
        for (size_t c = 0; c < img.cols(); ++c) {
          auto x = e.solve(img.column(c));
          if (!x) throw std::logic_error("ext_table: image of a primitive is not primitive");
        }
      } else if (!img.is_zero()) {
        throw std::logic_error("ext_table: image of a primitive is not primitive");
      }
      dranks[s + 1] = img.rank();
      if (!img.is_zero()) differentials_zero = false;
    }
    for (int s = 0; s <= n + 1; ++s) {
      size_t p = (s <= n) ? prim[s].size() : 0;
      size_t rank_out = (s <= n) ? ((s < n) ? dranks[s + 1] : 0) : 0;
      size_t rank_in = (s >= 1 && s <= n) ? dranks[s] : 0;
      long long h = (long long)p - rank_out - rank_in;
      int expected = (s == n && t == (1 << n) - 1) ? 1 : 0;
      if (h != expected) table_ok = false;
      if (h != 0) tbl.push_back(json{{"s", s}, {"t", t}, {"dim", h}});
      if (s <= n && t > (1 << s) - 1 && p != 0) suspension_bound = false;
    }
  }
  rep.add("single_nonzero_entry", table_ok, tbl);
  rep.add("induced_differentials_vanish", differentials_zero);
  rep.add("primitives_respect_suspension_bound", suspension_bound);
  return rep;
}

namespace {
GradedModule suspend(const GradedModule& m, int shift, int cap) {
  GradedModule out;
  out.cap = cap;
  out.poly_degree_offset = m.poly_degree_offset + shift;
  if (m.bounded_top) out.bounded_top = *m.bounded_top + shift;
  out.labels.resize(cap + 1);
  out.polys.resize(cap + 1);
  out.sqmat.resize(cap + 1);
  for (int d = 0; d <= m.cap && d + shift <= cap; ++d) {
    out.labels[d + shift] = m.labels[d];
    out.polys[d + shift] = m.polys[d];
  }
  for (int d = 0; d + shift <= cap; ++d) {
    for (int k = 1; d + shift + k <= cap; ++k) {
      if (d <= m.cap && d + k <= m.cap)
        out.sqmat[d + shift].push_back(m.sq_matrix(k, d));
      else
        out.sqmat[d + shift].push_back(GF2Matrix(out.dim(d + shift + k), out.dim(d + shift)));
    }
  }
  return out;
}
}  // namespace

TakayasuComplex build_takayasu(int n, int cap) {
  if (n < 1 || n > 3) throw std::invalid_argument("build_takayasu: 1 <= n <= 3 required");
  TakayasuComplex T;
  T.n = n;
  T.cap = cap;
  // position 0: omega_n L_n; position k+1 (k = 0..n): suspended omega-power module
  T.terms.push_back(build_steinberg(Flavor::Lprime, n, cap).mod);
  for (int k = 0; k <= n; ++k) {
    int shift = (1 << k) - 1;
    SteinbergModule W = build_steinberg(k == 0 ? Flavor::L : Flavor::OmegaPowerL, n - k,
                                        cap - shift, shift);
    T.terms.push_back(suspend(W.mod, shift, cap));
  }
  // delta_0: inclusion
  {
    GradedMap f;
    f.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix mat(T.terms[1].dim(d), T.terms[0].dim(d));
      for (int c = 0; c < T.terms[0].dim(d); ++c) {
        auto x = solve_in_span(T.terms[1].polys[d], T.terms[0].polys[d][c]);
        if (!x) throw std::logic_error("build_takayasu: inclusion failed");
        for (size_t r = 0; r < x->size(); ++r)
          if (x->get(r)) mat.set(r, c, true);
      }
      f.mats[d] = std::move(mat);
    }
    T.deltas.push_back(std::move(f));
  }
  // delta_k, k = 1..n: coefficient of x_m^{2^{k-1}} out of position k into k+1
  for (int k = 1; k <= n; ++k) {
    const GradedModule& src = T.terms[k];
    const GradedModule& dst = T.terms[k + 1];
    int j = 1 << (k - 1);
    GradedMap f;
    f.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix mat(dst.dim(d), src.dim(d));
      for (int c = 0; c < src.dim(d); ++c) {
        Poly coeff = coeff_of_last_var(src.polys[d][c], j);
        if (coeff.is_zero()) continue;
        auto x = solve_in_span(dst.polys[d], coeff);
        if (!x) throw std::logic_error("build_takayasu: coefficient escapes the target");
        for (size_t r = 0; r < x->size(); ++r)
          if (x->get(r)) mat.set(r, c, true);
      }
      f.mats[d] = std::move(mat);
    }
    T.deltas.push_back(std::move(f));
  }
  return T;
}

Report verify_takayasu(const ResolutionComplex& R, const TakayasuComplex& T) {
  if (R.n != T.n || R.cap != T.cap)
    throw std::invalid_argument("verify_takayasu: complexes built with different parameters");
  Report rep;
  rep.title = "takayasu";
  rep.params = json{{"n", T.n}, {"cap", T.cap}};
  int n = T.n, cap = T.cap;
  bool composites = true, linear = true, exact = true, euler = true;
  for (int k = 0; k + 1 <= n; ++k)
    for (int d = 0; d <= cap; ++d)
      if (!(T.deltas[k + 1].mats[d] * T.deltas[k].mats[d]).is_zero()) composites = false;
  rep.add("consecutive_composites_zero", composites);
  for (int k = 0; k <= n; ++k)
    linear = linear && map_commutes_with_sq(T.deltas[k], T.terms[k], T.terms[k + 1]);
  rep.add("maps_commute_with_squares", linear);
  for (int d = 0; d <= cap; ++d) {
    std::vector<int> dims;
    for (int k = 0; k <= n + 1; ++k) dims.push_back(T.terms[k].dim(d));
    std::vector<size_t> ranks;
    for (int k = 0; k <= n; ++k) ranks.push_back(T.deltas[k].mats[d].rank());
    if ((int)ranks[0] != dims[0]) exact = false;
    if ((int)ranks[n] != dims[n + 1]) exact = false;
    for (int pos = 1; pos <= n; ++pos)
      if ((int)(ranks[pos - 1] + ranks[pos]) != dims[pos]) exact = false;
    long long chi = 0;
    for (int k = 0; k <= n + 1; ++k) chi += (k % 2 == 0 ? 1 : -1) * dims[k];
    if (chi != 0) euler = false;
  }
  rep.add("exact_at_every_position", exact);
  rep.add("euler_characteristic_zero", euler);
  // vertical maps into the resolution terms
  // V_0 = id on omega_n L_n; V_1: L_n -> L_n (x) J(0); V_{k+1} uses the top class
  std::vector<GradedMap> vert(n + 2);
  {
    GradedMap v;
    v.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) v.mats[d] = GF2Matrix::identity(T.terms[0].dim(d));
    vert[0] = std::move(v);
  }
  for (int k = 0; k <= n; ++k) {
    const GradedModule& U = T.terms[k + 1];
    const TensorModule& dst = R.terms[k];
    int shift = (1 << k) - 1;
    // g-coordinates of the top class of J(2^k - 1)
    BitVec topg;
    if (k == 0) {
      topg = BitVec(1);
      topg.set(0, true);
    } else {
      const GBasis& G = R.J[k];
      Echelon e(G.to_mono[shift]);
      BitVec mono(G.jmod.dim(shift));
      // the top class is the unique monomial in degree 2^k - 1
      if (G.jmod.dim(shift) != 1) throw std::logic_error("verify_takayasu: top class not unique");
      mono.set(0, true);
      auto x = e.solve(mono);
      if (!x) throw std::logic_error("verify_takayasu: top class unsolvable");
      topg = *x;
    }
    GradedMap v;
    v.mats.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix mat(dst.mod.dim(d), U.dim(d));
      for (int c = 0; c < U.dim(d); ++c) {
        const Poly& u = U.polys[d][c];
        int pd = d - shift;  // polynomial degree
        auto x = solve_in_span(R.L[n - k].mod.polys[pd], u);
        if (!x) throw std::logic_error("verify_takayasu: vertical image escapes the factor");
        for (size_t w = 0; w < x->size(); ++w) {
          if (!x->get(w)) continue;
          for (size_t gidx = 0; gidx < topg.size(); ++gidx)
            if (topg.get(gidx)) mat.flip(dst.pair_index(d, pd, (int)w, (int)gidx), c);
        }
      }
      v.mats[d] = std::move(mat);
    }
    vert[k + 1] = std::move(v);
  }
  bool squares = true;
  for (int k = 0; k <= n; ++k) {
    // vert_{k+1} o delta_k == f_k o vert_k
    for (int d = 0; d <= cap; ++d) {
      GF2Matrix lhs = vert[k + 1].mats[d] * T.deltas[k].mats[d];
      GF2Matrix rhs = R.maps[k].mats[d] * vert[k].mats[d];
      if (!(lhs == rhs)) squares = false;
    }
  }
  rep.add("squares_with_resolution_commute", squares);
  return rep;
}

}  // namespace unstable
