#include "unstable/brown_gitler.hpp"

#include "unstable/steinberg.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unstable {

int bg_weight(const Mon& m) {
  int w = 0;
  for (int h = 0; h < m.nvars(); ++h) w += m.e[h] << h;
  return w;
}

namespace {
int bg_nvars(int k) {
  int h = 0;
  while ((2 << h) <= k) ++h;
  return h + 1;  // t_0 .. t_h
}

// All exponent vectors on `nv` variables with weight k, collected by degree.
void weight_monomials(int k, int nv, std::vector<std::vector<Mon>>& by_degree, int degree_cap) {
  std::vector<int> e(nv, 0);
  std::function<void(int, int, int)> rec = [&](int h, int left, int deg) {
    if (deg > degree_cap) return;
    if (h < 0) {
      if (left == 0) by_degree[deg].push_back(Mon(e));
      return;
    }
    int unit = 1 << h;
    for (int a = left / unit; a >= 0; --a) {
      e[h] = a;
      rec(h - 1, left - a * unit, deg + a);
    }
    e[h] = 0;
  };
  rec(nv - 1, k, 0);
}
}  // namespace

std::vector<int> j_dims(int k) {
  int nv = bg_nvars(std::max(k, 1));
  std::vector<std::vector<Mon>> by_degree(k + 1);
  weight_monomials(k, nv, by_degree, k);
  std::vector<int> dims(k + 1, 0);
  for (int d = 0; d <= k; ++d) dims[d] = (int)by_degree[d].size();
  return dims;
}

GradedModule j_basis(int k, int cap) {
  if (k < 0) {
    // J(k) = 0 for negative k
    GradedModule z;
    z.cap = std::max(cap, 0);
    z.bounded_top = 0;
    z.labels.resize(z.cap + 1);
    z.polys.resize(z.cap + 1);
    z.sqmat.resize(z.cap + 1);
    return z;
  }
  int nv = bg_nvars(std::max(k, 1));
  int top = std::min(k, cap);
  std::vector<std::vector<Mon>> by_degree(top + 1);
  weight_monomials(k, nv, by_degree, top);
  std::vector<std::vector<Poly>> basis(cap + 1);
  std::vector<std::vector<std::string>> labels(cap + 1);
  for (int d = 0; d <= top; ++d) {
    // descending monomial order within the degree
    std::sort(by_degree[d].begin(), by_degree[d].end(), std::greater<Mon>());
    for (const Mon& m : by_degree[d]) {
      basis[d].push_back(Poly::monomial(m));
      labels[d].push_back(Poly::monomial(m).str("t"));
    }
  }
  GradedModule M = module_from_polys(SquareRule::miller(nv), basis, labels, cap,
                                     cap >= k ? std::optional<int>(k) : std::nullopt);
  return M;
}

Poly bg_multiply(const Poly& u, const Poly& v) {
  int nv = std::max(u.nv, v.nv);
  return pad_vars(u, nv) * pad_vars(v, nv);
}

std::string minc_label_str(const MincSeq& s) {
  std::ostringstream os;
  os << "g[";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "]";
  return os.str();
}

namespace {
void minc_rec(int k, int pos, int d_left, std::vector<int>& acc, std::vector<MincSeq>& out) {
  if (pos == k - 1) {
    // last entry must be 1 and respect the chain
    if (d_left != 1) return;
    if (!acc.empty() && acc.back() > 2) return;
    acc.push_back(1);
    out.push_back(acc);
    acc.pop_back();
    return;
  }
  int lo = 1;
  for (int v = lo; v <= d_left - (k - 1 - pos); ++v) {
    if (!acc.empty() && acc.back() > 2 * v) continue;  // i_{pos-1} <= 2 i_pos
    acc.push_back(v);
    minc_rec(k, pos + 1, d_left - v, acc, out);
    acc.pop_back();
  }
}
}  // namespace

std::vector<MincSeq> minc_sequences(int k, int d) {
  std::vector<MincSeq> out;
  if (k == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  if (d < k) return out;
  std::vector<int> acc;
  minc_rec(k, 0, d, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

long long count_minc_sequences(int k, int d) { return (long long)minc_sequences(k, d).size(); }

Mon minc_to_monomial(const MincSeq& s, int k) {
  if ((int)s.size() != k) throw std::invalid_argument("minc_to_monomial: length mismatch");
  std::vector<int> alpha(k, 0);
  alpha[0] = 2 * s[0] - 1;
  for (int h = 1; h < k; ++h) alpha[h] = 2 * s[h] - s[h - 1];
  for (int a : alpha)
    if (a < 0) throw std::logic_error("minc_to_monomial: negative exponent");
  return Mon(alpha);
}

MincSeq monomial_to_minc(const Mon& m, int k) {
  // i_1 = (alpha_0 + 1)/2, i_{h+1} = (alpha_h + i_h)/2
  std::vector<int> alpha = m.e;
  alpha.resize(k, 0);
  MincSeq s(k, 0);
  int prev = 1;  // treat as i_0 with alpha_{-1} convention: i_1 = (alpha_0+1)/2
  if ((alpha[0] + 1) % 2 != 0) throw std::logic_error("monomial_to_minc: not integral");
  s[0] = (alpha[0] + 1) / 2;
  prev = s[0];
  for (int h = 1; h < k; ++h) {
    if ((alpha[h] + prev) % 2 != 0) throw std::logic_error("monomial_to_minc: not integral");
    s[h] = (alpha[h] + prev) / 2;
    prev = s[h];
  }
  return s;
}

Report verify_minc_bijection(int k) {
  Report rep;
  rep.title = "minc_bijection";
  rep.params = json{{"k", k}};
  bool forward_ok = true, inverse_ok = true, counts_ok = true;
  std::vector<int> dims = j_dims((1 << k) - 1);
  for (int d = 0; d <= (1 << k) - 1; ++d) {
    std::vector<MincSeq> seqs = minc_sequences(k, d);
    if ((int)seqs.size() != dims[d]) counts_ok = false;
    for (const MincSeq& s : seqs) {
      Mon m = minc_to_monomial(s, k);
      if (m.degree() != d || bg_weight(m) != (1 << k) - 1) forward_ok = false;
      if (monomial_to_minc(m, k) != s) inverse_ok = false;
    }
  }
  rep.add("forward_lands_in_module", forward_ok);
  rep.add("round_trip_identity", inverse_ok);
  rep.add("counts_agree", counts_ok);
  return rep;
}

GradedMap pi_map(int s, const GradedModule& L1, const GradedModule& J2s) {
  std::vector<GradedMap> maps = hom_space(L1, J2s);
  if (maps.size() != 1)
    throw std::logic_error("pi_map: hom space dimension " + std::to_string(maps.size()) +
                           " (expected 1) for s = " + std::to_string(s));
  GradedMap f = std::move(maps[0]);
  // normalization: the fundamental class is hit
  int top = 1 << s;
  if (f.mats[top].rows() != 1 || f.mats[top].cols() != 1 || !f.mats[top].get(0, 0))
    throw std::logic_error("pi_map: map does not send x^{2^s} to the fundamental class");
  return f;
}

GSystem build_g_system(int smax) {
  GSystem sys;
  sys.smax = smax;
  int cap = std::max(2, (1 << smax) - 1);
  SquareRule rule = SquareRule::classical(1);
  std::vector<std::vector<Poly>> basis(cap + 1);
  for (int d = 1; d <= cap; ++d) basis[d].push_back(pow(Poly::variable(0, 1), d));
  sys.L1 = module_from_polys(rule, basis, {}, cap);
  for (int t = 0; t < smax; ++t) {
    sys.J2t.push_back(j_basis(1 << t, std::min(cap, 1 << t)));
    // pi_t needs L1.cap >= 2^t, satisfied by construction
    sys.pis.push_back(pi_map(t, sys.L1, sys.J2t.back()));
  }
  return sys;
}

Poly g_apply(const GSystem& sys, const std::vector<int>& exps) {
  int s = (int)exps.size();
  if (s > sys.smax) throw std::invalid_argument("g_apply: s exceeds the prepared system");
  Poly out = Poly::one(std::max(s, 1));
  for (int i = 0; i < s; ++i) {
    int t = s - 1 - i;  // factor i receives pi_{s-1-i}
    int a = exps[i];
    if (a < 1) throw std::invalid_argument("g_apply: exponents must be >= 1");
    const GradedModule& J = sys.J2t[t];
    if (a > J.cap) return Poly::zero(std::max(s, 1));
    const GF2Matrix& mat = sys.pis[t].mats[a];
    Poly val(J.dim(a) > 0 ? J.polys[a][0].nv : 1);
    bool nonzero = false;
    for (int r = 0; r < J.dim(a); ++r)
      if (mat.get(r, 0)) {
        val += J.polys[a][r];
        nonzero = true;
      }
    if (!nonzero) return Poly::zero(std::max(s, 1));
    out = bg_multiply(out, val);
  }
  return pad_vars(out, std::max(s, 1));
}

GBasis build_g_basis(const GSystem& sys, int s) {
  GBasis G;
  G.s = s;
  int k = (1 << s) - 1;
  G.jmod = j_basis(k, k);
  G.glabels.resize(k + 1);
  G.to_mono.resize(k + 1);
  std::vector<std::vector<Poly>> gpolys(k + 1);
  std::vector<std::vector<std::string>> glabels_str(k + 1);
  int nv = std::max(bg_nvars(std::max(k, 1)), 1);
  for (int d = 0; d <= k; ++d) {
    std::vector<MincSeq> seqs = minc_sequences(s, d);
    std::vector<BitVec> cols;
    for (const MincSeq& seq : seqs) {
      std::vector<int> exps(seq.begin(), seq.end());
      Poly g = pad_vars(g_apply(sys, exps), nv);
      if (g.is_zero()) throw std::logic_error("build_g_basis: labeled image vanished");
      BitVec v(G.jmod.dim(d));
      auto x = solve_in_span(G.jmod.polys[d], g);
      if (!x) throw std::logic_error("build_g_basis: image not in the module");
      v = *x;
      cols.push_back(v);
      G.glabels[d].push_back(seq);
      gpolys[d].push_back(g);
      glabels_str[d].push_back(minc_label_str(seq));
    }
    G.to_mono[d] = GF2Matrix::from_columns(cols, G.jmod.dim(d));
    if (G.to_mono[d].rank() != (size_t)G.jmod.dim(d) || cols.size() != (size_t)G.jmod.dim(d))
      throw std::logic_error("build_g_basis: images are not a basis in degree " + std::to_string(d));
  }
  G.gmod = module_from_polys(SquareRule::miller(nv), gpolys, glabels_str, k,
                             std::optional<int>(k));
  return G;
}

GradedModule l1_power_module(int s, int cap) {
  std::vector<std::vector<Poly>> basis(cap + 1);
  for (int d = s; d <= cap; ++d) {
    for (const Mon& m : monomials_of_degree(s, d)) {
      bool ok = true;
      for (int x : m.e)
        if (x == 0) ok = false;
      if (ok) basis[d].push_back(Poly::monomial(m));
    }
  }
  return module_from_polys(SquareRule::classical(s), basis, {}, cap);
}

GF2Matrix g_matrix(const GSystem& sys, int s, int d) {
  int k = (1 << s) - 1;
  GradedModule jm = j_basis(k, std::min(d, k));
  std::vector<Mon> doms;
  for (const Mon& m : monomials_of_degree(s, d)) {
    bool ok = true;
    for (int x : m.e)
      if (x == 0) ok = false;
    if (ok) doms.push_back(m);
  }
  GF2Matrix out(d <= k ? jm.dim(d) : 0, doms.size());
  if (d > k) return out;
  for (size_t c = 0; c < doms.size(); ++c) {
    Poly g = g_apply(sys, doms[c].e);
    if (g.is_zero()) continue;
    auto x = solve_in_span(jm.polys[d], pad_vars(g, jm.polys[d].empty() ? g.nv : jm.polys[d][0].nv));
    if (!x) throw std::logic_error("g_matrix: image not in the module");
    for (size_t r = 0; r < x->size(); ++r)
      if (x->get(r)) out.set(r, c, true);
  }
  return out;
}

std::set<std::vector<int>> rewrite_admissible(const std::vector<int>& a, int n) {
  if ((int)a.size() != n) throw std::invalid_argument("rewrite_admissible: length mismatch");
  for (int x : a)
    if (x < 1) throw std::invalid_argument("rewrite_admissible: exponents must be >= 1");
  int deg = std::accumulate(a.begin(), a.end(), 0);
  std::set<std::vector<int>> done;
  if (deg > (1 << n) - 1) return done;
  std::set<std::vector<int>> pending{a};
  auto toggle = [](std::set<std::vector<int>>& s, const std::vector<int>& t) {
    auto it = s.find(t);
    if (it == s.end())
      s.insert(t);
    else
      s.erase(it);
  };
  long long guard = 1000000;
  while (!pending.empty()) {
    if (--guard < 0) throw std::logic_error("rewrite_admissible: step guard exceeded");
    std::vector<int> t = *pending.rbegin();
    pending.erase(std::prev(pending.end()));
    // leftmost violation
    int i = -1;
    for (int p = 0; p + 1 < n; ++p)
      if (t[p] > 2 * t[p + 1]) {
        i = p;
        break;
      }
    if (i < 0) {
      if (t[n - 1] == 1) toggle(done, t);
      // a trailing exponent >= 2 lies in the last relation submodule
      continue;
    }
    int ai = t[i], aj = t[i + 1];
    for (int j = 1; j <= aj; ++j) {
      bool coeff = binom_mod2(aj, j) ^ binom_mod2(ai - aj, j);
      if (!coeff) continue;
      std::vector<int> u = t;
      u[i] = aj + j;
      u[i + 1] = ai - j;
      toggle(pending, u);
    }
    for (int j = aj + 1; j <= ai - aj - 1; ++j) {
      if (!binom_mod2(ai - aj, j)) continue;
      std::vector<int> u = t;
      u[i] = aj + j;
      u[i + 1] = ai - j;
      toggle(pending, u);
    }
  }
  return done;
}

Report presentation_check(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("presentation_check: 2 <= n <= 4 required");
  Report rep;
  rep.title = "presentation";
  int cap = (1 << n) - 1;
  rep.params = json{{"n", n}, {"cap", cap}};
  GSystem sys = build_g_system(n);
  SteinbergModule L2 = build_steinberg(Flavor::L, 2, cap);
  std::vector<int> jd = j_dims(cap);
  bool dims_ok = true, kernel_ok = true, surj_ok = true;
  json dim_table = json::array();
  for (int d = n; d <= cap; ++d) {
    // domain: monomials with all exponents >= 1
    std::vector<Mon> doms;
    for (const Mon& m : monomials_of_degree(n, d)) {
      bool ok = true;
      for (int x : m.e)
        if (x == 0) ok = false;
      if (ok) doms.push_back(m);
    }
    std::map<Mon, int, std::greater<Mon>> dom_index;
    for (size_t i = 0; i < doms.size(); ++i) dom_index.emplace(doms[i], (int)i);
    // relation columns
    std::vector<BitVec> rel_cols;
    auto add_poly = [&](const Poly& p) {
      BitVec v(doms.size());
      for (const Mon& m : p.terms) {
        auto it = dom_index.find(m);
        if (it == dom_index.end()) throw std::logic_error("presentation_check: term outside the ideal");
        v.flip(it->second);
      }
      rel_cols.push_back(std::move(v));
    };
    for (int i = 1; i <= n - 1; ++i) {
      for (int e2 = 4; e2 <= d; ++e2) {
        for (const Poly& b : L2.mod.polys[e2]) {
          Poly emb = shift_vars(b, i - 1, n);
          std::function<void(int, int, Poly)> fill = [&](int var, int left, Poly cur) {
            if (var == n) {
              if (left == 0) add_poly(cur);
              return;
            }
            if (var == i - 1 || var == i) {
              fill(var + 1, left, cur);
              return;
            }
            for (int e = 1; e <= left; ++e)
              fill(var + 1, left - e, cur * pow(Poly::variable(var, n), e));
          };
          fill(0, d - e2, emb);
        }
      }
    }
    // last-variable relations: monomials with final exponent >= 2
    for (size_t i = 0; i < doms.size(); ++i)
      if (doms[i].e[n - 1] >= 2) {
        BitVec v(doms.size());
        v.set(i, true);
        rel_cols.push_back(std::move(v));
      }
    GF2Matrix rel = GF2Matrix::from_columns(rel_cols, doms.size());
    size_t rel_rank = rel.rank();
    size_t quotient = doms.size() - rel_rank;
    int target = (d <= cap) ? jd[d] : 0;
    if ((int)quotient != target) dims_ok = false;
    // the map itself
    GF2Matrix g = g_matrix(sys, n, d);
    size_t grank = g.rank();
    if ((int)grank != target) surj_ok = false;
    // relations die under g, and the kernel has no more than the relations
    GF2Matrix composed = g * rel;
    if (!composed.is_zero()) kernel_ok = false;
    if (doms.size() - grank != rel_rank) kernel_ok = false;
    dim_table.push_back(json{{"degree", d},
                             {"ideal_dim", doms.size()},
                             {"relation_rank", rel_rank},
                             {"quotient_dim", quotient},
                             {"target_dim", target}});
  }
  rep.add("quotient_dims_match", dims_ok, dim_table);
  rep.add("map_surjective", surj_ok);
  rep.add("kernel_equals_relations", kernel_ok);
  return rep;
}

std::optional<MatrixN> lex_raise(const Poly& P) {
  if (P.is_zero() || !P.is_homogeneous())
    throw std::invalid_argument("lex_raise: nonzero homogeneous input required");
  int n = P.nv;
  const Mon& m = P.leading();
  int s = -1;  // 0-based index of the violating position (pair s-1, s in 1-based terms)
  for (int p = 1; p < n; ++p)
    if (2 * m.e[p] > m.e[p - 1]) {
      s = p;
      break;
    }
  if (s < 0) return std::nullopt;
  // group of terms sharing every exponent outside positions s-1, s
  Poly Q(2);
  for (const Mon& t : P.terms) {
    bool same = true;
    for (int p = 0; p < n; ++p)
      if (p != s - 1 && p != s && t.e[p] != m.e[p]) same = false;
    if (same) Q.terms.push_back(Mon(std::vector<int>{t.e[s - 1], t.e[s]}));
  }
  std::sort(Q.terms.begin(), Q.terms.end(), std::greater<Mon>());
  // factor out (x y (x+y))^q with q maximal
  auto min_exp = [](const Poly& p, int var) {
    int mn = 1 << 30;
    for (const Mon& t : p.terms) mn = std::min(mn, t.e[var]);
    return mn;
  };
  Poly xy = Poly::variable(0, 2) + Poly::variable(1, 2);
  auto transvect = [&](const Poly& p) {  // y := x + y
    return substitute(p, 1, xy);
  };
  Poly R = transvect(Q);
  int q = std::min({min_exp(Q, 0), min_exp(Q, 1), min_exp(R, 1)});
  Poly Qp = Q;
  // divide by x^q y^q
  for (Mon& t : Qp.terms) {
    t.e[0] -= q;
    t.e[1] -= q;
  }
  // divide by (x+y)^q via the involutive change of variables
  Qp = transvect(Qp);
  for (Mon& t : Qp.terms) t.e[1] -= q;
  std::sort(Qp.terms.begin(), Qp.terms.end(), std::greater<Mon>());
  Qp = transvect(Qp);
  bool pure_x = false, pure_y = false;
  for (const Mon& t : Qp.terms) {
    if (t.e[1] == 0) pure_x = true;
    if (t.e[0] == 0) pure_y = true;
  }
  if (pure_x) throw std::logic_error("lex_raise: impossible leading factorization");
  MatrixN sigma = MatrixN::identity(n);
  if (pure_y) {
    // swap x_{s-1} and x_s
    sigma.set(s - 1, s - 1, false);
    sigma.set(s, s, false);
    sigma.set(s - 1, s, true);
    sigma.set(s, s - 1, true);
  } else {
    // transvection x_s := x_{s-1} + x_s
    sigma.set(s - 1, s, true);
  }
  return sigma;
}

namespace {
Mon witness_target(int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = 1 << (n - 1 - i);
  return Mon(e);
}

Poly drop_first_var(const Poly& p) {
  Poly out(p.nv - 1);
  for (const Mon& m : p.terms) {
    if (m.e[0] != 0) throw std::logic_error("drop_first_var: leftover exponent");
    out.terms.push_back(Mon(std::vector<int>(m.e.begin() + 1, m.e.end())));
  }
  std::sort(out.terms.begin(), out.terms.end(), std::greater<Mon>());
  return out;
}

MatrixN embed_tail(const MatrixN& t, int n) {
  // t acts on the last n-1 coordinates
  MatrixN out = MatrixN::identity(n);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j) out.set(i + 1, j + 1, t.get(i, j));
  return out;
}
}  // namespace

MatrixN generator_witness(const Poly& P0, int n) {
  if (P0.is_zero() || !P0.is_homogeneous() || P0.degree() != (1 << n) - 1 || P0.nv != n)
    throw std::invalid_argument("generator_witness: need nonzero homogeneous degree 2^n - 1");
  Poly P = P0;
  MatrixN acc = MatrixN::identity(n);
  long long guard = 4 * (long long)monomial_space_dim(n, P.degree()) + 8;
  while (auto sig = lex_raise(P)) {
    Poly P2 = act(*sig, P);
    if (!(P.leading() < P2.leading())) throw std::logic_error("generator_witness: no lex progress");
    P = std::move(P2);
    acc = mat_mul(*sig, acc);
    if (--guard < 0) throw std::logic_error("generator_witness: raise guard exceeded");
  }
  if (n == 1) {
    if (!P.contains(witness_target(1))) throw std::logic_error("generator_witness: base case failed");
    return acc;
  }
  int H = 1 << (n - 1);
  // P = x_1^H f + R with deg_{x_1} R < H
  Poly f(n);
  for (const Mon& m : P.terms)
    if (m.e[0] >= H) {
      Mon t = m;
      t.e[0] -= H;
      f.terms.push_back(t);
    }
  std::sort(f.terms.begin(), f.terms.end(), std::greater<Mon>());
  if (f.is_zero()) throw std::logic_error("generator_witness: admissible leading term lost");
  for (uint64_t mask = 1; mask < (uint64_t(1) << (n - 1)); ++mask) {
    Poly u(n);
    for (int j = 0; j < n - 1; ++j)
      if ((mask >> j) & 1) u += Poly::variable(j + 1, n);
    Poly Q = substitute(f, 0, u);
    if (Q.is_zero()) continue;
    MatrixN tau_small = generator_witness(drop_first_var(Q), n - 1);
    MatrixN tau = embed_tail(tau_small, n);
    MatrixN sigma_u = MatrixN::identity(n);
    for (int j = 0; j < n - 1; ++j)
      if ((mask >> j) & 1) sigma_u.set(j + 1, 0, true);
    MatrixN result = mat_mul(tau, mat_mul(sigma_u, acc));
    if (!act(result, P0).contains(witness_target(n)))
      throw std::logic_error("generator_witness: construction failed to expose the target");
    return result;
  }
  // f vanished on every nonzero substitution: the target already appears
  if (!act(acc, P0).contains(witness_target(n)))
    throw std::logic_error("generator_witness: product case failed");
  return acc;
}

std::optional<MatrixN> generator_witness_brute(const Poly& P, int n) {
  Mon target = witness_target(n);
  for (uint64_t bits = 0; bits < (uint64_t(1) << (n * n)); ++bits) {
    MatrixN sigma{n, bits};
    if (act(sigma, P).contains(target)) return sigma;
  }
  return std::nullopt;
}

Report campbell_selick_check(int n, int cap) {
  if (n < 1 || n > 3) throw std::invalid_argument("campbell_selick_check: 1 <= n <= 3 required");
  Report rep;
  rep.title = "campbell_selick";
  rep.params = json{{"n", n}, {"cap", cap}};
  int N = (1 << n) - 1;
  SquareRule tw = SquareRule::twisted(n);
  // (a) weight classes mod 2^n - 1 are preserved
  bool classes_ok = true;
  for (int d = 0; d <= cap; ++d)
    for (const Mon& m : monomials_of_degree(n, d)) {
      int w = bg_weight(m) % N;
      for (int k = 1; k <= d && d + k <= cap; ++k)
        for (const Mon& t : sq(tw, k, Poly::monomial(m)).terms)
          if (bg_weight(t) % N != w) classes_ok = false;
    }
  rep.add("weight_classes_preserved", classes_ok);
  // (b) the projection onto the weight-exactly-N part commutes with squares
  std::vector<std::vector<Poly>> basis(cap + 1);
  for (int d = 0; d <= cap; ++d)
    for (const Mon& m : monomials_of_degree(n, d)) basis[d].push_back(Poly::monomial(m));
  GradedModule src = module_from_polys(tw, basis, {}, cap);
  GradedModule jm = j_basis(N, cap);
  GradedMap proj;
  proj.mats.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    GF2Matrix mat(jm.dim(d), src.dim(d));
    for (int c = 0; c < src.dim(d); ++c) {
      const Mon& m = src.polys[d][c].leading();
      if (bg_weight(m) != N) continue;
      // same exponents, read in the t-hat variables (both sides use n of them)
      auto x = solve_in_span(jm.polys[d], Poly::monomial(m));
      if (!x) throw std::logic_error("campbell_selick_check: projected monomial missing");
      for (size_t r = 0; r < x->size(); ++r)
        if (x->get(r)) mat.set(r, c, true);
    }
    proj.mats[d] = std::move(mat);
  }
  rep.add("projection_commutes_with_squares", map_commutes_with_sq(proj, src, jm));
  return rep;
}

}  // namespace unstable
