#include "unstable/steinberg.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unstable {

namespace {
std::mutex g_omega_mutex;
std::map<int, Poly> g_omega_cache;
}  // namespace

Poly omega(int n) {
  if (n == 0) return Poly::one(0);
  {
    std::lock_guard<std::mutex> lock(g_omega_mutex);
    auto it = g_omega_cache.find(n);
    if (it != g_omega_cache.end()) return it->second;
  }
  Poly prod = Poly::one(n);
  for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
    Poly form(n);
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1) form += Poly::variable(j, n);
    prod = prod * form;
  }
  std::lock_guard<std::mutex> lock(g_omega_mutex);
  g_omega_cache.emplace(n, prod);
  return prod;
}

Poly mui_V(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("mui_V: k out of range");
  Poly prod = Poly::one(n);
  for (uint64_t mask = 0; mask < (uint64_t(1) << (k - 1)); ++mask) {
    Poly form = Poly::variable(k - 1, n);
    for (int j = 0; j < k - 1; ++j)
      if ((mask >> j) & 1) form += Poly::variable(j, n);
    prod = prod * form;
  }
  return prod;
}

Poly dickson_Q(int n, int i) {
  if (i < 0 || i > n - 1) throw std::invalid_argument("dickson_Q: index out of range");
  // Auxiliary variable X is the last one.
  Poly prod = Poly::one(n + 1);
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    Poly form = Poly::variable(n, n + 1);
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1) form += Poly::variable(j, n + 1);
    prod = prod * form;
  }
  return coeff_of_last_var(prod, 1 << i);
}

Poly moore_determinant(int n) {
  // Row i (1-based) holds x_j^{2^{i-1}}; the determinant over GF(2) is the
  // permutation sum.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly out(n);
  do {
    std::vector<int> e(n, 0);
    for (int i = 0; i < n; ++i) e[perm[i]] = 1 << i;
    out += Poly::monomial(Mon(std::move(e)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string omega_label_str(const OmegaLabel& l) {
  std::ostringstream os;
  os << "w[";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) os << ",";
    os << l[i];
  }
  os << "]";
  return os.str();
}

namespace {
void labels_rec(int n, int pos, int cap, int min_last, int prev2, std::vector<int>& acc,
                std::vector<OmegaLabel>& out) {
  // prev2 = value that 2^{pos} i_{pos+1} must be strictly below, already scaled:
  // we track the raw inequality i_{pos} > 2 i_{pos+1} instead.
  if (pos == n) {
    out.push_back(acc);
    return;
  }
  int remaining = n - pos - 1;
  int sum = std::accumulate(acc.begin(), acc.end(), 0);
  int lo = (pos == n - 1) ? min_last : 0;
  int hi = cap - sum;
  for (int v = lo; v <= hi; ++v) {
    if (pos > 0 && acc[pos - 1] <= 2 * v) break;  // chain i_{pos-1} > 2 i_pos
    // the tail still needs the chain to stay strict down to >= min_last
    acc.push_back(v);
    labels_rec(n, pos + 1, cap, min_last, 0, acc, out);
    acc.pop_back();
  }
  (void)prev2;
  (void)remaining;
}
}  // namespace

std::vector<OmegaLabel> steinberg_labels(int n, int cap, int min_last) {
  std::vector<OmegaLabel> out;
  if (n == 0) {
    if (cap >= 0) out.push_back({});
    return out;
  }
  // enumerate from the last index upward instead: generate recursively with
  // i_k > 2 i_{k+1}; simplest is to enumerate i_1 first descending-free and
  // prune by the chain, which labels_rec does.
  std::vector<int> acc;
  labels_rec(n, 0, cap, min_last, 0, acc, out);
  std::sort(out.begin(), out.end(), [](const OmegaLabel& a, const OmegaLabel& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

SteinbergModule build_steinberg(Flavor flavor, int n, int cap, int power) {
  if (n == 0) {
    SteinbergModule S;
    S.n = 0;
    S.flavor = flavor;
    S.power = (flavor == Flavor::M || flavor == Flavor::L) ? 0 : power;
    std::vector<std::vector<Poly>> basis(1);
    std::vector<std::vector<std::string>> labels(1);
    basis[0].push_back(Poly::one(0));
    labels[0].push_back("w[]");
    S.mod = module_from_polys(SquareRule::classical(0), basis, labels, cap);
    S.olabels.resize(cap + 1);
    S.olabels[0].push_back({});
    return S;
  }
  int label_cap = cap;
  if (flavor == Flavor::Lprime) power = 1;
  if (flavor == Flavor::Lprime || flavor == Flavor::OmegaPowerL)
    label_cap = cap - power * ((1 << n) - 1);
  AlgebraAction en(steinberg_idempotent(n), std::max(label_cap, 0));
  return build_steinberg(flavor, n, cap, power, en);
}

SteinbergModule build_steinberg(Flavor flavor, int n, int cap, int power,
                                const AlgebraAction& en_action) {
  if (n < 1) throw std::invalid_argument("build_steinberg: use n >= 1 with an action");
  SteinbergModule S;
  S.n = n;
  S.flavor = flavor;
  S.power = (flavor == Flavor::M || flavor == Flavor::L) ? 0 : (flavor == Flavor::Lprime ? 1 : power);
  int shift = S.power * ((1 << n) - 1);
  int label_cap = cap - shift;
  int min_last = (flavor == Flavor::M) ? 0 : 1;
  std::vector<OmegaLabel> all = steinberg_labels(n, std::max(label_cap, -1), min_last);
  Poly omega_pow = S.power > 0 ? pow(omega(n), S.power) : Poly::one(n);

  std::vector<std::vector<Poly>> basis(cap + 1);
  std::vector<std::vector<std::string>> labels(cap + 1);
  S.olabels.resize(cap + 1);
  for (const OmegaLabel& l : all) {
    int deg = std::accumulate(l.begin(), l.end(), 0);
    if (deg > label_cap) continue;
    Poly p = Poly::one(n);
    for (int k = 0; k < n; ++k) {
      int a = l[k] - (k + 1 < n ? 2 * l[k + 1] : 0);
      if (a < 0) throw std::logic_error("build_steinberg: bad label");
      if (a > 0) p = p * pow(pad_vars(omega(k + 1), n), a);
    }
    Poly elt = en_action.apply(p);
    if (elt.is_zero())
      throw std::logic_error("build_steinberg: labeled element vanished (" + omega_label_str(l) + ")");
    if (S.power > 0) elt = elt * omega_pow;
    basis[deg + shift].push_back(std::move(elt));
    labels[deg + shift].push_back(omega_label_str(l));
    S.olabels[deg + shift].push_back(l);
  }
  S.mod = module_from_polys(SquareRule::classical(n), basis, labels, cap);
  return S;
}

DicksonModule dickson_module(int n, int power, int cap) {
  if (n < 1 || n > 3) throw std::invalid_argument("dickson_module: 1 <= n <= 3 required");
  DicksonModule D;
  D.n = n;
  D.power = power;
  std::vector<Poly> gens;
  std::vector<int> degs;
  for (int i = 0; i < n; ++i) {
    gens.push_back(dickson_Q(n, i));
    degs.push_back((1 << n) - (1 << i));
  }
  Poly w = pow(omega(n), power);
  int base = power * ((1 << n) - 1);
  std::vector<std::vector<Poly>> basis(cap + 1);
  std::vector<std::vector<std::string>> labels(cap + 1);
  // Enumerate Dickson monomials Q_{n,0}^{a_0} ... Q_{n,n-1}^{a_{n-1}}.
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int deg) {
    if (pos == n) {
      Poly p = w;
      for (int i = 0; i < n; ++i)
        if (a[i] > 0) p = p * pow(gens[i], a[i]);
      std::ostringstream os;
      os << "Q^[";
      for (int i = 0; i < n; ++i) os << (i ? "," : "") << a[i];
      os << "]w^" << power;
      basis[deg].push_back(p);
      labels[deg].push_back(os.str());
      return;
    }
    for (int v = 0; deg + v * degs[pos] <= cap; ++v) {
      a[pos] = v;
      rec(pos + 1, deg + v * degs[pos]);
    }
    a[pos] = 0;
  };
  if (base <= cap) rec(0, base);
  D.mod = module_from_polys(SquareRule::classical(n), basis, labels, cap);
  return D;
}

namespace {
// Column matrix of the coordinates of polys in the degree-d monomial space.
GF2Matrix poly_columns(const std::vector<Poly>& polys, int nv, int d) {
  std::vector<BitVec> cols;
  for (const Poly& p : polys) {
    BitVec v(monomial_space_dim(nv, d));
    for (const Mon& m : p.terms) v.flip(monomial_index(m));
    cols.push_back(std::move(v));
  }
  return GF2Matrix::from_columns(cols, monomial_space_dim(nv, d));
}

GF2Matrix rows_from_bitvecs(const std::vector<BitVec>& rows, size_t cols) {
  if (rows.empty()) return GF2Matrix(0, cols);
  return GF2Matrix::from_rows(rows, cols);
}

// Canonical form of a span given by columns.
GF2Matrix canon_of_columns(const GF2Matrix& cols) {
  return cols.transposed().row_space_canonical();
}

// Monomials with every exponent >= 1.
std::vector<Mon> ideal_monomials(int nv, int d) {
  std::vector<Mon> out;
  for (const Mon& m : monomials_of_degree(nv, d)) {
    bool ok = true;
    for (int x : m.e)
      if (x == 0) ok = false;
    if (ok) out.push_back(m);
  }
  return out;
}
}  // namespace

Report verify_steinberg_characterizations(int n, int cap) {
  if (n < 2 || n > 3) throw std::invalid_argument("verify_steinberg_characterizations: n in {2,3}");
  Report rep;
  rep.title = "steinberg_characterizations";
  rep.params = json{{"n", n}, {"cap", cap}};
  AlgebraAction en(steinberg_idempotent(n), cap);
  SteinbergModule L = build_steinberg(Flavor::L, n, cap, 1, en);
  SteinbergModule M = build_steinberg(Flavor::M, n, cap, 1, en);
  SteinbergModule L2 = build_steinberg(Flavor::L, 2, cap, 1);
  int wdeg = (1 << n) - 1;
  bool all_ok = true;
  for (int d = 0; d <= cap; ++d) {
    size_t space = monomial_space_dim(n, d);
    // 1) labeled basis span
    GF2Matrix s1 = canon_of_columns(poly_columns(L.mod.polys[d], n, d));
    // 2) e_n . (x_1...x_n) ideal
    std::vector<BitVec> cols2;
    for (const Mon& m : ideal_monomials(n, d)) cols2.push_back(en.at(d).column(monomial_index(m)));
    GF2Matrix s2 = canon_of_columns(GF2Matrix::from_columns(cols2, space));
    // 3) omega_n . M_n
    std::vector<Poly> m3;
    if (d >= wdeg)
      for (const Poly& p : M.mod.polys[d - wdeg]) m3.push_back(p * omega(n));
    GF2Matrix s3 = canon_of_columns(poly_columns(m3, n, d));
    // 4) intersection of the two-variable slices
    std::vector<GF2Matrix> slices;
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<Poly> span;
      for (int e2 = 4; e2 <= d; ++e2) {
        for (const Poly& b : L2.mod.polys[e2]) {
          Poly emb = shift_vars(b, i - 1, n);
          // complement monomials with all exponents >= 1 on the other n-2 vars
          int rest = d - e2;
          std::function<void(int, int, Poly)> fill = [&](int var, int left, Poly cur) {
            if (var == n) {
              if (left == 0) span.push_back(cur);
              return;
            }
            if (var == i - 1 || var == i) {
              fill(var + 1, left, cur);
              return;
            }
            for (int e = 1; e <= left; ++e)
              fill(var + 1, left - e, cur * pow(Poly::variable(var, n), e));
          };
          if (n == 2) {
            if (rest == 0) span.push_back(emb);
          } else {
            fill(0, rest, emb);
          }
        }
      }
      slices.push_back(poly_columns(span, n, d));
    }
    GF2Matrix s4(0, space);
    if (!slices.empty()) {
      GF2Matrix cur = slices[0];
      for (size_t i = 1; i < slices.size(); ++i) {
        std::vector<BitVec> inter = column_span_intersection(cur, slices[i]);
        std::vector<BitVec> cols;
        for (const BitVec& v : inter) cols.push_back(v);
        cur = GF2Matrix::from_columns(cols, space);
      }
      s4 = canon_of_columns(cur);
    }
    bool ok = (s1 == s2) && (s1 == s3) && (s1 == s4);
    all_ok = all_ok && ok;
    if (!ok)
      rep.add("degree_" + std::to_string(d), false,
              json{{"dims", {s1.rows(), s2.rows(), s3.rows(), s4.rows()}}});
  }
  rep.add("quadruple_equality_all_degrees", all_ok);
  return rep;
}

CoproductData coproduct_split(const SteinbergModule& whole, const SteinbergModule& left,
                              const SteinbergModule& right, int cap) {
  int nl = left.n, nr = right.n;
  if (nl + nr != whole.n) throw std::invalid_argument("coproduct_split: variable split mismatch");
  CoproductData out{tensor_module(left.mod, right.mod, cap), GradedMap{}};
  out.map.mats.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    GF2Matrix mat(out.target.mod.dim(d), whole.mod.dim(d));
    for (int c = 0; c < whole.mod.dim(d); ++c) {
      const Poly& P = whole.mod.polys[d][c];
      // split terms by the right-hand monomial
      std::map<Mon, Poly, std::greater<Mon>> by_right;
      for (const Mon& m : P.terms) {
        Mon mleft(std::vector<int>(m.e.begin(), m.e.begin() + nl));
        Mon mright(std::vector<int>(m.e.begin() + nl, m.e.end()));
        auto it = by_right.find(mright);
        if (it == by_right.end()) {
          Poly p(nl);
          p.terms.push_back(mleft);
          by_right.emplace(mright, std::move(p));
        } else {
          it->second += Poly::monomial(mleft);
        }
      }
      // stage 1: left coordinates; collect right-hand polys per (d_left, a)
      std::map<std::pair<int, int>, Poly> right_polys;
      for (auto& [mr, cp] : by_right) {
        if (cp.is_zero()) continue;
        int db = mr.degree();
        int da = d - db;
        auto x = solve_in_span(left.mod.polys[da], cp);
        if (!x) throw std::logic_error("coproduct_split: coefficient not in the left factor");
        for (size_t a = 0; a < x->size(); ++a) {
          if (!x->get(a)) continue;
          auto key = std::make_pair(da, (int)a);
          auto it = right_polys.find(key);
          if (it == right_polys.end()) {
            Poly p(nr);
            p.terms.push_back(mr);
            right_polys.emplace(key, std::move(p));
          } else {
            it->second += Poly::monomial(mr);
          }
        }
      }
      // stage 2: right coordinates
      for (auto& [key, rp] : right_polys) {
        if (rp.is_zero()) continue;
        auto [da, a] = key;
        int db = d - da;
        auto y = solve_in_span(right.mod.polys[db], rp);
        if (!y) throw std::logic_error("coproduct_split: remainder not in the right factor");
        for (size_t b = 0; b < y->size(); ++b)
          if (y->get(b)) mat.flip(out.target.pair_index(d, da, a, (int)b), c);
      }
    }
    out.map.mats[d] = std::move(mat);
  }
  return out;
}

Report verify_coassociativity(int n, int cap) {
  if (n != 3) throw std::invalid_argument("verify_coassociativity: n = 3 supported");
  Report rep;
  rep.title = "coassociativity";
  rep.params = json{{"n", n}, {"cap", cap}};
  SteinbergModule L3 = build_steinberg(Flavor::L, 3, cap);
  SteinbergModule L2 = build_steinberg(Flavor::L, 2, cap);
  SteinbergModule L1 = build_steinberg(Flavor::L, 1, cap);
  // Route A: (x1,x2 | x3) then (x1 | x2); route B: (x1 | x2,x3) then (x2 | x3).
  // Both land in L_1 (x) L_1 (x) L_1, whose basis is indexed by exponent
  // triples, so the composite coordinates can be compared directly.
  CoproductData a1 = coproduct_split(L3, L2, L1, cap);
  CoproductData a2 = coproduct_split(L2, L1, L1, cap);
  CoproductData b1 = coproduct_split(L3, L1, L2, cap);
  bool ok = true;
  for (int d = 0; d <= cap && ok; ++d) {
    for (int c = 0; c < L3.mod.dim(d) && ok; ++c) {
      std::map<std::array<int, 3>, int> ra, rb;
      for (size_t idx = 0; idx < a1.target.pairs[d].size(); ++idx) {
        if (!a1.map.mats[d].get(idx, c)) continue;
        auto [da, ia, ib] = a1.target.pairs[d][idx];
        int e3 = d - da;
        (void)ib;  // L_1 basis per degree is a single power
        for (size_t idx2 = 0; idx2 < a2.target.pairs[da].size(); ++idx2) {
          if (!a2.map.mats[da].get(idx2, ia)) continue;
          auto [e1, i1, i2] = a2.target.pairs[da][idx2];
          (void)i1;
          (void)i2;
          ra[{e1, da - e1, e3}] ^= 1;
        }
      }
      for (size_t idx = 0; idx < b1.target.pairs[d].size(); ++idx) {
        if (!b1.map.mats[d].get(idx, c)) continue;
        auto [e1, ia, ib] = b1.target.pairs[d][idx];
        (void)ia;
        int db = d - e1;
        for (size_t idx2 = 0; idx2 < a2.target.pairs[db].size(); ++idx2) {
          if (!a2.map.mats[db].get(idx2, ib)) continue;
          auto [e2, i1, i2] = a2.target.pairs[db][idx2];
          (void)i1;
          (void)i2;
          rb[{e1, e2, db - e2}] ^= 1;
        }
      }
      for (auto& [k, v] : ra)
        if (v % 2 != (rb.count(k) ? rb[k] % 2 : 0)) ok = false;
      for (auto& [k, v] : rb)
        if (v % 2 != (ra.count(k) ? ra[k] % 2 : 0)) ok = false;
    }
  }
  rep.add("coassociative", ok);
  return rep;
}

Report verify_last_variable_expansion(int n, const OmegaLabel& label, int cap) {
  if ((int)label.size() != n || n < 2)
    throw std::invalid_argument("verify_last_variable_expansion: bad label");
  Report rep;
  rep.title = "last_variable_expansion";
  rep.params = json{{"n", n}, {"label", label}};
  SteinbergModule Ln = build_steinberg(Flavor::L, n, cap);
  SteinbergModule Lprev = build_steinberg(Flavor::L, n - 1, cap);
  int d = std::accumulate(label.begin(), label.end(), 0);
  if (d > cap) throw std::invalid_argument("verify_last_variable_expansion: cap too small");
  const Poly* P = nullptr;
  for (int c = 0; c < Ln.mod.dim(d); ++c)
    if (Ln.olabels[d][c] == label) P = &Ln.mod.polys[d][c];
  if (!P) throw std::invalid_argument("verify_last_variable_expansion: label not admissible");
  int in = label.back();
  OmegaLabel head(label.begin(), label.end() - 1);
  int dh = d - in;
  const Poly* Ph = nullptr;
  for (int c = 0; c < Lprev.mod.dim(dh); ++c)
    if (Lprev.olabels[dh][c] == head) Ph = &Lprev.mod.polys[dh][c];
  rep.add("head_label_admissible", Ph != nullptr);
  if (Ph) rep.add("lead_coefficient_matches", coeff_of_last_var(*P, in) == *Ph);
  bool exps_ok = true, membership_ok = true;
  for (int j : last_var_exponents(*P)) {
    if (j == in) continue;
    if (j < in) exps_ok = false;
    Poly cj = coeff_of_last_var(*P, j);
    if (d - j > Lprev.mod.cap || !solve_in_span(Lprev.mod.polys[d - j], cj)) membership_ok = false;
  }
  rep.add("remaining_exponents_larger", exps_ok);
  rep.add("remaining_coefficients_in_lower_module", membership_ok);
  return rep;
}

}  // namespace unstable
