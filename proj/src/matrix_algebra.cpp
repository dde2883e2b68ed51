#include "unstable/matrix_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace unstable {

MatrixN MatrixN::identity(int n) {
  MatrixN m{n, 0};
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

MatrixN mat_mul(const MatrixN& a, const MatrixN& b) {
  assert(a.n == b.n);
  MatrixN out{a.n, 0};
  for (int i = 0; i < a.n; ++i) {
    uint64_t acc = 0;
    uint64_t arow = a.row(i);
    while (arow) {
      int j = std::countr_zero(arow);
      arow &= arow - 1;
      acc ^= b.row(j);
    }
    out.bits |= acc << (i * a.n);
  }
  return out;
}

AlgebraElement AlgebraElement::from_matrices(int n, std::vector<MatrixN> mats) {
  std::sort(mats.begin(), mats.end());
  std::vector<MatrixN> out;
  for (size_t i = 0; i < mats.size();) {
    size_t j = i;
    while (j < mats.size() && mats[j] == mats[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(mats[i]);
    i = j;
  }
  return AlgebraElement{n, std::move(out)};
}

AlgebraElement alg_multiply(const AlgebraElement& u, const AlgebraElement& v) {
  if (u.n != v.n) throw std::invalid_argument("alg_multiply: dimension mismatch");
  std::vector<MatrixN> prods;
  prods.reserve(u.support.size() * v.support.size());
  for (const MatrixN& a : u.support)
    for (const MatrixN& b : v.support) prods.push_back(mat_mul(a, b));
  return AlgebraElement::from_matrices(u.n, std::move(prods));
}

Poly act(const MatrixN& sigma, const Poly& f) {
  if (sigma.n != f.nv) throw std::invalid_argument("act: dimension mismatch");
  int n = sigma.n;
  // x_i -> column i of sigma read as a linear form
  std::vector<Poly> forms(n, Poly(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sigma.get(j, i)) forms[i] += Poly::variable(j, n);
  Poly out(n);
  for (const Mon& m : f.terms) {
    Poly term = Poly::one(n);
    for (int i = 0; i < n; ++i)
      if (m.e[i] > 0) term = term * pow(forms[i], m.e[i]);
    out += term;
  }
  return out;
}

Poly alg_act(const AlgebraElement& u, const Poly& f) {
  if (u.n != f.nv) throw std::invalid_argument("alg_act: dimension mismatch");
  Poly out(f.nv);
  for (const MatrixN& s : u.support) out += act(s, f);
  return out;
}

AlgebraElement borel_sum(int n) {
  // Unit diagonal with free strictly-upper entries.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::vector<MatrixN> mats;
  for (uint64_t mask = 0; mask < (uint64_t(1) << slots.size()); ++mask) {
    MatrixN m = MatrixN::identity(n);
    for (size_t t = 0; t < slots.size(); ++t)
      if ((mask >> t) & 1) m.set(slots[t].first, slots[t].second, true);
    mats.push_back(m);
  }
  return AlgebraElement::from_matrices(n, std::move(mats));
}

AlgebraElement symmetric_sum(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<MatrixN> mats;
  do {
    MatrixN m{n, 0};
    for (int j = 0; j < n; ++j) m.set(perm[j], j, true);
    mats.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return AlgebraElement::from_matrices(n, std::move(mats));
}

AlgebraElement steinberg_idempotent(int n) {
  if (n < 1) throw std::invalid_argument("steinberg_idempotent: n >= 1 required");
  return alg_multiply(borel_sum(n), symmetric_sum(n));
}

namespace {
MatrixN embed_matrix(const MatrixN& m, int offset, int n) {
  MatrixN out = MatrixN::identity(n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out.set(offset + i, offset + j, m.get(i, j));
  return out;
}
}  // namespace

AlgebraElement embedded_idempotent(EmbedKind kind, int k_or_i, int n) {
  switch (kind) {
    case EmbedKind::leading_block: {
      int k = k_or_i;
      if (k < 1 || k > n) throw std::invalid_argument("embedded_idempotent: block size out of range");
      AlgebraElement ek = steinberg_idempotent(k);
      std::vector<MatrixN> mats;
      for (const MatrixN& m : ek.support) mats.push_back(embed_matrix(m, 0, n));
      return AlgebraElement::from_matrices(n, std::move(mats));
    }
    case EmbedKind::pair_block: {
      int i = k_or_i;
      if (i < 1 || i > n - 1) throw std::invalid_argument("embedded_idempotent: pair index out of range");
      AlgebraElement e2 = steinberg_idempotent(2);
      std::vector<MatrixN> mats;
      for (const MatrixN& m : e2.support) mats.push_back(embed_matrix(m, i - 1, n));
      return AlgebraElement::from_matrices(n, std::move(mats));
    }
    case EmbedKind::projector_last: {
      MatrixN m = MatrixN::identity(n);
      m.set(n - 1, n - 1, false);
      return AlgebraElement::single(m);
    }
  }
  throw std::invalid_argument("embedded_idempotent: unknown kind");
}

Report verify_hecke(int n, int /*threads*/) {
  if (n < 2 || n > 4) throw std::invalid_argument("verify_hecke: 2 <= n <= 4 required");
  Report rep;
  rep.title = "hecke";
  rep.params = json{{"n", n}};
  AlgebraElement en = steinberg_idempotent(n);
  rep.add("steinberg_support_size", true, json{{"size", en.support.size()}});
  AlgebraElement sq_ = alg_multiply(en, en);
  rep.add("idempotent", sq_ == en);
  for (int i = 1; i <= n - 1; ++i) {
    AlgebraElement e2i = embedded_idempotent(EmbedKind::pair_block, i, n);
    rep.add("absorb_right_i" + std::to_string(i), alg_multiply(en, e2i) == en);
    rep.add("absorb_left_i" + std::to_string(i), alg_multiply(e2i, en) == en);
  }
  AlgebraElement eprev = embedded_idempotent(EmbedKind::leading_block, n - 1, n);
  AlgebraElement e2last = embedded_idempotent(EmbedKind::pair_block, n - 1, n);
  AlgebraElement prod = alg_multiply(alg_multiply(eprev, e2last), eprev);
  rep.add("factorization", prod == en);
  return rep;
}

AlgebraAction::AlgebraAction(const AlgebraElement& u, int cap, int threads)
    : nv_(u.n), cap_(cap) {
  mats_.reserve(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    size_t dim = monomial_space_dim(nv_, d);
    mats_.push_back(GF2Matrix(dim, dim));
  }
  // Index remaps for multiplication by x_j: degree d-1 -> degree d.
  std::vector<std::vector<std::vector<int>>> remap(cap + 1);
  for (int d = 1; d <= cap; ++d) {
    const auto& lower = monomials_of_degree(nv_, d - 1);
    remap[d].assign(nv_, std::vector<int>(lower.size()));
    for (int j = 0; j < nv_; ++j)
      for (size_t c = 0; c < lower.size(); ++c) {
        Mon m = lower[c];
        m.e[j] += 1;
        remap[d][j][c] = monomial_index(m);
      }
  }
  // Process support matrices in chunks: per sigma keep only a rolling pair of
  // degreewise substitution matrices (columns = images of monomials).
  const size_t chunk = 64;
  auto run_chunk = [&](size_t lo, size_t hi, std::vector<GF2Matrix>& acc) {
    size_t cnt = hi - lo;
    std::vector<std::vector<BitVec>> prev(cnt), cur(cnt);
    for (size_t t = 0; t < cnt; ++t) prev[t] = {BitVec(1)};
    for (size_t t = 0; t < cnt; ++t) prev[t][0].set(0, true);
    for (size_t t = 0; t < cnt; ++t)
      for (size_t c = 0; c < 1; ++c)
        if (prev[t][c].get(0)) acc[0].flip(0, c);
    for (int d = 1; d <= cap; ++d) {
      const auto& mons = monomials_of_degree(nv_, d);
      size_t dim = mons.size();
      size_t lodim = monomial_space_dim(nv_, d - 1);
      for (size_t t = 0; t < cnt; ++t) {
        const MatrixN& sigma = u.support[lo + t];
        cur[t].assign(dim, BitVec(dim));
        for (size_t c = 0; c < dim; ++c) {
          // factor out the first variable with positive exponent
          int i = 0;
          while (mons[c].e[i] == 0) ++i;
          Mon m2 = mons[c];
          m2.e[i] -= 1;
          const BitVec& base = prev[t][monomial_index(m2)];
          BitVec& dst = cur[t][c];
          for (int j = 0; j < nv_; ++j) {
            if (!sigma.get(j, i)) continue;
            const auto& rm = remap[d][j];
            for (size_t lw = 0; lw < lodim; ++lw)
              if (base.get(lw)) dst.flip(rm[lw]);
          }
        }
        for (size_t c = 0; c < dim; ++c)
          for (size_t r = 0; r < dim; ++r)
            if (cur[t][c].get(r)) acc[d].flip(r, c);
      }
      prev.swap(cur);
    }
  };
  size_t nchunks = (u.support.size() + chunk - 1) / chunk;
  if (threads <= 1 || nchunks <= 1) {
    for (size_t ch = 0; ch < nchunks; ++ch)
      run_chunk(ch * chunk, std::min(u.support.size(), (ch + 1) * chunk), mats_);
  } else {
    std::vector<std::vector<GF2Matrix>> partial(nchunks);
    for (size_t ch = 0; ch < nchunks; ++ch) {
      partial[ch].reserve(cap + 1);
      for (int d = 0; d <= cap; ++d) {
        size_t dim = monomial_space_dim(nv_, d);
        partial[ch].push_back(GF2Matrix(dim, dim));
      }
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    int nthreads = std::min<size_t>(threads, nchunks);
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          size_t ch = next.fetch_add(1);
          if (ch >= nchunks) return;
          run_chunk(ch * chunk, std::min(u.support.size(), (ch + 1) * chunk), partial[ch]);
        }
      });
    for (auto& th : pool) th.join();
    for (size_t ch = 0; ch < nchunks; ++ch)
      for (int d = 0; d <= cap; ++d) mats_[d] = mats_[d] + partial[ch][d];
  }
}

Poly AlgebraAction::apply(const Poly& f) const {
  if (f.is_zero()) return f;
  if (!f.is_homogeneous()) throw std::invalid_argument("AlgebraAction::apply: inhomogeneous");
  int d = f.degree();
  const auto& mons = monomials_of_degree(nv_, d);
  BitVec v(mons.size());
  for (const Mon& m : f.terms) v.flip(monomial_index(m));
  BitVec w = mats_.at(d).apply(v);
  Poly out(nv_);
  for (size_t i = 0; i < mons.size(); ++i)
    if (w.get(i)) out.terms.push_back(mons[i]);
  std::sort(out.terms.begin(), out.terms.end(), std::greater<Mon>());
  return out;
}

}  // namespace unstable
