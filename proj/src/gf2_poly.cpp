#include "unstable/gf2_poly.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unstable {

int Mon::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

bool operator<(const Mon& a, const Mon& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

bool operator==(const Mon& a, const Mon& b) { return a.e == b.e; }

Mon operator*(const Mon& a, const Mon& b) {
  assert(a.nvars() == b.nvars());
  Mon r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

Poly Poly::one(int nvars) {
  Poly p(nvars);
  p.terms.push_back(Mon(std::vector<int>(nvars, 0)));
  return p;
}

Poly Poly::monomial(Mon m) {
  Poly p(m.nvars());
  p.terms.push_back(std::move(m));
  return p;
}

Poly Poly::variable(int i, int nvars) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return monomial(Mon(std::move(e)));
}

int Poly::degree() const { return terms.empty() ? -1 : terms.front().degree(); }

int Poly::min_degree() const { return terms.empty() ? -1 : terms.back().degree(); }

bool Poly::is_homogeneous() const {
  return terms.empty() || terms.front().degree() == terms.back().degree();
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(nv);
  for (const Mon& m : terms)
    if (m.degree() == d) r.terms.push_back(m);
  return r;
}

bool Poly::contains(const Mon& m) const {
  return std::binary_search(terms.begin(), terms.end(), m, std::greater<Mon>());
}

std::string Poly::str(const std::string& var) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Mon& m : terms) {
    if (!first) os << " + ";
    first = false;
    bool any = false;
    for (int i = 0; i < m.nvars(); ++i) {
      if (m.e[i] == 0) continue;
      if (any) os << "*";
      any = true;
      os << var << (i + 1);
      if (m.e[i] > 1) os << "^" << m.e[i];
    }
    if (!any) os << "1";
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) { return a.nv == b.nv && a.terms == b.terms; }

Poly operator+(const Poly& a, const Poly& b) {
  if (a.nv != b.nv) throw std::invalid_argument("Poly+: variable counts differ");
  Poly r(a.nv);
  std::set_symmetric_difference(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                                std::back_inserter(r.terms), std::greater<Mon>());
  return r;
}

Poly& operator+=(Poly& a, const Poly& b) {
  a = a + b;
  return a;
}

namespace {
// Sort descending and cancel pairs (mod-2 collection).
void normalize(std::vector<Mon>& v) {
  std::sort(v.begin(), v.end(), std::greater<Mon>());
  std::vector<Mon> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}
}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nv != b.nv) throw std::invalid_argument("Poly*: variable counts differ");
  std::vector<Mon> prods;
  prods.reserve(a.terms.size() * b.terms.size());
  for (const Mon& m : a.terms)
    for (const Mon& m2 : b.terms) prods.push_back(m * m2);
  normalize(prods);
  Poly r(a.nv);
  r.terms = std::move(prods);
  return r;
}

Poly frobenius(const Poly& p, int t) {
  Poly r(p.nv);
  r.terms = p.terms;
  for (Mon& m : r.terms)
    for (int& x : m.e) x <<= t;
  return r;  // exponent scaling preserves the order
}

Poly pow(const Poly& p, int e) {
  if (e < 0) throw std::invalid_argument("pow: negative exponent");
  Poly r = Poly::one(p.nv);
  for (int t = 0; e >> t; ++t)
    if ((e >> t) & 1) r = r * frobenius(p, t);
  return r;
}

Poly pad_vars(const Poly& p, int new_nvars) { return shift_vars(p, 0, new_nvars); }

Poly shift_vars(const Poly& p, int offset, int new_nvars) {
  if (offset + p.nv > new_nvars) throw std::invalid_argument("shift_vars: out of range");
  Poly r(new_nvars);
  r.terms.reserve(p.terms.size());
  for (const Mon& m : p.terms) {
    std::vector<int> e(new_nvars, 0);
    for (int i = 0; i < p.nv; ++i) e[i + offset] = m.e[i];
    r.terms.push_back(Mon(std::move(e)));
  }
  std::sort(r.terms.begin(), r.terms.end(), std::greater<Mon>());
  return r;
}

Poly coeff_of_last_var(const Poly& p, int j) {
  if (p.nv == 0) throw std::invalid_argument("coeff_of_last_var: no variables");
  Poly r(p.nv - 1);
  for (const Mon& m : p.terms) {
    if (m.e.back() != j) continue;
    r.terms.push_back(Mon(std::vector<int>(m.e.begin(), m.e.end() - 1)));
  }
  std::sort(r.terms.begin(), r.terms.end(), std::greater<Mon>());
  return r;
}

std::vector<int> last_var_exponents(const Poly& p) {
  std::vector<int> out;
  for (const Mon& m : p.terms) out.push_back(m.e.back());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poly substitute(const Poly& p, int i, const Poly& value) {
  Poly r(p.nv);
  for (const Mon& m : p.terms) {
    Mon rest = m;
    int e = rest.e.at(i);
    rest.e[i] = 0;
    r += Poly::monomial(rest) * pow(value, e);
  }
  return r;
}

namespace {
void enumerate_rec(int nvars, int degree, std::vector<int>& acc, std::vector<Mon>& out) {
  if (nvars == 1) {
    acc.push_back(degree);
    out.push_back(Mon(acc));
    acc.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    acc.push_back(e);
    enumerate_rec(nvars - 1, degree - e, acc, out);
    acc.pop_back();
  }
}

std::mutex g_mon_mutex;
std::map<std::pair<int, int>, std::vector<Mon>> g_mon_cache;
}  // namespace

const std::vector<Mon>& monomials_of_degree(int nvars, int degree) {
  std::lock_guard<std::mutex> lock(g_mon_mutex);
  auto key = std::make_pair(nvars, degree);
  auto it = g_mon_cache.find(key);
  if (it != g_mon_cache.end()) return it->second;
  std::vector<Mon> mons;
  if (nvars == 0) {
    if (degree == 0) mons.push_back(Mon(std::vector<int>{}));
  } else {
    std::vector<int> acc;
    enumerate_rec(nvars, degree, acc, mons);
  }
  // enumerate_rec already yields decreasing lex order within the degree
  return g_mon_cache.emplace(key, std::move(mons)).first->second;
}

int monomial_index(const Mon& m) {
  const auto& mons = monomials_of_degree(m.nvars(), m.degree());
  auto it = std::lower_bound(mons.begin(), mons.end(), m, std::greater<Mon>());
  if (it == mons.end() || !(*it == m)) throw std::logic_error("monomial_index: not found");
  return static_cast<int>(it - mons.begin());
}

size_t monomial_space_dim(int nvars, int degree) {
  return monomials_of_degree(nvars, degree).size();
}

}  // namespace unstable
