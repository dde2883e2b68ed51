#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unstable {

// C(a,b) mod 2 by Lucas: odd iff the bits of b form a subset of the bits of a.
// In particular b > a gives 0 and b = 0 gives 1.
inline bool binom_mod2(uint64_t a, uint64_t b) { return (a & b) == b; }

// Monomial in a fixed list of variables, stored as an exponent vector.
struct Mon {
  std::vector<int> e;

  Mon() = default;
  explicit Mon(std::vector<int> exps) : e(std::move(exps)) {}

  int nvars() const { return static_cast<int>(e.size()); }
  int degree() const;
};

// Global total order: graded, ties broken lexicographically with the first
// variable most significant. Within one degree this is plain lex order.
bool operator<(const Mon& a, const Mon& b);
bool operator==(const Mon& a, const Mon& b);
inline bool operator!=(const Mon& a, const Mon& b) { return !(a == b); }
inline bool operator>(const Mon& a, const Mon& b) { return b < a; }

Mon operator*(const Mon& a, const Mon& b);

// GF(2) polynomial: a finite set of distinct monomials (coefficients are
// implicitly 1), kept sorted in strictly decreasing order.
struct Poly {
  int nv = 0;
  std::vector<Mon> terms;

  Poly() = default;
  explicit Poly(int nvars) : nv(nvars) {}

  static Poly zero(int nvars) { return Poly(nvars); }
  static Poly one(int nvars);
  static Poly monomial(Mon m);
  static Poly variable(int i, int nvars);  // x_i, 0-based

  bool is_zero() const { return terms.empty(); }
  // Degree of the leading monomial; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Poly homogeneous_part(int d) const;
  int min_degree() const;

  const Mon& leading() const { return terms.front(); }
  bool contains(const Mon& m) const;

  std::string str(const std::string& var = "x") const;
};

bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

Poly operator+(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly& operator+=(Poly& a, const Poly& b);

Poly pow(const Poly& p, int e);
// p with every exponent multiplied by 2^t (Frobenius twist).
Poly frobenius(const Poly& p, int t);

// Variable plumbing.
Poly pad_vars(const Poly& p, int new_nvars);
// Renames x_i to x_{i+offset} inside a polynomial on new_nvars variables.
Poly shift_vars(const Poly& p, int offset, int new_nvars);
// Coefficient of x_last^j, as a polynomial in the first nv-1 variables.
Poly coeff_of_last_var(const Poly& p, int j);
// All exponents of the last variable that occur.
std::vector<int> last_var_exponents(const Poly& p);
// Substitute x_i := value (a polynomial in the same variables).
Poly substitute(const Poly& p, int i, const Poly& value);

// All monomials of the given degree, in decreasing order.
const std::vector<Mon>& monomials_of_degree(int nvars, int degree);
// Index of m inside monomials_of_degree(m.nvars(), m.degree()).
int monomial_index(const Mon& m);
size_t monomial_space_dim(int nvars, int degree);

}  // namespace unstable
