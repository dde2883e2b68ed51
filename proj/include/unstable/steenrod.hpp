#pragma once

#include "unstable/gf2_matrix.hpp"
#include "unstable/gf2_poly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace unstable {

// A square action on a polynomial algebra is determined by Sq^1 on the
// degree-1 generators together with the Cartan formula.  Sq^1(v_i) is the
// square of one partner variable (or zero).
struct SquareRule {
  enum class Kind { classical, twisted, miller };
  Kind kind = Kind::classical;
  int nvars = 0;

  static SquareRule classical(int nvars) { return {Kind::classical, nvars}; }
  // Sq^1(t_i) = t_{i-1}^2 for i >= 1, Sq^1(t_0) = t_{n-1}^2.
  static SquareRule twisted(int nvars) { return {Kind::twisted, nvars}; }
  // Sq^1(t_i) = t_{i-1}^2 for i >= 1, Sq^1(t_0) = 0.
  static SquareRule miller(int nvars) { return {Kind::miller, nvars}; }

  // Index of the variable whose square is Sq^1(v_i), or -1.
  int partner(int i) const;
};

Poly sq(const SquareRule& rule, int k, const Poly& f);
// All components Sq^0 f, ..., Sq^{deg f} f at once.
std::vector<Poly> total_square(const SquareRule& rule, const Poly& f);

// Classical action shorthands.
Poly sq(int k, const Poly& f);
Poly twisted_sq(int k, const Poly& f, int nvars);

// Total square with an auxiliary variable prepended:
// sum_k x_0^{deg f - k} Sq^k(f), homogeneous of degree 2 deg f in nvars+1
// variables.
Poly total_square_with_variable(const Poly& f);

// Graded module with a stored square action.  Basis data may be polynomial
// backed; sq matrices are stored for every k >= 1 with d + k <= cap.
struct GradedModule {
  int cap = 0;
  std::optional<int> bounded_top;  // set when the module vanishes above this degree
  int poly_degree_offset = 0;      // module degree = poly degree + offset
  std::vector<std::vector<std::string>> labels;  // [degree]
  std::vector<std::vector<Poly>> polys;          // may be empty lists for abstract modules
  std::vector<std::vector<GF2Matrix>> sqmat;     // sqmat[d][k-1]: dim(d+k) x dim(d)

  int dim(int d) const {
    return (d >= 0 && d <= cap) ? static_cast<int>(labels[d].size()) : 0;
  }
  std::vector<int> dims() const;
  // Matrix of Sq^k out of degree d (zero matrix when k > d or out of range).
  GF2Matrix sq_matrix(int k, int d) const;
  int top_nonzero() const;
};

// Build a module from per-degree polynomial bases; asserts degreewise linear
// independence and closure under the action.
GradedModule module_from_polys(const SquareRule& rule,
                               const std::vector<std::vector<Poly>>& basis,
                               const std::vector<std::vector<std::string>>& labels, int cap,
                               std::optional<int> bounded_top = std::nullopt);

// Smallest graded subspace containing the generators and closed under all
// squares up to cap, with a canonical reduced basis per degree.
GradedModule close_under_action(const SquareRule& rule, const std::vector<Poly>& generators,
                                int cap);

// Degree-preserving (up to an optional shift) map between graded modules,
// stored as one matrix per source degree.
struct GradedMap {
  int shift = 0;
  std::vector<GF2Matrix> mats;  // [source degree]

  const GF2Matrix& at(int d) const { return mats[d]; }
};

// Does the map commute with every stored square in range?
bool map_commutes_with_sq(const GradedMap& f, const GradedModule& src, const GradedModule& dst);

// Basis of the space of degree-0 maps M -> N commuting with all squares.
// Requires N bounded with caps covering its top degree.
std::vector<GradedMap> hom_space(const GradedModule& M, const GradedModule& N);

// Tensor product with Cartan squares assembled from the factor matrices.
struct TensorModule {
  GradedModule mod;
  std::vector<int> dimsA, dimsB;
  // pairs[d] lists (dA, iA, iB) in order; dB = d - dA.
  std::vector<std::vector<std::array<int, 3>>> pairs;

  int pair_index(int d, int dA, int iA, int iB) const;
};

TensorModule tensor_module(const GradedModule& A, const GradedModule& B, int cap);

// Coordinates of a homogeneous target in the span of homogeneous polynomials
// of the same degree; nullopt when not in the span.
std::optional<BitVec> solve_in_span(const std::vector<Poly>& span, const Poly& target);

}  // namespace unstable
