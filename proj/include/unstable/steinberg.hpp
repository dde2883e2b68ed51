#pragma once

#include "unstable/matrix_algebra.hpp"
#include "unstable/report.hpp"
#include "unstable/steenrod.hpp"

#include <vector>

namespace unstable {

// Product of all nonzero linear forms in n variables (degree 2^n - 1).
Poly omega(int n);
// Product of the forms with x_k-coefficient 1 supported on x_1..x_k
// (degree 2^{k-1}), as a polynomial in n variables.
Poly mui_V(int k, int n);
// Dickson generator of degree 2^n - 2^i, from the expansion of
// prod_{v in F_2^n} (X + v.x) = sum_i Q_{n,i} X^{2^i} + X^{2^n}.
Poly dickson_Q(int n, int i);
// det(x_j^{2^{i-1}}) expanded over permutations.
Poly moore_determinant(int n);

// Basis label (i_1, ..., i_n) with i_1 > 2 i_2 > ... > 2^{n-1} i_n >= 0.
using OmegaLabel = std::vector<int>;
std::string omega_label_str(const OmegaLabel& l);
// All labels of total degree <= cap with i_n >= min_last, ordered by degree
// then lexicographically.
std::vector<OmegaLabel> steinberg_labels(int n, int cap, int min_last);

enum class Flavor { M, L, Lprime, OmegaPowerL };

struct SteinbergModule {
  int n = 0;
  Flavor flavor = Flavor::M;
  int power = 0;  // omega_n exponent multiplying the L basis (Lprime: 1)
  GradedModule mod;
  std::vector<std::vector<OmegaLabel>> olabels;  // [degree]
};

// Labeled basis e_n . w_1^{i_1-2i_2} ... w_n^{i_n} (times omega_n^power for
// the omega flavors), with square matrices; fails if the labeled elements are
// dependent or the span is not closed.
SteinbergModule build_steinberg(Flavor flavor, int n, int cap, int power = 1);
SteinbergModule build_steinberg(Flavor flavor, int n, int cap, int power,
                                const AlgebraAction& en_action);

// Graded basis of the ideal D(n) omega_n^i with square matrices.
struct DicksonModule {
  int n = 0;
  int power = 0;
  GradedModule mod;
};
DicksonModule dickson_module(int n, int power, int cap);

// Degreewise equality of the four descriptions of L_n: the labeled basis
// span, e_n.(x_1...x_n), omega_n . M_n, and the intersection of the
// two-variable Steinberg slices.
Report verify_steinberg_characterizations(int n, int cap);

// Coordinates of each basis element of `whole` in the tensor basis
// left (x) right under the variable split (x_1..x_k | x_{k+1}..x_n).
struct CoproductData {
  TensorModule target;
  GradedMap map;
};
CoproductData coproduct_split(const SteinbergModule& whole, const SteinbergModule& left,
                              const SteinbergModule& right, int cap);

// Both ways of iterating the splitting L_n -> L_1 (x) ... agree.
Report verify_coassociativity(int n, int cap);

// Expansion of a labeled basis element by powers of the last variable: the
// coefficient of x_n^{i_n} is the (n-1)-variable element for the truncated
// label, and every other exponent is larger with coefficient inside L_{n-1}.
Report verify_last_variable_expansion(int n, const OmegaLabel& label, int cap);

}  // namespace unstable
