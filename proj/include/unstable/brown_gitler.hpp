#pragma once

#include "unstable/matrix_algebra.hpp"
#include "unstable/report.hpp"
#include "unstable/steenrod.hpp"

#include <optional>
#include <set>
#include <vector>

namespace unstable {

// Second grading on Miller's algebra: w(t_i) = 2^i.
int bg_weight(const Mon& m);

// Dimensions of J(k) by degree (index 0..k), by monomial enumeration.
std::vector<int> j_dims(int k);

// J(k) as the weight-k span of F_2[t_0, t_1, ...] with the Sq^1(t_i) = t_{i-1}^2
// rule; degrees above min(cap, k) are empty.
GradedModule j_basis(int k, int cap);

// Product in Miller's algebra (weights add).
Poly bg_multiply(const Poly& u, const Poly& v);

// Sequence (i_1, ..., i_k) with 0 < i_1 <= 2 i_2 <= ... <= 2^{k-1} i_k = 2^{k-1}.
using MincSeq = std::vector<int>;
std::string minc_label_str(const MincSeq& s);
std::vector<MincSeq> minc_sequences(int k, int d);
long long count_minc_sequences(int k, int d);

// The mutually inverse maps between sequences and weight-(2^k - 1) monomials.
Mon minc_to_monomial(const MincSeq& s, int k);
MincSeq monomial_to_minc(const Mon& m, int k);
Report verify_minc_bijection(int k);

// The unique nonzero map L_1 -> J(2^s), normalized on x^{2^s}; produced by the
// hom solver, never by a closed formula.
GradedMap pi_map(int s, const GradedModule& L1, const GradedModule& J2s);

// Shared data for the maps g_s = mu (pi_{s-1} (x) ... (x) pi_0).
struct GSystem {
  int smax = 0;
  GradedModule L1;                // ideal (x), capped high enough for every pi
  std::vector<GradedModule> J2t;  // J(2^t), t = 0..smax-1
  std::vector<GradedMap> pis;     // pi_t
};
GSystem build_g_system(int smax);

// g_s applied to x_1^{a_1} ... x_s^{a_s} (all a_i >= 1), as an element of
// Miller's algebra on s variables.
Poly g_apply(const GSystem& sys, const std::vector<int>& exps);

// J(2^s - 1) together with the basis g_s(x^I), I a Minc sequence.
struct GBasis {
  int s = 0;
  GradedModule jmod;                         // monomial basis
  std::vector<std::vector<MincSeq>> glabels;  // [degree]
  std::vector<GF2Matrix> to_mono;             // columns: g elements in monomial coords
  GradedModule gmod;                          // same module in the g basis
};
GBasis build_g_basis(const GSystem& sys, int s);

// L_1^{(x) s} realized as the ideal (x_1 ... x_s) with the classical action.
GradedModule l1_power_module(int s, int cap);

// Matrix of g_s on the all-exponents-positive monomials of degree d, into the
// monomial basis of J(2^s - 1).
GF2Matrix g_matrix(const GSystem& sys, int s, int d);

// Normal form of an exponent tuple modulo the two-variable relations and the
// last-variable reduction; empty set when the degree exceeds 2^n - 1.
std::set<std::vector<int>> rewrite_admissible(const std::vector<int>& a, int n);

// ker g_n = sum of the relation submodules, and quotient dimensions match
// J(2^n - 1), degree by degree.
Report presentation_check(int n);

// If the lex-leading monomial of P is not admissible (each exponent at least
// twice the next), produce a matrix strictly raising it; nullopt otherwise.
std::optional<MatrixN> lex_raise(const Poly& P);

// A matrix sigma such that sigma . P contains x_1^{2^{n-1}} x_2^{2^{n-2}} ... x_n,
// for nonzero homogeneous P of degree 2^n - 1.
MatrixN generator_witness(const Poly& P, int n);
std::optional<MatrixN> generator_witness_brute(const Poly& P, int n);

// Weight classes of the twisted algebra are closed under the action, and the
// projection onto J(2^n - 1) commutes with every square.
Report campbell_selick_check(int n, int cap);

}  // namespace unstable
