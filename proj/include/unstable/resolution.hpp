#pragma once

#include "unstable/brown_gitler.hpp"
#include "unstable/report.hpp"
#include "unstable/steenrod.hpp"
#include "unstable/steinberg.hpp"

#include <vector>

namespace unstable {

// The chain 0 -> omega_n L_n -> L_n -> L_{n-1} (x) J(1) -> ... -> J(2^n-1) -> 0
// with every term in the labeled pair basis.
struct ResolutionComplex {
  int n = 0;
  int cap = 0;
  std::vector<SteinbergModule> L;  // L_0 .. L_n
  SteinbergModule Lprime;          // omega_n L_n
  GSystem gsys;
  std::vector<GBasis> J;           // J(2^s - 1), s = 0..n
  std::vector<TensorModule> terms; // term s = L_{n-s} (x) J(2^s - 1)
  std::vector<GradedMap> maps;     // f_0: Lprime -> term 0; f_s: term s-1 -> term s
  // label counts used by the rank bookkeeping, indexed [s][degree]
  std::vector<std::vector<int>> countA, countB;
};

ResolutionComplex build_resolution(int n, int cap);

// Zero composites, A-linearity of every map, the two-variable vanishing
// composite, and the monomial-absence statement behind it.
Report verify_complex(const ResolutionComplex& R);

// Injectivity at the left end, surjectivity at the right end, rank-nullity
// bookkeeping at every interior position, rank equalities against the label
// counts, and the alternating dimension sum.
Report verify_exactness(const ResolutionComplex& R);

// Basis of the subspace of degree-t elements killed by every positive square.
// Requires enough cap above t (powers of two up to t) unless the module is
// bounded below the reach of the missing squares.
std::vector<BitVec> primitives(const GradedModule& M, int t);

// Dimensions of the cohomology of Hom(Sigma^t F_2, -) applied to the
// resolution, over 0 <= s <= n+1 and 0 <= t <= t_max, with minimality
// evidence (vanishing induced differentials).
Report ext_table(int n, int t_max);

// The spliced cofibration sequence with terms
// omega_{n-k}^{2^k-1} L_{n-k} (x) Sigma^{2^k-1} F_2.
struct TakayasuComplex {
  int n = 0;
  int cap = 0;
  std::vector<GradedModule> terms;  // positions 0..n+1
  std::vector<GradedMap> deltas;    // 0..n
};

TakayasuComplex build_takayasu(int n, int cap);

// Complex property, A-linearity, exactness, and the commuting squares with
// the resolution maps through the inclusion-of-top-class vertical maps.
Report verify_takayasu(const ResolutionComplex& R, const TakayasuComplex& T);

}  // namespace unstable
