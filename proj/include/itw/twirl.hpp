#pragma once

#include <complex>
#include <vector>

#include "itw/formfactors.hpp"
#include "itw/permutation.hpp"
#include "itw/weingarten.hpp"

namespace itw {

// Symbolic 2k-fold twirl: a coefficient map sum_sigma coeffs[i] T_{elements[i]}
// over S_{2k} (canonical enumeration order).
struct TwirlOperator {
  int k = 1;
  int d = 2;
  std::vector<Permutation> elements;
  std::vector<Complex> coeffs;

  Complex coeff_of(const Permutation& p) const;
};

// Second-moment CP-map twirl input: tr K = sum_alpha tr(K_alpha) tr(K_alpha†).
struct CPMapSpec {
  enum class Kind { GENERIC, DEPHASING };
  Kind kind = Kind::GENERIC;
  Complex trace_of_K{0.0, 0.0};
  int d = 2;

  static CPMapSpec dephasing(int d) {
    return {Kind::DEPHASING, Complex(static_cast<double>(d), 0.0), d};
  }
};

// R^(2)(U) = (c2-1)/(d^2-1) 1 + (d^2-c2)/(d^2-1) T/d.
TwirlOperator r2(const FormFactors& ff);

// R^(4)(U): 24 coefficients built by direct Weingarten contraction,
// coeff_sigma = sum_pi Wg(pi,sigma) tr(T_pi U^{⊗2,2}); the traces reduce to
// {c4, c3, conj c3, d c2, c2, c2(2t), d^2, d} by cycle counting. Requires
// d >= 4.
TwirlOperator r4(const FormFactors& ff);

// Second-moment twirl of a CP map: (1/(d(d^2-1)))((d^2-trK) T + d(trK-1) 1).
TwirlOperator r2_cp(const CPMapSpec& spec);

// Fourth-moment twirl of the dephasing channel D_B = sum_i Pi_i (.) Pi_i;
// the input traces are d^2 when no cycle mixes the two channel copies, d
// otherwise. Requires d >= 4. (Consumed by the equilibration probe tests.)
TwirlOperator r4_dephasing(int d);

// Fourth-moment hybrid twirl of U (⊗1,1) against the dephasing channel of
// U's own eigenbasis; input traces reduce to {d^2, d c2, c2, d}. d >= 4.
TwirlOperator r4_hybrid(const FormFactors& ff);

// Haar limits: k=1 -> T/d; k=2 -> the Haar 2-design combination.
TwirlOperator haar_twirl_limit(int k, int d);

// Dense realization on H^{⊗2k}; guarded by d^{2k} <= 4096.
Matrix to_matrix(const TwirlOperator& op);

// Permutation from 1-based disjoint cycles, e.g. {{1,4,2,3}} = (1423) in S_n.
Permutation perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles);

}  // namespace itw
