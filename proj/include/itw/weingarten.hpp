#pragma once

#include <vector>

#include <Eigen/Dense>

#include "itw/permutation.hpp"

namespace itw {

// Gram matrix Omega of permutation-operator traces over S_n on (C^d)^{⊗n}
// and its inverse (the Weingarten coefficients).
struct WeingartenTable {
  int n = 0;
  int d = 0;
  std::vector<Permutation> elements;  // canonical ordering, identity first
  Eigen::MatrixXd omega;              // omega(i,j) = d^{#cycles(e_i ∘ e_j)}
  Eigen::MatrixXd omega_inv;          // empty until weingarten() fills it

  int index_of(const Permutation& p) const;
};

// Omega only. n <= 8, d >= 1.
WeingartenTable gram_matrix(int n, int d);

// Omega and its inverse. Requires d >= n (Omega is singular for d < n).
// The inversion runs on the rescaled matrix Omega/d^n whose entries are
// d^{-(n - #cycles)} in [0,1]; this keeps the LU solve well conditioned for
// large d where raw Omega entries span d..d^n. Residual checked to 1e-10.
WeingartenTable weingarten(int n, int d);

}  // namespace itw
