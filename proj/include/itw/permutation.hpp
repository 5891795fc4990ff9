#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace itw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Element of the symmetric group S_n, stored as the 0-based image list:
// map[i] = image of point i. Degree n = map.size().
struct Permutation {
  std::vector<int> map;

  int degree() const { return static_cast<int>(map.size()); }
  int operator()(int i) const { return map[i]; }
  bool operator==(const Permutation& o) const { return map == o.map; }
  bool operator<(const Permutation& o) const { return map < o.map; }

  static Permutation identity(int n);
  Permutation inverse() const;
  bool is_identity() const;

  // Cycle decomposition, each cycle starting at its smallest element,
  // cycles ordered by smallest element. Fixed points included.
  std::vector<std::vector<int>> cycles() const;

  // 1-based cycle notation, fixed points suppressed; identity prints "e".
  std::string cycle_string() const;
};

// Applies b first, then a: (a∘b)(i) = a(b(i)). Matches (12)(23) = (123).
Permutation compose(const Permutation& a, const Permutation& b);

// All n! elements, identity first, lexicographic in the image list. n <= 8.
std::vector<Permutation> enumerate_group(int n);

int cycle_count(const Permutation& p);

// tr(T_p) on (C^d)^{⊗n} = d^{#cycles(p)}.
double trace_power(const Permutation& p, int d);

// tr(T_p (A_1 ⊗ ... ⊗ A_n)) evaluated cycle by cycle without forming the
// tensor product: each cycle contributes tr(A_c A_{p^{-1}(c)} A_{p^{-2}(c)} ...)
// starting from the cycle's smallest element c.
Complex permuted_trace(const Permutation& p, const std::vector<Matrix>& ops);

// Dense T_p on (C^d)^{⊗n}: position p(k) of the output receives slot k of the
// input, so that T_p T_q = T_{p∘q}. Guarded by d^n <= 4096.
Matrix permutation_matrix(const Permutation& p, int d);

// Kronecker product, slot 0 most significant (matching permutation_matrix).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace itw
