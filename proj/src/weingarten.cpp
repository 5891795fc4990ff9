#include "itw/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itw {

int WeingartenTable::index_of(const Permutation& p) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), p);
  if (it == elements.end() || !(*it == p))
    throw std::invalid_argument("WeingartenTable: element not found");
  return static_cast<int>(it - elements.begin());
}

WeingartenTable gram_matrix(int n, int d) {
  if (d < 1) throw std::invalid_argument("gram_matrix: d must be positive");
  WeingartenTable t;
  t.n = n;
  t.d = d;
  t.elements = enumerate_group(n);
  const int m = static_cast<int>(t.elements.size());
  t.omega.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = trace_power(compose(t.elements[i], t.elements[j]), d);
      t.omega(i, j) = v;
      t.omega(j, i) = v;
    }
  return t;
}

WeingartenTable weingarten(int n, int d) {
  if (d < n)
    throw std::invalid_argument("weingarten: Omega is singular for d < n");
  WeingartenTable t = gram_matrix(n, d);
  const int m = static_cast<int>(t.elements.size());
  const double dn = std::pow(static_cast<double>(d), n);

  Eigen::MatrixXd scaled = t.omega / dn;  // entries d^{-(n - #cycles)}
  Eigen::MatrixXd scaled_inv =
      Eigen::PartialPivLU<Eigen::MatrixXd>(scaled).solve(
          Eigen::MatrixXd::Identity(m, m));
  double residual =
      (scaled * scaled_inv - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw std::runtime_error("weingarten: inversion residual above 1e-10");
  t.omega_inv = scaled_inv / dn;
  return t;
}

}  // namespace itw
