#include "itw/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itw {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.map.resize(n);
  for (int i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

Permutation Permutation::inverse() const {
  Permutation q;
  q.map.resize(map.size());
  for (int i = 0; i < degree(); ++i) q.map[map[i]] = i;
  return q;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (map[i] != i) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  const int n = degree();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    int j = i;
    do {
      seen[j] = true;
      cyc.push_back(j);
      j = map[j];
    } while (j != i);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::cycle_string() const {
  std::string s;
  for (const auto& cyc : cycles()) {
    if (cyc.size() < 2) continue;
    s += '(';
    for (size_t k = 0; k < cyc.size(); ++k) s += std::to_string(cyc[k] + 1);
    s += ')';
  }
  return s.empty() ? "e" : s;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose: degree mismatch");
  Permutation r;
  r.map.resize(a.degree());
  for (int i = 0; i < a.degree(); ++i) r.map[i] = a.map[b.map[i]];
  return r;
}

std::vector<Permutation> enumerate_group(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("enumerate_group: degree out of range [1,8]");
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.map.begin(), p.map.end()));
  return out;
}

int cycle_count(const Permutation& p) {
  return static_cast<int>(p.cycles().size());
}

double trace_power(const Permutation& p, int d) {
  if (d < 1) throw std::invalid_argument("trace_power: d must be positive");
  return std::pow(static_cast<double>(d), cycle_count(p));
}

Complex permuted_trace(const Permutation& p, const std::vector<Matrix>& ops) {
  const int n = p.degree();
  if (static_cast<int>(ops.size()) != n)
    throw std::invalid_argument("permuted_trace: wrong number of operators");
  const Eigen::Index d = ops[0].rows();
  for (const auto& m : ops)
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("permuted_trace: shape mismatch");

  const Permutation pinv = p.inverse();
  Complex value = 1.0;
  for (const auto& cyc : p.cycles()) {
    Matrix prod = ops[cyc[0]];
    int j = pinv.map[cyc[0]];
    while (j != cyc[0]) {
      prod = prod * ops[j];
      j = pinv.map[j];
    }
    value *= prod.trace();
  }
  return value;
}

Matrix permutation_matrix(const Permutation& p, int d) {
  const int n = p.degree();
  double sz = std::pow(static_cast<double>(d), n);
  if (sz > 4096.0) throw std::invalid_argument("permutation_matrix: d^n exceeds 4096");
  const int dim = static_cast<int>(std::lround(sz));

  Matrix m = Matrix::Zero(dim, dim);
  std::vector<int> idx(n), pidx(n);
  for (int col = 0; col < dim; ++col) {
    int rest = col;
    // Slot 0 is the most significant digit of the flattened index.
    for (int k = n - 1; k >= 0; --k) {
      idx[k] = rest % d;
      rest /= d;
    }
    for (int k = 0; k < n; ++k) pidx[p.map[k]] = idx[k];
    int row = 0;
    for (int k = 0; k < n; ++k) row = row * d + pidx[k];
    m(row, col) = 1.0;
  }
  return m;
}

}  // namespace itw

namespace itw {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace itw
