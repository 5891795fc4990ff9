#include "itw/probes.hpp"

#include <cmath>
#include <stdexcept>

namespace itw {

namespace {

constexpr double kLogFloor = 1e-300;

void check_range(double x, const char* what) {
  if (!(x > 0.0 && x <= 1.0 + 1e-12)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0,1]");
  }
}

Permutation pairing_13_24() { return perm_from_cycles(4, {{1, 3}, {2, 4}}); }

Matrix density_power(const Matrix& rho, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd ev = es.eigenvalues();
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < ev.size(); ++i) {
    const double lam = std::max(ev(i), 0.0);
    if (lam > 0.0) {
      out += std::pow(lam, p) * es.eigenvectors().col(i) *
             es.eigenvectors().col(i).adjoint();
    }
  }
  return out;
}

// Wiring of tr(T_kappa (psi ⊗ psi ⊗ S)) with S swapping the A factors of the
// two relay slots 2,3 (0-based) and passing their B factors through. The
// A/B lines of the two psi insertions end up either self- or cross-connected;
// relay-only index loops contribute free dimension factors.
struct Wiring {
  bool cross_A = false;
  bool cross_B = false;
  int free_A = 0;
  int free_B = 0;
};

Wiring trace_wiring(const Permutation& kappa) {
  Wiring w;
  // Walk from psi_0's row leg; relay column legs jump to the paired row leg.
  auto walk = [&](bool swapped) {
    int pos = kappa(0);
    while (pos >= 2) pos = swapped ? kappa(5 - pos) : kappa(pos);
    return pos == 1;
  };
  w.cross_A = walk(true);
  w.cross_B = walk(false);
  // Free loops: classes of index nodes under the relay identifications that
  // never touch a psi leg (psi columns sit at nodes 0,1; rows at kappa(0,1)).
  auto free_loops = [&](bool swapped) {
    int parent[4] = {0, 1, 2, 3};
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    unite(2, swapped ? kappa(3) : kappa(2));
    unite(3, swapped ? kappa(2) : kappa(3));
    bool touched[4] = {false, false, false, false};
    touched[find(0)] = touched[find(1)] = true;
    touched[find(kappa(0))] = touched[find(kappa(1))] = true;
    int loops = 0;
    for (int j = 0; j < 4; ++j) {
      if (find(j) == j && !touched[j]) ++loops;
    }
    return loops;
  };
  w.free_A = free_loops(true);
  w.free_B = free_loops(false);
  return w;
}

double wiring_value(const Permutation& kappa, const SceneParams& p) {
  const Wiring w = trace_wiring(kappa);
  double base = 1.0;
  if (w.cross_A && w.cross_B) {
    base = p.purity_psi;
  } else if (w.cross_A) {
    base = p.purity_A;
  } else if (w.cross_B) {
    base = p.purity_B;
  }
  return base * std::pow(p.dA, w.free_A) * std::pow(p.dB, w.free_B);
}

// Number of maximal runs of `marked` slots around each cycle of kappa whose
// slots mix marked and unmarked, summed over cycles; pure cycles contribute 0.
int mixed_cycle_runs(const Permutation& kappa, const std::vector<bool>& marked) {
  int runs = 0;
  for (const auto& cyc : kappa.cycles()) {
    bool any = false;
    bool all = true;
    for (int s : cyc) {
      any = any || marked[s];
      all = all && marked[s];
    }
    if (!any || all) continue;
    const int m = static_cast<int>(cyc.size());
    for (int j = 0; j < m; ++j) {
      if (marked[cyc[j]] && !marked[cyc[(j + m - 1) % m]]) ++runs;
    }
  }
  return runs;
}

// Word value of tr(T_kappa ⊗_s O_s) where each slot holds either the pure
// eigenstate psi of H0 (marked=false) or H0 itself (marked=true).
double eigenstate_word(const Permutation& kappa, const std::vector<bool>& is_h,
                       const SceneParams& p) {
  double prod = 1.0;
  for (const auto& cyc : kappa.cycles()) {
    int nh = 0;
    for (int s : cyc) nh += is_h[s] ? 1 : 0;
    const int m = static_cast<int>(cyc.size());
    if (nh == m) {
      prod *= (m == 1) ? p.d * p.E_HT : p.trH0sq;
    } else if (nh > 0) {
      prod *= std::pow(p.E0, nh);
    }
  }
  return prod;
}

}  // namespace

void SceneParams::validate() const {
  if (d < 2 || dA < 1 || dB < 1 || dC < 1 || dD < 1) {
    throw std::invalid_argument("dimensions must be positive, d >= 2");
  }
  if (dA * dB != d || dC * dD != d) {
    throw std::invalid_argument("subsystem dimensions must factor d");
  }
  check_range(purity_psi, "purity_psi");
  check_range(purity_A, "purity_A");
  check_range(purity_B, "purity_B");
  check_range(deph_purity, "deph_purity");
  if (purity_A < 1.0 / dA - 1e-12) {
    throw std::invalid_argument("purity_A below 1/dA");
  }
}

double frame_potential_k1(const FormFactors& ff, int d) {
  const double d2 = static_cast<double>(d) * d;
  return d2 / (d2 - 1.0) * (d2 * ff.c4_tilde() - 2.0 * ff.c2_tilde() + 1.0);
}

double frame_potential_k1_bound(const FormFactors& ff, int d) {
  const double d2 = static_cast<double>(d) * d;
  return ff.c4.real() / (d2 * d2) * d2;
}

double loschmidt1(const FormFactors& ff, int d) {
  return (d * ff.c2_tilde() + 1.0) / (d + 1.0);
}

double otoc2(const FormFactors& ff, int d, Complex trA, double norm2A_sq) {
  const double d2 = static_cast<double>(d) * d;
  const double c2 = ff.c2.real();
  return (c2 - 1.0) / (d2 - 1.0) * norm2A_sq / d +
         (d2 - c2) / (d2 - 1.0) * std::norm(trA) / d2;
}

double otoc4_pauli(const FormFactors& ff, int d) {
  if (d <= 3) throw std::invalid_argument("otoc4_pauli needs d >= 4");
  const double dd = d;
  const double d2 = dd * dd;
  const double c2 = ff.c2.real();
  const double c4 = ff.c4.real();
  const double c22t = ff.c2_2t.real();
  const double c3r = ff.c3.real();
  return (dd * (c4 - 4.0 * c2 + c22t - d2 + 9.0) - 6.0 * c3r) /
         (dd * (d2 * d2 - 10.0 * d2 + 9.0));
}

double loschmidt2_pauli(const FormFactors& ff, int d) {
  if (d <= 3) throw std::invalid_argument("loschmidt2_pauli needs d >= 4");
  const double dd = d;
  const double d2 = dd * dd;
  const double c2 = ff.c2.real();
  const double c4 = ff.c4.real();
  const double c22t = ff.c2_2t.real();
  const double c3r = ff.c3.real();
  return ((d2 - 6.0) * (c4 - 4.0 * c2 + c22t) - 2.0 * dd * c3r + d2 * d2 -
          9.0 * d2) /
         (d2 * (d2 * d2 - 10.0 * d2 + 9.0));
}

double entanglement_bound(const FormFactors& ff, const SceneParams& params) {
  params.validate();
  const TwirlOperator op = r4(ff);
  const Permutation a = pairing_13_24();
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < op.elements.size(); ++i) {
    sum += op.coeffs[i] * wiring_value(compose(a, op.elements[i]), params);
  }
  return -std::log(std::max(sum.real(), kLogFloor));
}

double tmi_bound(const FormFactors& ff, const SceneParams& params) {
  params.validate();
  const TwirlOperator op = r4(ff);
  const Permutation a = pairing_13_24();
  const Permutation tau = perm_from_cycles(4, {{1, 2}, {3, 4}});
  const Permutation s12 = perm_from_cycles(4, {{1, 2}});
  const Permutation s34 = perm_from_cycles(4, {{3, 4}});
  Complex wc{0.0, 0.0};
  Complex wd{0.0, 0.0};
  const double dC = params.dC;
  const double dD = params.dD;
  for (std::size_t i = 0; i < op.elements.size(); ++i) {
    const Permutation g = compose(a, op.elements[i]);
    wc += op.coeffs[i] * std::pow(dC, cycle_count(compose(g, tau))) *
          std::pow(dD, cycle_count(g));
    wd += op.coeffs[i] * std::pow(dC, cycle_count(compose(g, s12))) *
          std::pow(dD, cycle_count(compose(g, s34)));
  }
  const double d2 = static_cast<double>(params.d) * params.d;
  const double vc = std::max(wc.real() / d2, kLogFloor);
  const double vd = std::max(wd.real() / d2, kLogFloor);
  return std::log2(static_cast<double>(params.d)) + std::log2(vc) +
         std::log2(vd);
}

double coherence(const FormFactors& ff, const SceneParams& params) {
  params.validate();
  const TwirlOperator op = r4(ff);
  const Permutation a = pairing_13_24();
  const std::vector<bool> projector_slots{true, true, false, false};
  const double moments[3] = {static_cast<double>(params.d), 1.0,
                             params.deph_purity};
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < op.elements.size(); ++i) {
    const Permutation kappa = compose(op.elements[i], a);
    const int runs = mixed_cycle_runs(kappa, projector_slots);
    sum += op.coeffs[i] * moments[runs];
  }
  return 1.0 - sum.real();
}

double coherence_random_basis(double purity, int d) {
  check_range(purity, "purity");
  return purity - (1.0 + purity) / (d + 1.0);
}

double wyd_skew(const FormFactors& ff, int d, const Matrix& X,
                const Matrix& rho, double eta) {
  if ((rho - rho.adjoint()).norm() > 1e-10 ||
      std::abs(rho.trace().real() - 1.0) > 1e-10) {
    throw std::invalid_argument("rho must be a trace-one Hermitian matrix");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("eta must lie in (0,1)");
  }
  // tr(T_pi O R) = sum_sigma c_sigma tr(T_{sigma∘pi} O), evaluated cycle by
  // cycle so no operator on the full tensor power is ever materialised.
  const Permutation p12 = perm_from_cycles(2, {{1, 2}});
  const TwirlOperator op2 = r2(ff);
  const std::vector<Matrix> ops2{X * X, rho};
  Complex term1{0.0, 0.0};
  for (std::size_t i = 0; i < op2.elements.size(); ++i) {
    term1 += op2.coeffs[i] * permuted_trace(compose(op2.elements[i], p12), ops2);
  }

  const Permutation p1423 = perm_from_cycles(4, {{1, 4, 2, 3}});
  const TwirlOperator op4 = r4(ff);
  const std::vector<Matrix> ops4{X, X, density_power(rho, 1.0 - eta),
                                 density_power(rho, eta)};
  Complex term2{0.0, 0.0};
  for (std::size_t i = 0; i < op4.elements.size(); ++i) {
    term2 += op4.coeffs[i] * permuted_trace(compose(op4.elements[i], p1423), ops4);
  }
  return (term1 - term2).real();
}

Complex generic_probe(const TwirlOperator& op, const Permutation& contraction,
                      const Matrix& observable) {
  const Matrix rm = to_matrix(op);
  if (observable.rows() != rm.rows() || observable.cols() != rm.cols()) {
    throw std::invalid_argument("observable dimension mismatch");
  }
  // tr(T_pi O R) = sum_j (O R)_{j, pi(j)} with pi acting on flattened indices,
  // avoiding any product of full tensor-power matrices.
  const int n = contraction.degree();
  const int d = op.d;
  std::vector<int> idx(n), pidx(n);
  Complex sum{0.0, 0.0};
  for (Eigen::Index col = 0; col < rm.cols(); ++col) {
    Eigen::Index rest = col;
    for (int k = n - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rest % d);
      rest /= d;
    }
    for (int k = 0; k < n; ++k) pidx[contraction.map[k]] = idx[k];
    Eigen::Index row = 0;
    for (int k = 0; k < n; ++k) row = row * d + pidx[k];
    sum += (observable.row(col) * rm.col(row))(0, 0);
  }
  return sum / trace_power(contraction, op.d);
}

double convergence_f(const FormFactors& ff, const SceneParams& params) {
  params.validate();
  if (params.d <= 3) throw std::invalid_argument("convergence_f needs d >= 4");
  const TwirlOperator op = r4(ff);
  const TwirlOperator deph = r4_dephasing(params.d);
  const TwirlOperator hyb = r4_hybrid(ff);
  const Permutation a = pairing_13_24();
  const Permutation s23 = perm_from_cycles(4, {{2, 3}});
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < op.elements.size(); ++i) {
    const Permutation conj = compose(s23, compose(op.elements[i], s23));
    const Complex coeff =
        op.coeffs[i] + deph.coeff_of(conj) - 2.0 * hyb.coeff_of(conj);
    sum += coeff * wiring_value(compose(a, op.elements[i]), params);
  }
  return sum.real();
}

double work(const FormFactors& ff, const SceneParams& params) {
  const double d2 = static_cast<double>(params.d) * params.d;
  return (d2 - ff.c2.real()) / (d2 - 1.0);
}

double work_fluctuations(const FormFactors& ff, const SceneParams& params) {
  params.validate();
  const double var_h = params.trH0sq / params.d - params.E_HT * params.E_HT;
  if (var_h <= 1e-14 * std::abs(params.trH0sq)) {
    throw std::invalid_argument("degenerate H0: spectral variance vanishes");
  }
  const Permutation a = pairing_13_24();
  const TwirlOperator op4 = r4(ff);
  const std::vector<bool> slots_hh{false, false, true, true};
  Complex second{0.0, 0.0};
  for (std::size_t i = 0; i < op4.elements.size(); ++i) {
    second += op4.coeffs[i] *
              eigenstate_word(compose(a, op4.elements[i]), slots_hh, params);
  }
  const Permutation b = perm_from_cycles(4, {{1, 2}, {3, 4}});
  const TwirlOperator op2 = r2(ff);
  const std::vector<bool> slots_hphp{false, true, false, true};
  Complex first_sq{0.0, 0.0};
  for (std::size_t i = 0; i < op2.elements.size(); ++i) {
    for (std::size_t j = 0; j < op2.elements.size(); ++j) {
      Permutation embed = Permutation::identity(4);
      for (int s = 0; s < 2; ++s) {
        embed.map[s] = op2.elements[i](s);
        embed.map[2 + s] = 2 + op2.elements[j](s);
      }
      first_sq += op2.coeffs[i] * op2.coeffs[j] *
                  eigenstate_word(compose(b, embed), slots_hphp, params);
    }
  }
  return (second - first_sq).real() / var_h;
}

std::pair<double, double> free_energy_bounds(const FormFactors& ff,
                                             const SceneParams& params) {
  params.validate();
  if (!(params.beta_eps > 0.0) || params.dA < 2) {
    throw std::invalid_argument("free_energy_bounds needs beta_eps > 0, dA >= 2");
  }
  const double w = work(ff, params);
  const double eps = params.beta_eps;
  const double log_da = std::log(static_cast<double>(params.dA));
  const double lower = w - log_da / eps;
  const double gain =
      std::log(std::max(1.0 + ff.c4_tilde() * (params.dA - 1.0), kLogFloor));
  return {lower, w + gain / eps - log_da / eps};
}

CPProbeValues cp_probes(const CPMapSpec& spec, double purity) {
  check_range(purity, "purity");
  const double dd = spec.d;
  const double d2 = dd * dd;
  const double trk = spec.kind == CPMapSpec::Kind::DEPHASING
                         ? dd
                         : spec.trace_of_K.real();
  const double l1 =
      ((d2 - trk) + dd * purity * (trk - 1.0)) / (dd * (d2 - 1.0));
  CPProbeValues out;
  out.loschmidt1_cp = l1;
  out.purity_out = l1;
  return out;
}

TypicalityBounds typicality_bounds(const FormFactors& ff, int d, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const double c2b = ff.c2_tilde();
  const double c4b = ff.c4_tilde();
  TypicalityBounds out;
  // The closed-form ensemble averages are asymptotic in d and can return a
  // marginally negative variance at small d and t; clamp at the exact floor.
  out.chebyshev_c2 = std::max(c4b - c2b * c2b, 0.0) / (delta * delta);
  out.chebyshev_c4 = c4b / (delta * delta);
  const double d2 = static_cast<double>(d) * d;
  const double pi3 = M_PI * M_PI * M_PI;
  out.levy = 4.0 * std::exp(-d * delta * delta * d2 * d2 / (72.0 * pi3));
  return out;
}

}  // namespace itw
