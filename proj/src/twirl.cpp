#include "itw/twirl.hpp"

#include <cmath>
#include <stdexcept>

namespace itw {

Complex TwirlOperator::coeff_of(const Permutation& p) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return coeffs[i];
  throw std::invalid_argument("TwirlOperator: element not found");
}

Permutation perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Permutation p = Permutation::identity(n);
  for (const auto& cyc : cycles)
    for (size_t i = 0; i < cyc.size(); ++i)
      p.map[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
  return p;
}

TwirlOperator r2(const FormFactors& ff) {
  if (ff.d < 2) throw std::invalid_argument("r2: d must be >= 2");
  const double dd = ff.d;
  const double denom = dd * dd - 1.0;
  TwirlOperator op;
  op.k = 1;
  op.d = ff.d;
  op.elements = enumerate_group(2);
  op.coeffs = {(ff.c2 - 1.0) / denom, (dd * dd - ff.c2) / (dd * denom)};
  return op;
}

namespace {

// Input trace tr(T_pi X) by cycle counting, for X a 4-slot product whose
// factors all commute (powers of one U, or its eigenprojectors). `power`
// gives each slot's net U exponent, `projector` marks the channel-index
// slots that share the single dephasing sum.
Complex cycle_power_trace(const Permutation& pi, const FormFactors& ff,
                          const int power[4], const bool projector[4]) {
  const double dd = ff.d;
  int d_factors = 0;
  int proj_power = 0;
  bool has_proj_cycle = false;
  int n_plus1 = 0, n_minus1 = 0, n_plus2 = 0, n_minus2 = 0;
  for (const auto& cyc : pi.cycles()) {
    int net = 0;
    bool has_proj = false;
    for (int slot : cyc) {
      net += power[slot];
      has_proj = has_proj || projector[slot];
    }
    if (has_proj) {
      proj_power += net;
      has_proj_cycle = true;
    } else if (net == 0) {
      ++d_factors;
    } else if (net == 1) {
      ++n_plus1;
    } else if (net == -1) {
      ++n_minus1;
    } else if (net == 2) {
      ++n_plus2;
    } else if (net == -2) {
      ++n_minus2;
    }
  }
  if (has_proj_cycle) {
    // All projector-touching cycles share one basis sum: together they give
    // tr(U^p) with p the accumulated power (d when p = 0).
    if (proj_power == 0)
      ++d_factors;
    else if (proj_power == 1)
      ++n_plus1;
    else if (proj_power == -1)
      ++n_minus1;
    else
      throw std::logic_error("cycle_power_trace: unexpected projector power");
  }
  Complex value = std::pow(dd, d_factors);
  // Assemble from the available form factors.
  if (n_plus1 == 2 && n_minus1 == 2) return value * ff.c4;
  if (n_plus2 == 1 && n_minus1 == 2) return value * ff.c3;
  if (n_minus2 == 1 && n_plus1 == 2) return value * std::conj(ff.c3);
  if (n_plus2 == 1 && n_minus2 == 1) return value * ff.c2_2t;
  if (n_plus1 == 1 && n_minus1 == 1) return value * ff.c2;
  if (n_plus1 == 0 && n_minus1 == 0 && n_plus2 == 0 && n_minus2 == 0) return value;
  throw std::logic_error("cycle_power_trace: unexpected power pattern");
}

TwirlOperator contract_r4(int d, const std::vector<Complex>& input_traces) {
  const WeingartenTable wg = weingarten(4, d);
  TwirlOperator op;
  op.k = 2;
  op.d = d;
  op.elements = wg.elements;
  op.coeffs.assign(24, Complex{0, 0});
  for (int s = 0; s < 24; ++s) {
    Complex acc{0, 0};
    for (int p = 0; p < 24; ++p) acc += wg.omega_inv(p, s) * input_traces[p];
    op.coeffs[s] = acc;
  }
  return op;
}

}  // namespace

TwirlOperator r4(const FormFactors& ff) {
  if (ff.d < 4) throw std::invalid_argument("r4: requires d >= 4");
  const int power[4] = {1, 1, -1, -1};
  const bool projector[4] = {false, false, false, false};
  const auto elements = enumerate_group(4);
  std::vector<Complex> traces(24);
  for (int i = 0; i < 24; ++i)
    traces[i] = cycle_power_trace(elements[i], ff, power, projector);
  return contract_r4(ff.d, traces);
}

TwirlOperator r2_cp(const CPMapSpec& spec) {
  if (spec.d < 2) throw std::invalid_argument("r2_cp: d must be >= 2");
  const double dd = spec.d;
  const double denom = dd * (dd * dd - 1.0);
  TwirlOperator op;
  op.k = 1;
  op.d = spec.d;
  op.elements = enumerate_group(2);
  op.coeffs = {dd * (spec.trace_of_K - 1.0) / denom,
               (dd * dd - spec.trace_of_K) / denom};
  return op;
}

TwirlOperator r4_dephasing(int d) {
  if (d < 4) throw std::invalid_argument("r4_dephasing: requires d >= 4");
  const double dd = d;
  const auto elements = enumerate_group(4);
  std::vector<Complex> traces(24);
  for (int i = 0; i < 24; ++i) {
    // d^2 when no cycle joins the two channel copies {1,2} and {3,4}.
    bool mixes = false;
    for (const auto& cyc : elements[i].cycles()) {
      bool lo = false, hi = false;
      for (int slot : cyc) (slot < 2 ? lo : hi) = true;
      if (lo && hi) mixes = true;
    }
    traces[i] = mixes ? dd : dd * dd;
  }
  return contract_r4(d, traces);
}

TwirlOperator r4_hybrid(const FormFactors& ff) {
  if (ff.d < 4) throw std::invalid_argument("r4_hybrid: requires d >= 4");
  const int power[4] = {1, -1, 0, 0};
  const bool projector[4] = {false, false, true, true};
  const auto elements = enumerate_group(4);
  std::vector<Complex> traces(24);
  for (int i = 0; i < 24; ++i)
    traces[i] = cycle_power_trace(elements[i], ff, power, projector);
  return contract_r4(ff.d, traces);
}

TwirlOperator haar_twirl_limit(int k, int d) {
  TwirlOperator op;
  op.k = k;
  op.d = d;
  if (k == 1) {
    op.elements = enumerate_group(2);
    op.coeffs = {Complex{0, 0}, Complex{1.0 / d, 0}};
    return op;
  }
  if (k == 2) {
    const double dd = d;
    const double u = 1.0 / (dd * dd - 1.0);
    const double v = -1.0 / (dd * (dd * dd - 1.0));
    op.elements = enumerate_group(4);
    op.coeffs.assign(24, Complex{0, 0});
    auto set = [&](const std::vector<std::vector<int>>& cycles, double val) {
      const Permutation p = perm_from_cycles(4, cycles);
      for (size_t i = 0; i < op.elements.size(); ++i)
        if (op.elements[i] == p) op.coeffs[i] = val;
    };
    set({{1, 3}, {2, 4}}, u);
    set({{1, 4}, {2, 3}}, u);
    set({{1, 4, 2, 3}}, v);
    set({{1, 3, 2, 4}}, v);
    return op;
  }
  throw std::invalid_argument("haar_twirl_limit: k must be 1 or 2");
}

Matrix to_matrix(const TwirlOperator& op) {
  const int n = 2 * op.k;
  double sz = std::pow(static_cast<double>(op.d), n);
  if (sz > 4096.0) throw std::invalid_argument("to_matrix: d^{2k} exceeds 4096");
  const int dim = static_cast<int>(std::lround(sz));
  Matrix m = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < op.elements.size(); ++i) {
    if (op.coeffs[i] == Complex{0, 0}) continue;
    m += op.coeffs[i] * permutation_matrix(op.elements[i], op.d);
  }
  return m;
}

}  // namespace itw
