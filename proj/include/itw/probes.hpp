#pragma once

#include <string>
#include <utility>
#include <vector>

#include "itw/formfactors.hpp"
#include "itw/twirl.hpp"

namespace itw {

// Scene parameters shared by the probe catalog: dimensions of the bipartitions
// (dA·dB = dC·dD = d), purities of the initial state and its marginals, and
// the battery Hamiltonian's spectral data. beta_eps is the free-energy
// trade-off parameter eps = deltaW0 * beta.
struct SceneParams {
  int d = 4;
  int dA = 2;
  int dB = 2;
  int dC = 2;
  int dD = 2;
  double purity_psi = 1.0;
  double purity_A = 1.0;
  double purity_B = 1.0;
  double deph_purity = 1.0;
  double E0 = 1.0;
  double E_HT = 0.0;
  double trH0sq = 1.0;
  double beta_eps = 1.0;

  void validate() const;
};

// A probe evaluated on a time grid, ready for serialization.
struct ProbeSeries {
  std::string quantity;
  std::string ensemble;
  int d = 0;
  SceneParams params;
  std::vector<double> t;
  std::vector<double> value;
};

// k=1 frame potential F = d^2/(d^2-1) (d^2 ctilde4 - 2 ctilde2 + 1), with the
// exact-unitary lower bound |tr U|^4 / d^2 = d^2 ctilde2^2.
double frame_potential_k1(const FormFactors& ff, int d);
double frame_potential_k1_bound(const FormFactors& ff, int d);

// First-kind Loschmidt echo (d ctilde2 + 1)/(d+1) and the 2-point OTOC for an
// observable with trace trA and squared 2-norm norm2A_sq.
double loschmidt1(const FormFactors& ff, int d);
double otoc2(const FormFactors& ff, int d, Complex trA, double norm2A_sq);

// 4-point OTOC and second-kind Loschmidt echo for nonidentity Paulis; exact
// finite-d forms, singular for d <= 3.
double otoc4_pauli(const FormFactors& ff, int d);
double loschmidt2_pauli(const FormFactors& ff, int d);

// Lower bound on the average 2-Renyi entanglement entropy of psi_A(t):
// -log <tr psi_A(t)^2>, the average evaluated for pure or mixed psi from the
// purities in params.
double entanglement_bound(const FormFactors& ff, const SceneParams& params);

// Upper bound on the average 2-Renyi tripartite mutual information of the
// evolution channel across the C/D output split, in bits.
double tmi_bound(const FormFactors& ff, const SceneParams& params);

// Average l2 coherence of psi(t) in the fixed dephasing basis, and the
// coherence of a state of given purity in a Haar-random basis.
double coherence(const FormFactors& ff, const SceneParams& params);
double coherence_random_basis(double purity, int d);

// Wigner-Yanase-Dyson skew information of X in psi(t), evaluated by generic
// contraction on H^{⊗2} and H^{⊗4} (d^4 <= 4096).
double wyd_skew(const FormFactors& ff, int d, const Matrix& X,
                const Matrix& rho, double eta);

// Generic probe tr(T_pi observable R)/tr(T_pi) on H^{⊗2k} (d^{2k} <= 4096).
Complex generic_probe(const TwirlOperator& op, const Permutation& contraction,
                      const Matrix& observable);

// Squared 2-norm distance of psi_A(t) from the dephased equilibrium marginal.
double convergence_f(const FormFactors& ff, const SceneParams& params);

// Normalized battery work (d^2 - c2)/(d^2 - 1) and its normalized variance
// (eigenstate initial condition), variance in units of tr(H0^2)/d - E_HT^2.
double work(const FormFactors& ff, const SceneParams& params);
double work_fluctuations(const FormFactors& ff, const SceneParams& params);

// Lower and upper bounds on the extractable free energy difference across the
// A/B split, in units of deltaW0.
std::pair<double, double> free_energy_bounds(const FormFactors& ff,
                                             const SceneParams& params);

// Second-moment CP-map probes: Loschmidt echo of the channel and output
// purity of the dephasing channel.
struct CPProbeValues {
  double loschmidt1_cp = 0.0;
  double purity_out = 0.0;
};
CPProbeValues cp_probes(const CPMapSpec& spec, double purity);

// Concentration bounds: Chebyshev bounds on ctilde2/ctilde4 deviating by
// delta from their ensemble means (taken from ff), and the Levy bound for a
// k=1 twirl probe with unit infinity-norm observable.
struct TypicalityBounds {
  double chebyshev_c2 = 0.0;
  double chebyshev_c4 = 0.0;
  double levy = 0.0;
};
TypicalityBounds typicality_bounds(const FormFactors& ff, int d, double delta);

}  // namespace itw
