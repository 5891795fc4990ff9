#pragma once

#include <cstdint>
#include <vector>

#include "itw/ensembles.hpp"
#include "itw/formfactors.hpp"
#include "itw/permutation.hpp"

namespace itw {

// Monte Carlo run configuration; results are reproducible bit-for-bit given
// (seed, n_samples, stream layout).
struct McConfig {
  long n_samples = 1000;
  std::uint64_t seed = 1;
  int d = 2;
  int parallel_streams = 1;
};

// Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal
// phase correction. d <= 64.
Matrix sample_haar_unitary(int d, Rng& rng);

// Empirical mean of (G†UG)^{⊗k} ⊗ (G†U†G)^{⊗k} over Haar G, with elementwise
// standard errors. d^{2k} <= 4096.
struct McMatrix {
  Matrix mean;
  Eigen::MatrixXd se;
  long n_samples = 0;
};
McMatrix mc_isospectral_twirl(const Matrix& U, int k, const McConfig& cfg);

// Sample means of (c2, Re c3, c4) on a time grid with jackknife standard
// errors, averaging over sampled spectra of the ensemble.
struct McMoments {
  std::vector<double> t;
  std::vector<double> c2_mean, c2_se;
  std::vector<double> c3_mean, c3_se;
  std::vector<double> c4_mean, c4_se;
  long n_samples = 0;
};
McMoments mc_ensemble_c(const EnsembleSpec& spec,
                        const std::vector<double>& t_grid,
                        const McConfig& cfg);

// Pair-sampled frame potential of U = exp(-i diag(E) t) (the value only
// depends on the spectrum): mean over (G1, G2) of |tr(G1†U†G1 G2†UG2)|^{2k}.
// G1 is reused across a block of G2 draws; the standard error is jackknifed
// over G1 blocks. d <= 16, k = 1.
struct McScalar {
  double mean = 0.0;
  double se = 0.0;
  long n_samples = 0;
};
McScalar mc_frame_potential(const Spectrum& sp, double t, int k,
                            const McConfig& cfg);

// Fraction of sampled spectra with |c2_tilde - sample mean| >= delta at time
// t; to be compared against the Chebyshev bound.
double empirical_typicality(const EnsembleSpec& spec, double t, double delta,
                            const McConfig& cfg);

}  // namespace itw
