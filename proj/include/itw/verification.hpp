#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace itw {

// One verification check: `observed` is compared against `tolerance`
// (observed <= tolerance passes). For SE-scaled checks the observed value is
// already expressed in standard-error units.
struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

// Weingarten exactness: sum_sigma Wg(pi sigma) Omega(kappa sigma) = delta for
// n in {2,4}, d in {4,8}.
std::vector<CheckResult> verify_weingarten();

// Symbolic twirl vs Monte Carlo Haar average for a fixed random U:
// d in {2,3,4} at k=1 and d=4 at k=2, elementwise |delta| < 4 SE.
// Nonzero only_d / only_k restrict the run to matching combinations.
std::vector<CheckResult> verify_twirl_mc(long n_samples = 10000,
                                         std::uint64_t seed = 7,
                                         int only_d = 0, int only_k = 0);

// Closed-form ensemble form factors vs sampled spectra: GDE c2/c3/c4 at d=64,
// GUE c2 at d=256, Poisson c2/c4 at d=64, each within 3 SE on a log grid.
std::vector<CheckResult> verify_formfactor_mc(std::uint64_t seed = 11);

// Every closed-form probe equals its defining contraction evaluated densely
// (independent index bookkeeping) within 1e-8 at the requested dimensions.
std::vector<CheckResult> verify_probe_oracle(const std::vector<int>& ds = {4,
                                                                           8});

// Empirical deviation frequencies of ctilde2 never exceed the Chebyshev
// bounds across a (d, delta, t) grid with n_samples spectra per point.
std::vector<CheckResult> verify_typicality(long n_samples = 1000,
                                           std::uint64_t seed = 5);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace itw
