#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace itw {

enum class EnsembleKind { GUE, GDE, POISSON, WD_GOE, WD_GUE, HAAR };

const char* ensemble_name(EnsembleKind kind);
EnsembleKind ensemble_from_name(const std::string& name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GUE;
  int d = 2;
};

// Sorted spectrum of one sampled Hamiltonian. Nearest-level-spacing spectra
// (POISSON/WD_*) have eigenvalues of size O(d); they carry time_rescale = 1/d
// so every ensemble shares one time axis (applied inside form-factor
// evaluation, never stored in the energies themselves).
struct Spectrum {
  std::vector<double> energies;
  EnsembleSpec source;
  std::uint64_t seed = 0;
  double time_rescale = 1.0;
};

// Deterministic RNG with a recorded seed; substreams for parallel sampling
// are derived by rng_substream (splitmix64 on (seed, stream index)).
struct Rng {
  std::mt19937_64 engine;
  std::uint64_t seed = 0;
};

Rng make_rng(std::uint64_t seed);
Rng rng_substream(std::uint64_t seed, std::uint64_t stream);

double uniform01(Rng& rng);        // in [0,1)
double normal01(Rng& rng);         // standard normal (Box-Muller, per-call)

Spectrum sample_spectrum(const EnsembleSpec& spec, Rng& rng);

// Nearest-level-spacing densities (mean-1 normalization).
double spacing_pdf(EnsembleKind kind, double s);

// g_E(t) = ∫_0^∞ exp(i s t) P_E(s) ds for the spacing densities.
std::complex<double> characteristic_function(EnsembleKind kind, double t);

}  // namespace itw
