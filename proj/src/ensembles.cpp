#include "itw/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "itw/special.hpp"

namespace itw {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

const char* ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::GUE: return "gue";
    case EnsembleKind::GDE: return "gde";
    case EnsembleKind::POISSON: return "poisson";
    case EnsembleKind::WD_GOE: return "wd-goe";
    case EnsembleKind::WD_GUE: return "wd-gue";
    case EnsembleKind::HAAR: return "haar";
  }
  return "?";
}

EnsembleKind ensemble_from_name(const std::string& name) {
  if (name == "gue") return EnsembleKind::GUE;
  if (name == "gde") return EnsembleKind::GDE;
  if (name == "poisson") return EnsembleKind::POISSON;
  if (name == "wd-goe") return EnsembleKind::WD_GOE;
  if (name == "wd-gue") return EnsembleKind::WD_GUE;
  if (name == "haar") return EnsembleKind::HAAR;
  throw std::invalid_argument("unknown ensemble: " + name);
}

Rng make_rng(std::uint64_t seed) {
  Rng rng;
  rng.seed = seed;
  rng.engine.seed(splitmix64(seed));
  return rng;
}

Rng rng_substream(std::uint64_t seed, std::uint64_t stream) {
  Rng rng;
  rng.seed = seed;
  rng.engine.seed(splitmix64(seed ^ splitmix64(stream + 1)));
  return rng;
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng.engine() >> 11) * 0x1.0p-53;
}

double normal01(Rng& rng) {
  double u1;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

namespace {

std::vector<double> sample_gue_eigenvalues(int d, Rng& rng) {
  // Hermitian matrix with entry variance 1/d (diagonal real variance 1/d,
  // off-diagonal complex variance 1/d), so the semicircle support is [-2,2].
  Eigen::MatrixXcd h(d, d);
  const double diag_sd = 1.0 / std::sqrt(static_cast<double>(d));
  const double off_sd = 1.0 / std::sqrt(2.0 * d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = diag_sd * normal01(rng);
    for (int j = i + 1; j < d; ++j) {
      const std::complex<double> z(off_sd * normal01(rng), off_sd * normal01(rng));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + d);
}

double sample_spacing(EnsembleKind kind, Rng& rng) {
  switch (kind) {
    case EnsembleKind::POISSON:
      // Exponential(1)
      return -std::log(1.0 - uniform01(rng));
    case EnsembleKind::WD_GOE: {
      // Rayleigh with sigma^2 = 2/pi (mean 1)
      double u;
      do {
        u = uniform01(rng);
      } while (u <= 0.0);
      return std::sqrt(2.0 / kPi) * std::sqrt(-2.0 * std::log(u));
    }
    case EnsembleKind::WD_GUE: {
      // sqrt(pi/8) * chi_3 (mean 1, density (32/pi^2) s^2 exp(-4 s^2/pi))
      const double g1 = normal01(rng), g2 = normal01(rng), g3 = normal01(rng);
      return std::sqrt(kPi / 8.0) * std::sqrt(g1 * g1 + g2 * g2 + g3 * g3);
    }
    default:
      throw std::invalid_argument("sample_spacing: not a spacing ensemble");
  }
}

}  // namespace

Spectrum sample_spectrum(const EnsembleSpec& spec, Rng& rng) {
  if (spec.d < 2) throw std::invalid_argument("sample_spectrum: d must be >= 2");
  if (spec.kind == EnsembleKind::HAAR)
    throw std::invalid_argument("sample_spectrum: HAAR has no spectral density");

  Spectrum sp;
  sp.source = spec;
  sp.seed = rng.seed;
  switch (spec.kind) {
    case EnsembleKind::GUE:
      sp.energies = sample_gue_eigenvalues(spec.d, rng);
      break;
    case EnsembleKind::GDE: {
      sp.energies.resize(spec.d);
      for (double& e : sp.energies) e = 0.5 * normal01(rng);
      std::sort(sp.energies.begin(), sp.energies.end());
      break;
    }
    default: {
      // Nearest-level-spacing construction: E_1 = 0, i.i.d. spacings.
      sp.energies.resize(spec.d);
      sp.energies[0] = 0.0;
      for (int i = 1; i < spec.d; ++i)
        sp.energies[i] = sp.energies[i - 1] + sample_spacing(spec.kind, rng);
      sp.time_rescale = 1.0 / spec.d;
      break;
    }
  }
  return sp;
}

double spacing_pdf(EnsembleKind kind, double s) {
  if (s < 0.0) throw std::invalid_argument("spacing_pdf: s must be >= 0");
  switch (kind) {
    case EnsembleKind::POISSON:
      return std::exp(-s);
    case EnsembleKind::WD_GOE:
      return 0.5 * kPi * s * std::exp(-0.25 * kPi * s * s);
    case EnsembleKind::WD_GUE:
      return (32.0 / (kPi * kPi)) * s * s * std::exp(-4.0 * s * s / kPi);
    default:
      throw std::invalid_argument("spacing_pdf: unsupported ensemble");
  }
}

namespace {

// Large-t expansions of g(t) from the s->0 behavior of the spacing density:
// a density sum_n c_n s^n contributes sum_n c_n n! i^{n+1} / t^{n+1}.

std::complex<double> cf_wd_goe(double t) {
  // P(s) = (pi/2) s exp(-pi s^2/4)
  if (t <= 12.0) {
    const double u = t / kSqrtPi;
    const double re = 1.0 - 2.0 * t * dawson(u) / kSqrtPi;
    const double im = t * std::exp(-t * t / kPi);
    return {re, im};
  }
  // Real part: -sum_k (pi/2)(pi/4)^k (2k+1)!/k! t^{-2k-2};
  // imaginary part t exp(-t^2/pi) exactly (exponentially small).
  double term = -0.5 * kPi / (t * t);
  double re = term;
  for (int k = 0; k < 40; ++k) {
    term *= 0.25 * kPi * (2.0 * k + 2.0) * (2.0 * k + 3.0) / ((k + 1.0) * t * t);
    re += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return {re, t * std::exp(-t * t / kPi)};
}

std::complex<double> cf_wd_gue(double t) {
  // P(s) = (32/pi^2) s^2 exp(-4 s^2/pi)
  const double pref = 1.0 - kPi * t * t / 8.0;
  const double u = 0.25 * kSqrtPi * t;
  if (t <= 12.0) {
    const double re = pref * std::exp(-u * u);
    const double im = pref * 2.0 * dawson(u) / kSqrtPi + 0.5 * t;
    return {re, im};
  }
  // Imag part: -sum_k (32/pi^2)(4/pi)^k (2k+2)!/k! t^{-2k-3};
  // real part pref*exp(-pi t^2/16) exactly (exponentially small).
  double term = -(32.0 / (kPi * kPi)) * 2.0 / (t * t * t);
  double im = term;
  for (int k = 0; k < 40; ++k) {
    term *= (4.0 / kPi) * (2.0 * k + 3.0) * (2.0 * k + 4.0) / ((k + 1.0) * t * t);
    im += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return {pref * std::exp(-u * u), im};
}

}  // namespace

std::complex<double> characteristic_function(EnsembleKind kind, double t) {
  if (t < 0.0) return std::conj(characteristic_function(kind, -t));
  switch (kind) {
    case EnsembleKind::POISSON:
      // i/(i+t) = (1 + i t)/(1 + t^2)
      return std::complex<double>(1.0, t) / (1.0 + t * t);
    case EnsembleKind::WD_GOE:
      return cf_wd_goe(t);
    case EnsembleKind::WD_GUE:
      return cf_wd_gue(t);
    default:
      throw std::invalid_argument("characteristic_function: unsupported ensemble");
  }
}

}  // namespace itw
