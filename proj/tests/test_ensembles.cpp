#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "itw/ensembles.hpp"

using namespace itw;

namespace {

template <typename F>
double simpson(F f, double a, double b, int n) {
  double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) / 2.0 + 2.0 * std::asin(x / 2.0)) /
                   (2.0 * M_PI);
}

}  // namespace

TEST_CASE("gde sampling statistics") {
  auto rng = make_rng(101);
  Spectrum sp = sample_spectrum({EnsembleKind::GDE, 10000}, rng);
  REQUIRE(sp.energies.size() == 10000);
  CHECK(std::is_sorted(sp.energies.begin(), sp.energies.end()));
  double mean = 0.0, var = 0.0;
  for (double e : sp.energies) mean += e;
  mean /= sp.energies.size();
  for (double e : sp.energies) var += (e - mean) * (e - mean);
  var /= (sp.energies.size() - 1);
  // Var of the sample variance of N(0, 1/4) draws: 2 sigma^4 / (n-1).
  double se = std::sqrt(2.0 * 0.25 * 0.25 / (10000.0 - 1));
  CHECK(std::abs(var - 0.25) < 3.0 * se);
}

TEST_CASE("gue semicircle (kolmogorov-smirnov 1%)") {
  auto rng = make_rng(7);
  Spectrum sp = sample_spectrum({EnsembleKind::GUE, 256}, rng);
  REQUIRE(sp.energies.size() == 256);
  double ks = 0.0;
  for (size_t i = 0; i < sp.energies.size(); ++i) {
    double f = semicircle_cdf(sp.energies[i]);
    double lo = double(i) / sp.energies.size();
    double hi = double(i + 1) / sp.energies.size();
    ks = std::max(ks, std::max(std::abs(f - lo), std::abs(f - hi)));
  }
  // 1% critical value 1.63 / sqrt(n); eigenvalue repulsion only makes the
  // empirical CDF closer to the limit law than iid sampling would.
  CHECK(ks < 1.63 / std::sqrt(256.0));
}

TEST_CASE("gue spectra are centered") {
  double sum = 0.0, sumsq = 0.0;
  const int n_samples = 100, d = 256;
  for (int s = 0; s < n_samples; ++s) {
    auto rng = make_rng(900 + s);
    Spectrum sp = sample_spectrum({EnsembleKind::GUE, d}, rng);
    double m = 0.0;
    for (double e : sp.energies) m += e;
    m /= d;
    sum += m;
    sumsq += m * m;
  }
  double mean = sum / n_samples;
  double se = std::sqrt((sumsq / n_samples - mean * mean) / (n_samples - 1));
  CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("poisson spacings have unit mean") {
  auto rng = make_rng(13);
  Spectrum sp = sample_spectrum({EnsembleKind::POISSON, 100}, rng);
  REQUIRE(sp.energies.size() == 100);
  CHECK(sp.energies.front() == doctest::Approx(0.0));
  CHECK(sp.time_rescale == doctest::Approx(1.0 / 100.0));
  std::vector<double> gaps;
  for (size_t i = 1; i < sp.energies.size(); ++i)
    gaps.push_back(sp.energies[i] - sp.energies[i - 1]);
  double mean = 0.0, var = 0.0;
  for (double g : gaps) mean += g;
  mean /= gaps.size();
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= (gaps.size() - 1);
  CHECK(std::abs(mean - 1.0) < 3.0 * std::sqrt(var / gaps.size()));
}

TEST_CASE("spacing densities") {
  CHECK(spacing_pdf(EnsembleKind::POISSON, 0.0) == doctest::Approx(1.0));
  CHECK(spacing_pdf(EnsembleKind::WD_GOE, 0.0) == doctest::Approx(0.0));
  CHECK(spacing_pdf(EnsembleKind::WD_GUE, 0.0) == doctest::Approx(0.0));
  // Quadratic onset for the WD-GUE density: pdf(s)/s^2 finite and nonzero.
  CHECK(spacing_pdf(EnsembleKind::WD_GUE, 1e-4) / 1e-8 ==
        doctest::Approx(32.0 / (M_PI * M_PI)).epsilon(1e-3));
  // Linear onset for WD-GOE.
  CHECK(spacing_pdf(EnsembleKind::WD_GOE, 1e-6) / 1e-6 ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-3));

  for (auto kind :
       {EnsembleKind::POISSON, EnsembleKind::WD_GOE, EnsembleKind::WD_GUE}) {
    double norm =
        simpson([&](double s) { return spacing_pdf(kind, s); }, 0.0, 40.0,
                40000);
    double mean =
        simpson([&](double s) { return s * spacing_pdf(kind, s); }, 0.0, 40.0,
                40000);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("characteristic functions") {
  using cplx = std::complex<double>;
  CHECK(std::abs(characteristic_function(EnsembleKind::POISSON, 0.0) -
                 cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(characteristic_function(EnsembleKind::POISSON, 1.0) -
                 cplx(0.5, 0.5)) < 1e-12);

  // Quadrature oracle for the WD characteristic functions.
  for (auto kind : {EnsembleKind::WD_GOE, EnsembleKind::WD_GUE}) {
    for (double t : {0.5, 2.0, 5.0}) {
      cplx want(
          simpson([&](double s) { return std::cos(s * t) *
                                         spacing_pdf(kind, s); },
                  0.0, 30.0, 60000),
          simpson([&](double s) { return std::sin(s * t) *
                                         spacing_pdf(kind, s); },
                  0.0, 30.0, 60000));
      cplx got = characteristic_function(kind, t);
      CHECK(std::abs(got - want) < 1e-8);
    }
  }

  for (auto kind :
       {EnsembleKind::POISSON, EnsembleKind::WD_GOE, EnsembleKind::WD_GUE}) {
    CHECK(std::abs(characteristic_function(kind, 0.0) - cplx(1.0, 0.0)) <
          1e-10);
    for (double t : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
      CHECK(std::abs(characteristic_function(kind, t)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("sampling is deterministic given the seed") {
  for (auto kind : {EnsembleKind::GUE, EnsembleKind::GDE,
                    EnsembleKind::POISSON, EnsembleKind::WD_GUE}) {
    auto r1 = make_rng(42);
    auto r2 = make_rng(42);
    Spectrum a = sample_spectrum({kind, 32}, r1);
    Spectrum b = sample_spectrum({kind, 32}, r2);
    CHECK(a.energies == b.energies);
  }
}
