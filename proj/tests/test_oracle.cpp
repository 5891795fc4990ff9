#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "itw/ensembles.hpp"
#include "itw/formfactors.hpp"
#include "itw/oracle.hpp"
#include "itw/probes.hpp"
#include "itw/twirl.hpp"

using namespace itw;

TEST_CASE("haar sampler moments") {
  const int d = 4;
  const long n = 10000;
  auto rng = make_rng(17);

  Matrix mean_u = Matrix::Zero(d, d);
  Matrix mean_uud = Matrix::Zero(d * d, d * d);
  double tr2 = 0.0, tr2sq = 0.0, tr4 = 0.0, tr4sq = 0.0;
  for (long s = 0; s < n; ++s) {
    Matrix u = sample_haar_unitary(d, rng);
    if (s == 0) {
      CHECK((u * u.adjoint() - Matrix::Identity(d, d)).norm() < 1e-12);
    }
    mean_u += u;
    mean_uud += kron(u, u.adjoint().eval());
    double a = std::norm(u.trace());
    tr2 += a;
    tr2sq += a * a;
    tr4 += a * a;
    tr4sq += a * a * a * a;
  }
  mean_u /= double(n);
  mean_uud /= double(n);

  // First moment vanishes; per-entry SE of a mean of unit-modulus-bounded
  // entries is at most 1/sqrt(n).
  CHECK(mean_u.cwiseAbs().maxCoeff() < 4.0 / std::sqrt(double(n)));

  // <U (x) U+> = T/d.
  Matrix swap_over_d =
      permutation_matrix(perm_from_cycles(2, {{1, 2}}), d) / double(d);
  CHECK((mean_uud - swap_over_d).cwiseAbs().maxCoeff() <
        4.0 / std::sqrt(double(n)));

  // <|tr U|^2> = 1 and <|tr U|^4> = 2 for d >= 4.
  double m2 = tr2 / n, m4 = tr4 / n;
  double se2 = std::sqrt((tr2sq / n - m2 * m2) / (n - 1));
  double se4 = std::sqrt((tr4sq / n - m4 * m4) / (n - 1));
  CHECK(std::abs(m2 - 1.0) < 4.0 * se2);
  CHECK(std::abs(m4 - 2.0) < 4.0 * se4);
}

TEST_CASE("mc twirl of the identity is exact") {
  McConfig cfg;
  cfg.d = 3;
  cfg.n_samples = 200;
  cfg.seed = 4;
  McMatrix got = mc_isospectral_twirl(Matrix::Identity(3, 3), 1, cfg);
  CHECK((got.mean - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mc twirl matches the two-level symbolic map") {
  // U = diag(1,-1) has tr U = 0, so c2 = 0.
  Matrix u(2, 2);
  u.setZero();
  u(0, 0) = 1.0;
  u(1, 1) = -1.0;
  McConfig cfg;
  cfg.d = 2;
  cfg.n_samples = 10000;
  cfg.seed = 5;
  McMatrix got = mc_isospectral_twirl(u, 1, cfg);

  FormFactors ff;
  ff.d = 2;
  ff.c2 = 0.0;
  Matrix want = to_matrix(r2(ff));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double se = std::max(got.se(i, j), 1e-12);
      CHECK(std::abs(got.mean(i, j) - want(i, j)) < 4.0 * se);
    }
}

TEST_CASE("mc twirl commutes with the swap") {
  auto rng = make_rng(31);
  Matrix u = sample_haar_unitary(3, rng);
  McConfig cfg;
  cfg.d = 3;
  cfg.n_samples = 4000;
  cfg.seed = 6;
  McMatrix got = mc_isospectral_twirl(u, 1, cfg);
  Matrix t = permutation_matrix(perm_from_cycles(2, {{1, 2}}), 3);
  Matrix comm = t * got.mean - got.mean * t;
  double se_scale = got.se.maxCoeff();
  CHECK(comm.cwiseAbs().maxCoeff() < 8.0 * se_scale);
}

TEST_CASE("mc ensemble form factors") {
  McConfig cfg;
  cfg.d = 64;
  cfg.n_samples = 200;
  cfg.seed = 12;
  McMoments m = mc_ensemble_c({EnsembleKind::GDE, 64}, {0.0, 1.0}, cfg);

  // t=0 is exact with zero variance.
  CHECK(m.c2_mean[0] == doctest::Approx(64.0 * 64.0));
  CHECK(m.c2_se[0] == doctest::Approx(0.0));
  CHECK(m.c4_mean[0] == doctest::Approx(std::pow(64.0, 4)));

  // t=1 matches the Gaussian closed form within 3 SE.
  double want = gde_c2(64, 1.0);
  CHECK(std::abs(m.c2_mean[1] - want) < 3.0 * m.c2_se[1]);
}

TEST_CASE("mc frame potential") {
  McConfig cfg;
  cfg.d = 8;
  cfg.n_samples = 4000;
  cfg.seed = 21;

  Spectrum flat;
  flat.energies.assign(8, 0.0);
  flat.source = {EnsembleKind::GDE, 8};
  McScalar id = mc_frame_potential(flat, 0.7, 1, cfg);
  CHECK(id.mean == doctest::Approx(64.0));
  CHECK(id.se == doctest::Approx(0.0));

  auto rng = make_rng(33);
  Spectrum sp = sample_spectrum({EnsembleKind::GUE, 8}, rng);
  double t = 1.3;
  McScalar got = mc_frame_potential(sp, t, 1, cfg);
  FormFactors ff = empirical_form_factors(sp, t);
  double want = frame_potential_k1(ff, 8);
  CHECK(std::abs(got.mean - want) < 4.0 * got.se);
}

TEST_CASE("empirical typicality") {
  McConfig cfg;
  cfg.d = 16;
  cfg.n_samples = 1000;
  cfg.seed = 9;
  // ctilde2 lives in [0,1]: deviations >= 1 are impossible.
  CHECK(empirical_typicality({EnsembleKind::GDE, 16}, 2.0, 1.0, cfg) ==
        doctest::Approx(0.0));
  // Frequencies are monotone nonincreasing in delta.
  double prev = 1.0;
  for (double delta : {0.02, 0.05, 0.1, 0.3}) {
    double f = empirical_typicality({EnsembleKind::GDE, 16}, 2.0, delta, cfg);
    CHECK(f <= prev + 1e-12);
    prev = f;
  }
}

TEST_CASE("mc results are reproducible") {
  McConfig cfg;
  cfg.d = 4;
  cfg.n_samples = 500;
  cfg.seed = 77;
  auto rng = make_rng(2);
  Matrix u = sample_haar_unitary(4, rng);
  McMatrix a = mc_isospectral_twirl(u, 1, cfg);
  McMatrix b = mc_isospectral_twirl(u, 1, cfg);
  CHECK((a.mean - b.mean).norm() == 0.0);
  CHECK((a.se - b.se).norm() == 0.0);

  McConfig tcfg;
  tcfg.d = 16;
  tcfg.n_samples = 300;
  tcfg.seed = 3;
  double f1 = empirical_typicality({EnsembleKind::GUE, 16}, 1.0, 0.05, tcfg);
  double f2 = empirical_typicality({EnsembleKind::GUE, 16}, 1.0, 0.05, tcfg);
  CHECK(f1 == f2);
}
